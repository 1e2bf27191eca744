// Copyright 2026 The zklab Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "zklab/gadgets.hpp"

#include <json.hpp>
#include <stdexcept>

#include "zklab/keccak.hpp"

namespace zklab {

using Var = GadgetBuilder::Var;

Var GadgetBuilder::input() { return circuit_.add_input(); }

Var GadgetBuilder::constant(const FieldElement& k) {
    auto it = const_cache_.find(k);
    if (it != const_cache_.end()) return it->second;
    Var v = circuit_.add_constant(k);
    const_value_[v] = k;
    const_cache_[k] = v;
    return v;
}

Var GadgetBuilder::add(Var a, Var b) {
    Var v = circuit_.add_gate(GateKind::Add, a, b);
    // Track values computable at build time so scalings of known-constant
    // wires can fold, while the add itself stays a gate (an S-box applied to
    // such a wire must still count its multiplications).
    if (is_const(a) && is_const(b)) const_value_[v] = const_value_.at(a) + const_value_.at(b);
    return v;
}

Var GadgetBuilder::sub(Var a, Var b) { return add(a, scale(b, -FieldElement::one())); }

Var GadgetBuilder::scale(Var a, const FieldElement& k) {
    if (k.is_zero()) return constant(FieldElement::zero());
    if (is_const(a)) return constant(const_value_.at(a) * k);
    return circuit_.add_gate(GateKind::Mul, constant(k), a);
}

Var GadgetBuilder::mul(Var a, Var b) { return circuit_.add_gate(GateKind::Mul, a, b); }

Var GadgetBuilder::sbox(Var x, unsigned d) {
    switch (d) {
        case 1:
            return x;
        case 2:
            return mul(x, x);
        case 3: {
            Var x2 = mul(x, x);
            return mul(x2, x);
        }
        case 5: {
            Var x2 = mul(x, x);
            Var x4 = mul(x2, x2);
            return mul(x4, x);
        }
        case 7: {
            Var x2 = mul(x, x);
            Var x4 = mul(x2, x2);
            Var x6 = mul(x4, x2);
            return mul(x6, x);
        }
        default: {
            // square-and-multiply over the exponent bits
            Var acc = 0;
            bool acc_set = false;
            Var base = x;
            unsigned e = d;
            while (e > 0) {
                if (e & 1) {
                    acc = acc_set ? mul(acc, base) : base;
                    acc_set = true;
                }
                e >>= 1;
                if (e > 0) base = mul(base, base);
            }
            return acc;
        }
    }
}

void GadgetBuilder::assert_zero(Var v) { circuit_.assert_zero(v); }

void GadgetBuilder::assert_bool(Var b) {
    Var bm1 = add(b, constant(-FieldElement::one()));
    assert_zero(mul(b, bm1));
}

void GadgetBuilder::mark_output(Var v) { circuit_.mark_output(v); }

namespace {

std::vector<Var> circuit_matmul(GadgetBuilder& b, const Matrix& m, const std::vector<Var>& state) {
    std::vector<Var> out(m.n);
    for (std::size_t i = 0; i < m.n; ++i) {
        Var acc = b.scale(state[0], m.at(i, 0));
        for (std::size_t j = 1; j < m.n; ++j) acc = b.add(acc, b.scale(state[j], m.at(i, j)));
        out[i] = acc;
    }
    return out;
}

}  // namespace

std::vector<Var> circuit_permute(GadgetBuilder& b, const PermutationSpec& spec,
                                 std::vector<Var> state) {
    if (state.size() != spec.width)
        throw std::invalid_argument("gadget: state length != permutation width");
    switch (spec.name) {
        case HashName::MiMC: {
            Var left = state[0], right = state[1];
            for (std::size_t r = 0; r < spec.rounds_full; ++r) {
                Var t = b.add(left, b.constant(spec.round_constants[r][0]));
                Var t5 = b.sbox(t, spec.exponent);
                if (r + 1 < spec.rounds_full) {
                    Var new_left = b.add(right, t5);
                    right = left;
                    left = new_left;
                } else {
                    right = b.add(right, t5);
                }
            }
            return {left, right};
        }
        case HashName::GMiMC: {
            for (std::size_t r = 0; r < spec.rounds_full; ++r) {
                Var f = b.sbox(b.add(state[0], b.constant(spec.round_constants[r][0])),
                               spec.exponent);
                std::vector<Var> next(state.size());
                for (std::size_t j = 1; j < state.size(); ++j) next[j - 1] = b.add(state[j], f);
                next[state.size() - 1] = state[0];
                state = std::move(next);
            }
            return state;
        }
        case HashName::Poseidon: {
            const Matrix& mds = spec.layer("mds");
            const std::size_t half = spec.rounds_full / 2;
            std::size_t row = 0;
            auto round = [&](bool full) {
                for (std::size_t i = 0; i < spec.width; ++i)
                    state[i] = b.add(state[i], b.constant(spec.round_constants[row][i]));
                ++row;
                if (full) {
                    for (auto& s : state) s = b.sbox(s, spec.exponent);
                } else {
                    state[0] = b.sbox(state[0], spec.exponent);
                }
                state = circuit_matmul(b, mds, state);
            };
            for (std::size_t r = 0; r < half; ++r) round(true);
            for (std::size_t r = 0; r < spec.rounds_partial; ++r) round(false);
            for (std::size_t r = 0; r < half; ++r) round(true);
            return state;
        }
        case HashName::Poseidon2:
        case HashName::Neptune: {
            const Matrix& external = spec.layer("external");
            const Matrix& internal = spec.layer("internal");
            const std::size_t half = spec.rounds_full / 2;
            std::size_t row = 0;
            state = circuit_matmul(b, external, state);
            auto full_round = [&] {
                for (std::size_t i = 0; i < spec.width; ++i) {
                    state[i] = b.add(state[i], b.constant(spec.round_constants[row][i]));
                    state[i] = b.sbox(state[i], spec.exponent);
                }
                ++row;
                state = circuit_matmul(b, external, state);
            };
            for (std::size_t r = 0; r < half; ++r) full_round();
            for (std::size_t r = 0; r < spec.rounds_partial; ++r) {
                state[0] = b.sbox(b.add(state[0], b.constant(spec.round_constants[row][0])),
                                  spec.exponent);
                ++row;
                state = circuit_matmul(b, internal, state);
            }
            for (std::size_t r = 0; r < half; ++r) full_round();
            return state;
        }
    }
    throw std::logic_error("gadget: unhandled construction");
}

Var circuit_sponge(GadgetBuilder& b, const PermutationSpec& spec, const SpongeConfig& sponge,
                   std::vector<Var> inputs) {
    validate(sponge, spec.width);
    if (inputs.empty()) throw std::invalid_argument("gadget: empty sponge input");
    std::vector<Var> state(spec.width, b.constant(FieldElement::zero()));
    std::size_t pos = 0;
    while (pos < inputs.size()) {
        std::size_t block = std::min(sponge.rate, inputs.size() - pos);
        for (std::size_t i = 0; i < block; ++i) state[i] = b.add(state[i], inputs[pos + i]);
        state = circuit_permute(b, spec, state);
        pos += block;
    }
    return state[0];
}

Gadget build_hash2_gadget(const PermutationSpec& spec, const SpongeConfig& sponge) {
    GadgetBuilder b;
    Var left = b.input();
    Var right = b.input();
    Var digest = circuit_sponge(b, spec, sponge, {left, right});
    b.mark_output(digest);

    Gadget g;
    g.inputs["left"] = {left};
    g.inputs["right"] = {right};
    g.outputs["digest"] = digest;
    g.hash = spec.name;
    g.kind = "hash2";
    g.circuit = b.take();
    return g;
}

Gadget build_merkle_root_gadget(const PermutationSpec& spec, const SpongeConfig& sponge,
                                std::size_t d_slot) {
    if (d_slot == 0)
        throw std::invalid_argument("gadget: depth-0 root circuit is degenerate (root = leaf)");
    if (d_slot > 16) throw std::invalid_argument("gadget: root circuit depth > 16");
    GadgetBuilder b;
    std::vector<Var> level;
    for (std::size_t i = 0; i < (std::size_t{1} << d_slot); ++i) level.push_back(b.input());
    Gadget g;
    g.inputs["leaves"] = level;
    while (level.size() > 1) {
        std::vector<Var> next(level.size() / 2);
        for (std::size_t i = 0; i < next.size(); ++i)
            next[i] = circuit_sponge(b, spec, sponge, {level[2 * i], level[2 * i + 1]});
        level = std::move(next);
    }
    b.mark_output(level[0]);
    g.outputs["root"] = level[0];
    g.hash = spec.name;
    g.kind = "deposit";
    g.d_slot = (int)d_slot;
    g.circuit = b.take();
    return g;
}

namespace {

// One mux-and-hash level: two selections and a boolean check, then hash2.
Var path_level(GadgetBuilder& b, const PermutationSpec& spec, const SpongeConfig& sponge,
               Var current, Var sibling, Var bit) {
    Var delta_l = b.mul(bit, b.sub(sibling, current));
    Var left = b.add(current, delta_l);
    Var delta_r = b.mul(bit, b.sub(current, sibling));
    Var right = b.add(sibling, delta_r);
    b.assert_bool(bit);
    return circuit_sponge(b, spec, sponge, {left, right});
}

}  // namespace

Gadget build_withdraw_gadget(const PermutationSpec& spec, const SpongeConfig& sponge,
                             std::size_t d_slot, std::size_t d_era) {
    if (d_slot == 0 || d_era == 0)
        throw std::invalid_argument("gadget: withdraw circuit needs d_slot, d_era >= 1");
    GadgetBuilder b;
    Gadget g;

    Var secret = b.input();
    Var nullifier = b.input();
    g.inputs["secret"] = {secret};
    g.inputs["nullifier"] = {nullifier};

    auto input_group = [&](const char* name, std::size_t n) {
        std::vector<Var> vars;
        for (std::size_t i = 0; i < n; ++i) vars.push_back(b.input());
        g.inputs[name] = vars;
        return vars;
    };
    auto slot_siblings = input_group("slot_siblings", d_slot);
    auto slot_bits = input_group("slot_bits", d_slot);
    auto era_siblings = input_group("era_siblings", d_era);
    auto era_bits = input_group("era_bits", d_era);
    Var recipient = b.input();
    Var relayer = b.input();
    Var fee = b.input();
    Var refund = b.input();
    Var tx_binding = b.input();
    g.inputs["recipient"] = {recipient};
    g.inputs["relayer"] = {relayer};
    g.inputs["fee"] = {fee};
    g.inputs["refund"] = {refund};
    g.inputs["tx_binding"] = {tx_binding};

    Var commitment = circuit_sponge(b, spec, sponge, {secret, nullifier});
    Var nul_hash =
        circuit_sponge(b, spec, sponge, {nullifier, b.constant(nullifier_domain_tag())});

    Var current = commitment;
    for (std::size_t l = 0; l < d_slot; ++l)
        current = path_level(b, spec, sponge, current, slot_siblings[l], slot_bits[l]);
    Var r_slot = current;
    for (std::size_t l = 0; l < d_era; ++l)
        current = path_level(b, spec, sponge, current, era_siblings[l], era_bits[l]);
    Var r_era = current;

    // Transaction details enter the relation through one linear binding row.
    Var sum = b.add(b.add(b.add(recipient, relayer), fee), refund);
    b.assert_zero(b.sub(sum, tx_binding));

    b.mark_output(nul_hash);
    b.mark_output(r_slot);
    b.mark_output(r_era);
    g.outputs["nullifier_hash"] = nul_hash;
    g.outputs["r_slot"] = r_slot;
    g.outputs["r_era"] = r_era;
    g.hash = spec.name;
    g.kind = "withdraw";
    g.d_slot = (int)d_slot;
    g.d_era = (int)d_era;
    g.circuit = b.take();
    return g;
}

Witness eval_gadget(const Gadget& gadget,
                    const std::map<std::string, std::vector<FieldElement>>& named_inputs) {
    std::map<std::uint32_t, FieldElement> assignment;
    for (const auto& [name, gates] : gadget.inputs) {
        auto it = named_inputs.find(name);
        if (it == named_inputs.end())
            throw std::invalid_argument("gadget: missing input group '" + name + "'");
        if (it->second.size() != gates.size())
            throw std::invalid_argument("gadget: input group '" + name + "' expects " +
                                        std::to_string(gates.size()) + " values");
        for (std::size_t i = 0; i < gates.size(); ++i) assignment[gates[i]] = it->second[i];
    }
    return eval_witness(gadget.circuit, assignment);
}

std::map<std::string, FieldElement> run_gadget(
    const Gadget& gadget, const std::map<std::string, std::vector<FieldElement>>& named_inputs) {
    Witness w = eval_gadget(gadget, named_inputs);
    std::map<std::string, FieldElement> out;
    for (const auto& [name, gate] : gadget.outputs) out[name] = w.values[gate];
    return out;
}

ConstraintReport constraint_report(const Gadget& gadget, SystemKind system) {
    ConstraintReport report;
    report.hash = std::string(to_string(gadget.hash));
    report.gadget = gadget.kind;
    report.d_slot = gadget.d_slot;
    report.d_era = gadget.d_era;
    if (system == SystemKind::R1CS) {
        report.system = "r1cs";
        R1CSSystem sys = lower_to_r1cs(gadget.circuit, LowerOptions{.bind_outputs = false});
        report.constraints = sys.num_constraints();
    } else {
        report.system = "plonkish";
        PlonkishSystem sys = lower_to_plonkish(gadget.circuit);
        report.constraints = sys.rows.size();
    }
    report.power = circuit_power(report.constraints);
    return report;
}

std::string report_to_json_text(const ConstraintReport& report) {
    nlohmann::json j;
    j["hash"] = report.hash;
    j["gadget"] = report.gadget;
    j["system"] = report.system;
    if (report.d_slot >= 0) j["d_slot"] = report.d_slot;
    if (report.d_era >= 0) j["d_era"] = report.d_era;
    j["constraints"] = report.constraints;
    j["power"] = report.power;
    return j.dump() + "\n";
}

FieldElement nullifier_domain_tag() {
    static const FieldElement tag = field_from_tag("zklab/nullifier-domain", 0);
    return tag;
}

FieldElement commitment_hash(const PermutationSpec& spec, const SpongeConfig& sponge,
                             const FieldElement& secret, const FieldElement& nullifier) {
    return hash2(spec, sponge, secret, nullifier);
}

FieldElement nullifier_hash(const PermutationSpec& spec, const SpongeConfig& sponge,
                            const FieldElement& nullifier) {
    return hash2(spec, sponge, nullifier, nullifier_domain_tag());
}

}  // namespace zklab
