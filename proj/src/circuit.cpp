// Copyright 2026 The zklab Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "zklab/circuit.hpp"

#include <algorithm>
#include <json.hpp>
#include <stdexcept>
#include <unordered_set>

namespace zklab {
namespace {

LinearCombination lc_constant(const FieldElement& k) {
    LinearCombination lc;
    if (!k.is_zero()) lc.terms.push_back({0, k});
    return lc;
}

LinearCombination lc_single(std::uint32_t col) {
    LinearCombination lc;
    lc.terms.push_back({col, FieldElement::one()});
    return lc;
}

LinearCombination lc_add(const LinearCombination& a, const LinearCombination& b) {
    LinearCombination out;
    out.terms.reserve(a.terms.size() + b.terms.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms.size() || j < b.terms.size()) {
        if (j == b.terms.size() || (i < a.terms.size() && a.terms[i].first < b.terms[j].first)) {
            out.terms.push_back(a.terms[i++]);
        } else if (i == a.terms.size() || b.terms[j].first < a.terms[i].first) {
            out.terms.push_back(b.terms[j++]);
        } else {
            FieldElement sum = a.terms[i].second + b.terms[j].second;
            if (!sum.is_zero()) out.terms.push_back({a.terms[i].first, sum});
            ++i;
            ++j;
        }
    }
    return out;
}

LinearCombination lc_scale(const LinearCombination& a, const FieldElement& k) {
    LinearCombination out;
    if (k.is_zero()) return out;
    out.terms.reserve(a.terms.size());
    for (const auto& [col, coeff] : a.terms) out.terms.push_back({col, coeff * k});
    return out;
}

LinearCombination lc_remap(const LinearCombination& a,
                           const std::vector<std::uint32_t>& col_of_virtual) {
    LinearCombination out = a;
    for (auto& [col, coeff] : out.terms) col = col_of_virtual[col];
    std::sort(out.terms.begin(), out.terms.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

FieldElement lc_eval(const LinearCombination& lc, const std::vector<FieldElement>& witness) {
    FieldElement acc = FieldElement::zero();
    for (const auto& [col, coeff] : lc.terms) acc += coeff * witness[col];
    return acc;
}

const char* kind_name(GateKind k) {
    switch (k) {
        case GateKind::Input:
            return "input";
        case GateKind::Constant:
            return "constant";
        case GateKind::Add:
            return "add";
        case GateKind::Mul:
            return "mul";
    }
    return "?";
}

GateKind kind_from_name(const std::string& s) {
    if (s == "input") return GateKind::Input;
    if (s == "constant") return GateKind::Constant;
    if (s == "add") return GateKind::Add;
    if (s == "mul") return GateKind::Mul;
    throw std::invalid_argument("circuit: unknown gate kind '" + s + "'");
}

}  // namespace

FieldElement LinearCombination::constant_value() const {
    return terms.empty() ? FieldElement::zero() : terms[0].second;
}

std::uint32_t Circuit::add_input() {
    gates_.push_back(Gate{GateKind::Input, 0, 0, FieldElement::zero()});
    inputs_.push_back((std::uint32_t)(gates_.size() - 1));
    return inputs_.back();
}

std::uint32_t Circuit::add_constant(const FieldElement& value) {
    gates_.push_back(Gate{GateKind::Constant, 0, 0, value});
    return (std::uint32_t)(gates_.size() - 1);
}

std::uint32_t Circuit::add_gate(GateKind kind, std::uint32_t a, std::uint32_t b) {
    if (kind != GateKind::Add && kind != GateKind::Mul)
        throw std::invalid_argument("circuit: add_gate takes add or mul");
    if (a >= gates_.size() || b >= gates_.size())
        throw std::invalid_argument("circuit: operand references a later gate");
    gates_.push_back(Gate{kind, a, b, FieldElement::zero()});
    return (std::uint32_t)(gates_.size() - 1);
}

void Circuit::mark_output(std::uint32_t gate) {
    if (gate >= gates_.size()) throw std::invalid_argument("circuit: output gate out of range");
    if (std::find(outputs_.begin(), outputs_.end(), gate) == outputs_.end())
        outputs_.push_back(gate);
}

void Circuit::assert_zero(std::uint32_t gate) {
    if (gate >= gates_.size()) throw std::invalid_argument("circuit: asserted gate out of range");
    if (std::find(assertions_.begin(), assertions_.end(), gate) == assertions_.end())
        assertions_.push_back(gate);
}

std::size_t Circuit::count(GateKind kind) const {
    std::size_t n = 0;
    for (const auto& g : gates_)
        if (g.kind == kind) ++n;
    return n;
}

void Circuit::validate() const {
    for (std::size_t i = 0; i < gates_.size(); ++i) {
        const Gate& g = gates_[i];
        if (g.kind == GateKind::Add || g.kind == GateKind::Mul) {
            if (g.a >= i || g.b >= i)
                throw std::invalid_argument("circuit: gate " + std::to_string(i) +
                                            " breaks topological order");
        }
    }
    if (outputs_.empty()) throw std::invalid_argument("circuit: at least one output required");

    std::unordered_set<std::uint32_t> asserted(assertions_.begin(), assertions_.end());
    for (const auto& g : gates_) {
        if (g.kind == GateKind::Add || g.kind == GateKind::Mul) {
            if (asserted.count(g.a) || asserted.count(g.b))
                throw std::invalid_argument("circuit: asserted gates must be terminal");
        }
    }
    for (auto o : outputs_)
        if (asserted.count(o))
            throw std::invalid_argument("circuit: asserted gates cannot be outputs");
}

Witness eval_witness(const Circuit& c, const std::map<std::uint32_t, FieldElement>& inputs) {
    Witness w;
    w.values.resize(c.size());
    const auto& gates = c.gates();
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        switch (g.kind) {
            case GateKind::Input: {
                auto it = inputs.find((std::uint32_t)i);
                if (it == inputs.end())
                    throw std::invalid_argument("witness: input gate " + std::to_string(i) +
                                                " unassigned");
                w.values[i] = it->second;
                break;
            }
            case GateKind::Constant:
                w.values[i] = g.value;
                break;
            case GateKind::Add:
                w.values[i] = w.values[g.a] + w.values[g.b];
                break;
            case GateKind::Mul:
                w.values[i] = w.values[g.a] * w.values[g.b];
                break;
        }
    }
    return w;
}

Witness eval_witness(const Circuit& c, const std::vector<FieldElement>& inputs_in_order) {
    const auto& ids = c.input_gates();
    if (inputs_in_order.size() != ids.size())
        throw std::invalid_argument("witness: expected " + std::to_string(ids.size()) +
                                    " inputs, got " + std::to_string(inputs_in_order.size()));
    std::map<std::uint32_t, FieldElement> m;
    for (std::size_t i = 0; i < ids.size(); ++i) m[ids[i]] = inputs_in_order[i];
    return eval_witness(c, m);
}

R1CSSystem lower_to_r1cs(const Circuit& c, const LowerOptions& options) {
    c.validate();
    const auto& gates = c.gates();
    std::unordered_set<std::uint32_t> asserted(c.assertions().begin(), c.assertions().end());

    // Pass 1: fold every gate into a linear combination over virtual slots
    // (0 = one, then inputs, then constraint-bearing muls in gate order).
    std::vector<LinearCombination> lc(gates.size());
    std::vector<std::int64_t> slot_of_gate(gates.size(), -1);
    std::vector<std::uint32_t> slot_owner;  // virtual slot id -> gate
    slot_owner.push_back(UINT32_MAX);       // the one slot
    std::vector<std::uint32_t> mul_slots;   // virtual ids of mul slots, in order

    for (auto id : c.input_gates()) {
        slot_of_gate[id] = (std::int64_t)slot_owner.size();
        slot_owner.push_back(id);
    }

    std::unordered_set<std::uint32_t> quad_asserts;  // asserted muls lowered as a*b = 0
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        switch (g.kind) {
            case GateKind::Input:
                lc[i] = lc_single((std::uint32_t)slot_of_gate[i]);
                break;
            case GateKind::Constant:
                lc[i] = lc_constant(g.value);
                break;
            case GateKind::Add:
                lc[i] = lc_add(lc[g.a], lc[g.b]);
                break;
            case GateKind::Mul: {
                // A product with exactly one literal constant operand is a
                // scaling and folds into the combination; every other mul
                // gate contributes one constraint.
                bool ca = gates[g.a].kind == GateKind::Constant;
                bool cb = gates[g.b].kind == GateKind::Constant;
                if (ca != cb) {
                    lc[i] = ca ? lc_scale(lc[g.b], gates[g.a].value)
                               : lc_scale(lc[g.a], gates[g.b].value);
                } else if (asserted.count((std::uint32_t)i)) {
                    quad_asserts.insert((std::uint32_t)i);  // a*b = 0, no slot
                } else {
                    slot_of_gate[i] = (std::int64_t)slot_owner.size();
                    mul_slots.push_back((std::uint32_t)slot_owner.size());
                    slot_owner.push_back((std::uint32_t)i);
                    lc[i] = lc_single((std::uint32_t)slot_of_gate[i]);
                }
                break;
            }
        }
    }

    // Pass 2: final column order [1, inputs..., internal muls..., outputs...].
    std::unordered_set<std::uint32_t> output_set(c.outputs().begin(), c.outputs().end());
    std::vector<std::uint32_t> col_of_virtual(slot_owner.size(), 0);
    R1CSSystem sys;
    sys.columns.push_back(ColumnInfo{ColumnKind::One, 0});
    for (auto id : c.input_gates()) {
        col_of_virtual[slot_of_gate[id]] = (std::uint32_t)sys.columns.size();
        sys.columns.push_back(ColumnInfo{ColumnKind::Input, id});
    }
    for (auto vslot : mul_slots) {
        std::uint32_t gate = slot_owner[vslot];
        if (output_set.count(gate)) continue;  // placed in the output section
        col_of_virtual[vslot] = (std::uint32_t)sys.columns.size();
        sys.columns.push_back(ColumnInfo{ColumnKind::Internal, gate});
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> bound_outputs;  // gate, column
    for (auto out : c.outputs()) {
        if (slot_of_gate[out] >= 0 && gates[out].kind == GateKind::Mul) {
            col_of_virtual[slot_of_gate[out]] = (std::uint32_t)sys.columns.size();
            sys.columns.push_back(ColumnInfo{ColumnKind::Output, out});
        } else if (options.bind_outputs) {
            bound_outputs.push_back({out, (std::uint32_t)sys.columns.size()});
            sys.columns.push_back(ColumnInfo{ColumnKind::Output, out});
        }
    }
    sys.num_columns = sys.columns.size();

    // Pass 3: emit constraints in gate order, then output bindings.
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        if (g.kind == GateKind::Mul && slot_of_gate[i] >= 0) {
            R1CSConstraint row;
            row.a = lc_remap(lc[g.a], col_of_virtual);
            row.b = lc_remap(lc[g.b], col_of_virtual);
            row.c = lc_remap(lc_single((std::uint32_t)slot_of_gate[i]), col_of_virtual);
            sys.rows.push_back(std::move(row));
            ++sys.mul_constraints;
        } else if (asserted.count((std::uint32_t)i)) {
            R1CSConstraint row;
            if (quad_asserts.count((std::uint32_t)i)) {
                row.a = lc_remap(lc[g.a], col_of_virtual);
                row.b = lc_remap(lc[g.b], col_of_virtual);
            } else {
                row.a = lc_remap(lc[i], col_of_virtual);
                row.b = lc_single(0);
            }
            sys.rows.push_back(std::move(row));
            ++sys.assert_constraints;
        }
    }
    for (const auto& [gate, col] : bound_outputs) {
        R1CSConstraint row;
        row.a = lc_remap(lc[gate], col_of_virtual);
        row.b = lc_single(0);
        row.c = lc_single(col);
        sys.rows.push_back(std::move(row));
        ++sys.binding_constraints;
    }
    return sys;
}

std::vector<FieldElement> r1cs_witness(const R1CSSystem& system, const Circuit& c,
                                       const Witness& witness) {
    if (witness.values.size() != c.size())
        throw std::invalid_argument("witness: value count does not match the circuit");
    std::vector<FieldElement> out(system.num_columns);
    for (std::size_t i = 0; i < system.columns.size(); ++i) {
        const ColumnInfo& info = system.columns[i];
        out[i] = info.kind == ColumnKind::One ? FieldElement::one() : witness.values[info.gate];
    }
    return out;
}

bool check_satisfied(const R1CSSystem& system, const std::vector<FieldElement>& witness) {
    if (witness.size() != system.num_columns)
        throw std::invalid_argument("r1cs: witness length " + std::to_string(witness.size()) +
                                    " != columns " + std::to_string(system.num_columns));
    // Column 0 is the constant-one slot; pinning it is part of the relation.
    if (witness[0] != FieldElement::one()) return false;
    for (const auto& row : system.rows) {
        FieldElement left = lc_eval(row.a, witness) * lc_eval(row.b, witness);
        if (left != lc_eval(row.c, witness)) return false;
    }
    return true;
}

PlonkishSystem lower_to_plonkish(const Circuit& c) {
    c.validate();
    const auto& gates = c.gates();
    std::unordered_set<std::uint32_t> asserted(c.assertions().begin(), c.assertions().end());

    PlonkishSystem sys;
    const FieldElement one = FieldElement::one();
    const FieldElement minus_one = -FieldElement::one();
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        bool is_assert = asserted.count((std::uint32_t)i) != 0;
        PlonkishRow row;
        switch (g.kind) {
            case GateKind::Input:
                continue;
            case GateKind::Constant:
                row.q_c = g.value;
                break;
            case GateKind::Add:
                row.wire_l = g.a;
                row.wire_r = g.b;
                row.q_l = one;
                row.q_r = one;
                break;
            case GateKind::Mul:
                row.wire_l = g.a;
                row.wire_r = g.b;
                row.q_m = one;
                break;
        }
        if (!is_assert) {
            row.wire_o = (std::int64_t)i;
            row.q_o = minus_one;
        }
        sys.rows.push_back(row);
    }

    // Copy constraints chain together every cell carrying the same wire.
    std::map<std::int64_t, std::vector<CellRef>> cells_of_wire;
    for (std::size_t r = 0; r < sys.rows.size(); ++r) {
        const PlonkishRow& row = sys.rows[r];
        const std::int64_t wires[3] = {row.wire_l, row.wire_r, row.wire_o};
        for (std::uint8_t s = 0; s < 3; ++s)
            if (wires[s] >= 0) cells_of_wire[wires[s]].push_back(CellRef{(std::uint32_t)r, s});
    }
    for (const auto& [wire, cells] : cells_of_wire)
        for (std::size_t i = 0; i + 1 < cells.size(); ++i)
            sys.copy_constraints.push_back({cells[i], cells[i + 1]});
    return sys;
}

PlonkishAssignment plonkish_assignment(const PlonkishSystem& system, const Circuit& c,
                                       const Witness& witness) {
    if (witness.values.size() != c.size())
        throw std::invalid_argument("witness: value count does not match the circuit");
    PlonkishAssignment a;
    a.cells.resize(system.rows.size());
    for (std::size_t r = 0; r < system.rows.size(); ++r) {
        const PlonkishRow& row = system.rows[r];
        const std::int64_t wires[3] = {row.wire_l, row.wire_r, row.wire_o};
        for (int s = 0; s < 3; ++s)
            a.cells[r][s] =
                wires[s] >= 0 ? witness.values[(std::size_t)wires[s]] : FieldElement::zero();
    }
    return a;
}

bool check_satisfied(const PlonkishSystem& system, const PlonkishAssignment& assignment) {
    if (assignment.cells.size() != system.rows.size())
        throw std::invalid_argument("plonkish: assignment rows " +
                                    std::to_string(assignment.cells.size()) + " != " +
                                    std::to_string(system.rows.size()));
    for (std::size_t r = 0; r < system.rows.size(); ++r) {
        const PlonkishRow& row = system.rows[r];
        const FieldElement& l = assignment.cells[r][0];
        const FieldElement& rr = assignment.cells[r][1];
        const FieldElement& o = assignment.cells[r][2];
        FieldElement sum = row.q_l * l + row.q_r * rr + row.q_m * l * rr + row.q_c + row.q_o * o;
        if (!sum.is_zero()) return false;
    }
    for (const auto& [x, y] : system.copy_constraints) {
        if (assignment.cells[x.row][x.slot] != assignment.cells[y.row][y.slot]) return false;
    }
    return true;
}

unsigned circuit_power(std::uint64_t num_constraints) {
    if (num_constraints == 0)
        throw std::domain_error("circuit power: constraint count must be >= 1");
    unsigned k = 0;
    while ((std::uint64_t{1} << k) < num_constraints) ++k;
    return k;
}

// ---------------------------------------------------------------------------
// JSON interchange
// ---------------------------------------------------------------------------

std::string circuit_to_json_text(const Circuit& c) {
    nlohmann::json j;
    nlohmann::json gates = nlohmann::json::array();
    for (std::size_t i = 0; i < c.gates().size(); ++i) {
        const Gate& g = c.gates()[i];
        nlohmann::json jg;
        jg["id"] = i;
        jg["kind"] = kind_name(g.kind);
        if (g.kind == GateKind::Add || g.kind == GateKind::Mul) jg["operands"] = {g.a, g.b};
        if (g.kind == GateKind::Constant) jg["const"] = g.value.to_hex();
        gates.push_back(std::move(jg));
    }
    j["gates"] = std::move(gates);
    j["outputs"] = c.outputs();
    j["assert_zero"] = c.assertions();
    return j.dump(2) + "\n";
}

Circuit circuit_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("circuit: JSON parse error: ") + e.what());
    }
    Circuit c;
    try {
        std::size_t expected = 0;
        for (const auto& jg : j.at("gates")) {
            if (jg.at("id").get<std::size_t>() != expected)
                throw std::invalid_argument("circuit: gate ids must be dense and ordered");
            ++expected;
            GateKind kind = kind_from_name(jg.at("kind").get<std::string>());
            switch (kind) {
                case GateKind::Input:
                    c.add_input();
                    break;
                case GateKind::Constant:
                    c.add_constant(FieldElement::from_hex(jg.at("const").get<std::string>()));
                    break;
                case GateKind::Add:
                case GateKind::Mul: {
                    auto ops = jg.at("operands");
                    c.add_gate(kind, ops.at(0).get<std::uint32_t>(),
                               ops.at(1).get<std::uint32_t>());
                    break;
                }
            }
        }
        for (const auto& o : j.at("outputs")) c.mark_output(o.get<std::uint32_t>());
        if (j.contains("assert_zero"))
            for (const auto& a : j.at("assert_zero")) c.assert_zero(a.get<std::uint32_t>());
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("circuit: malformed circuit JSON: ") + e.what());
    }
    c.validate();
    return c;
}

namespace {

nlohmann::json lc_triples(const std::vector<R1CSConstraint>& rows,
                          LinearCombination R1CSConstraint::*member) {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (const auto& [col, coeff] : (rows[r].*member).terms)
            out.push_back({r, col, coeff.to_hex()});
    }
    return out;
}

}  // namespace

std::string r1cs_to_json_text(const R1CSSystem& system) {
    nlohmann::json j;
    j["num_columns"] = system.num_columns;
    j["num_constraints"] = system.rows.size();
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& info : system.columns) {
        const char* kind = info.kind == ColumnKind::One        ? "one"
                           : info.kind == ColumnKind::Input    ? "input"
                           : info.kind == ColumnKind::Internal ? "internal"
                                                               : "output";
        cols.push_back({{"kind", kind}, {"gate", info.gate}});
    }
    j["columns"] = std::move(cols);
    j["A"] = lc_triples(system.rows, &R1CSConstraint::a);
    j["B"] = lc_triples(system.rows, &R1CSConstraint::b);
    j["C"] = lc_triples(system.rows, &R1CSConstraint::c);
    return j.dump() + "\n";
}

std::string plonkish_to_json_text(const PlonkishSystem& system) {
    nlohmann::json j;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : system.rows) {
        rows.push_back({{"x_l", row.wire_l},
                        {"x_r", row.wire_r},
                        {"x_o", row.wire_o},
                        {"q_l", row.q_l.to_hex()},
                        {"q_r", row.q_r.to_hex()},
                        {"q_m", row.q_m.to_hex()},
                        {"q_c", row.q_c.to_hex()},
                        {"q_o", row.q_o.to_hex()}});
    }
    j["rows"] = std::move(rows);
    nlohmann::json copies = nlohmann::json::array();
    for (const auto& [x, y] : system.copy_constraints)
        copies.push_back({{x.row, x.slot}, {y.row, y.slot}});
    j["copy_constraints"] = std::move(copies);
    return j.dump() + "\n";
}

}  // namespace zklab
