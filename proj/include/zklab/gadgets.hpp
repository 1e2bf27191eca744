// Copyright 2026 The zklab Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "zklab/circuit.hpp"
#include "zklab/permutation.hpp"

namespace zklab {

/// Circuit-construction helper. Linear arithmetic on values known at build
/// time folds immediately (no gates); S-box products always emit mul gates so
/// the scheduled S-box count survives into the constraint count.
class GadgetBuilder {
public:
    using Var = std::uint32_t;

    Var input();
    Var constant(const FieldElement& k);
    Var add(Var a, Var b);
    Var sub(Var a, Var b);
    Var scale(Var a, const FieldElement& k);
    Var mul(Var a, Var b);
    /// x^d along the fixed addition chain (d in {2,3,5,7}; generic otherwise).
    Var sbox(Var x, unsigned d);
    void assert_zero(Var v);
    /// b*(b-1) = 0 as a single constraint row.
    void assert_bool(Var b);
    void mark_output(Var v);

    Circuit take() { return std::move(circuit_); }
    const Circuit& circuit() const { return circuit_; }

private:
    bool is_const(Var v) const { return const_value_.count(v) != 0; }

    Circuit circuit_;
    std::unordered_map<std::uint32_t, FieldElement> const_value_;
    std::unordered_map<FieldElement, Var, FieldElement::Hasher> const_cache_;
};

/// In-circuit mirrors of the native permutation/sponge. Same spec, separate
/// code path; equivalence against the native evaluation is part of the test
/// contract.
std::vector<GadgetBuilder::Var> circuit_permute(GadgetBuilder& b, const PermutationSpec& spec,
                                                std::vector<GadgetBuilder::Var> state);
GadgetBuilder::Var circuit_sponge(GadgetBuilder& b, const PermutationSpec& spec,
                                  const SpongeConfig& sponge,
                                  std::vector<GadgetBuilder::Var> inputs);

/// A circuit realizing a named function of one hash, with named signals.
struct Gadget {
    Circuit circuit;
    std::map<std::string, std::vector<std::uint32_t>> inputs;
    std::map<std::string, std::uint32_t> outputs;
    HashName hash = HashName::MiMC;
    std::string kind;  // "hash2" | "deposit" | "withdraw"
    int d_slot = -1;
    int d_era = -1;
};

/// 2-to-1 hash gadget. R1CS cost = S-boxes per permutation x permutations per
/// hash2 x addition-chain multiplications.
Gadget build_hash2_gadget(const PermutationSpec& spec, const SpongeConfig& sponge);

/// Deposit circuit: 2^d_slot leaf signals in, slot root out.
/// R1CS cost = hash2 cost x (2^d_slot - 1). d_slot = 0 is rejected (the root
/// would be the bare leaf; no circuit to build).
Gadget build_merkle_root_gadget(const PermutationSpec& spec, const SpongeConfig& sponge,
                                std::size_t d_slot);

/// Withdrawal circuit: recomputes the commitment from (secret, nullifier) and
/// the nullifier hash, folds the commitment up the slot path and the slot
/// root up the era path, and binds recipient/relayer/fee/refund linearly.
/// Each path level costs hash2 + 3 constraints (two selections plus one
/// boolean check).
Gadget build_withdraw_gadget(const PermutationSpec& spec, const SpongeConfig& sponge,
                             std::size_t d_slot, std::size_t d_era);

/// Evaluates a gadget on named inputs; returns the full witness.
Witness eval_gadget(const Gadget& gadget,
                    const std::map<std::string, std::vector<FieldElement>>& named_inputs);
/// Named output values only.
std::map<std::string, FieldElement> run_gadget(
    const Gadget& gadget, const std::map<std::string, std::vector<FieldElement>>& named_inputs);

enum class SystemKind { R1CS, Plonkish };

struct ConstraintReport {
    std::string hash;
    std::string gadget;
    std::string system;  // "r1cs" | "plonkish"
    int d_slot = -1;
    int d_era = -1;
    std::size_t constraints = 0;
    unsigned power = 0;
};

/// Lowers the gadget (outputs unbound, as proving toolchains count) and
/// reports the constraint count and circuit power.
ConstraintReport constraint_report(const Gadget& gadget, SystemKind system);
std::string report_to_json_text(const ConstraintReport& report);

/// Native protocol hashes shared with the mixer: the commitment is the
/// 2-to-1 hash of (secret, nullifier); the nullifier hash injects a fixed
/// domain-separation constant so the two uses can never collide.
FieldElement nullifier_domain_tag();
FieldElement commitment_hash(const PermutationSpec& spec, const SpongeConfig& sponge,
                             const FieldElement& secret, const FieldElement& nullifier);
FieldElement nullifier_hash(const PermutationSpec& spec, const SpongeConfig& sponge,
                            const FieldElement& nullifier);

}  // namespace zklab
