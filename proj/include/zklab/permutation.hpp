// Copyright 2026 The zklab Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zklab/field.hpp"

namespace zklab {

enum class HashName { MiMC, GMiMC, Poseidon, Poseidon2, Neptune };

std::string_view to_string(HashName name);
HashName hash_name_from_string(std::string_view s);
const std::vector<HashName>& all_hash_names();

/// Square matrix over the field, row-major.
struct Matrix {
    std::size_t n = 0;
    std::vector<FieldElement> cells;

    const FieldElement& at(std::size_t r, std::size_t c) const { return cells[r * n + c]; }
    FieldElement& at(std::size_t r, std::size_t c) { return cells[r * n + c]; }
    bool invertible() const;  // determinant != 0, Gaussian elimination mod p
};

struct SpongeConfig {
    std::size_t rate = 1;
    std::size_t capacity = 1;
    // Padding rule: fixed-arity only. Callers state the input length up
    // front; short final blocks are absorbed as-is with no padding bytes.
};

/// Full parameterization of one permutation. Immutable after validation;
/// shareable across threads.
///
/// Round-constant rows follow the construction's schedule:
///   MiMC, GMiMC          one constant per round (Feistel branch injection)
///   Poseidon             t constants per round, full and partial alike
///   Poseidon2, Neptune   t constants per external round, 1 per internal
///
/// Linear layers: Poseidon carries "mds"; Poseidon2 and Neptune carry
/// "external" and "internal". The Feistel constructions have none.
struct PermutationSpec {
    HashName name = HashName::MiMC;
    std::size_t width = 2;       // t
    unsigned exponent = 5;       // d
    std::size_t rounds_full = 0;
    std::size_t rounds_partial = 0;
    std::uint64_t seed = 0;      // generator provenance
    std::vector<std::vector<FieldElement>> round_constants;
    std::map<std::string, Matrix> linear_layers;

    std::size_t total_rounds() const { return rounds_full + rounds_partial; }
    /// S-box evaluations in one permutation call.
    std::size_t sbox_count() const;
    /// Expected width of round-constant row r under the schedule.
    std::size_t constants_row_width(std::size_t r) const;
    const Matrix& layer(std::string_view key) const;
};

/// Throws std::invalid_argument naming the violated invariant.
void validate(const PermutationSpec& spec);
void validate(const SpongeConfig& sponge, std::size_t width);

/// Default sponge geometry: MiMC runs rate 1 / capacity 1 (two absorptions
/// per 2-to-1 hash); the wide permutations run rate t-1 / capacity 1.
SpongeConfig default_sponge(const PermutationSpec& spec);

/// Applies the permutation in place. Bijective on F_p^t for valid specs.
/// `permute_calls`, when given, is incremented once per invocation.
void permute(const PermutationSpec& spec, std::span<FieldElement> state,
             std::uint64_t* permute_calls = nullptr);

/// Absorb `inputs` rate-at-a-time into a zero state, permuting after each
/// block; squeeze the first state element. Rejects empty input.
FieldElement sponge_hash(const PermutationSpec& spec, const SpongeConfig& sponge,
                         std::span<const FieldElement> inputs,
                         std::uint64_t* permute_calls = nullptr);

/// 2-to-1 hash: sponge_hash over [left, right].
FieldElement hash2(const PermutationSpec& spec, const SpongeConfig& sponge,
                   const FieldElement& left, const FieldElement& right);

/// Permutation calls hash2 makes under this sponge (for cost accounting).
std::size_t hash2_permute_calls(const SpongeConfig& sponge);

/// Deterministic parameter generation: constants and Cauchy-built linear
/// layers derived from (name, p, t, round, column, seed) via a Keccak-256
/// counter chain with rejection sampling. The committed parameter files are
/// normative; this generator is the reproducibility tooling they came from.
PermutationSpec generate_params(HashName name, std::uint64_t seed);

PermutationSpec load_params(const std::string& path);
void save_params(const PermutationSpec& spec, const std::string& path);
PermutationSpec params_from_json_text(const std::string& text);
std::string params_to_json_text(const PermutationSpec& spec);

/// Loads "<dir>/<name>.json".
PermutationSpec load_params_for(HashName name, const std::string& params_dir);

}  // namespace zklab
