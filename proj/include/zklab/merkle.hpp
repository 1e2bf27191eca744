// Copyright 2026 The zklab Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zklab/permutation.hpp"

namespace zklab {

/// A (PermutationSpec, SpongeConfig) pair with a call counter. The counter
/// exists so the complexity contracts (2^d - 1 hashes per build, d per
/// insert/verify) are testable as exact numbers.
class Hasher {
public:
    Hasher(const PermutationSpec& spec, SpongeConfig sponge);

    FieldElement hash2(const FieldElement& left, const FieldElement& right) const;
    std::uint64_t calls() const { return calls_; }
    void reset_calls() const { calls_ = 0; }

    const PermutationSpec& spec() const { return *spec_; }
    const SpongeConfig& sponge() const { return sponge_; }

private:
    const PermutationSpec* spec_;
    SpongeConfig sponge_;
    mutable std::uint64_t calls_ = 0;
};

/// Authentication path: sibling per level plus the position bit (0 when the
/// running node is the left child) and the leaf index it belongs to.
struct MerklePath {
    std::vector<FieldElement> siblings;
    std::vector<std::uint8_t> bits;
    std::uint64_t leaf_index = 0;
};

std::string path_to_json_text(const MerklePath& path);
MerklePath path_from_json_text(const std::string& text);

/// Fully populated fixed-depth binary tree (the off-chain "slot" flavor).
/// Leaves short of 2^depth are padded with zero leaves.
class MerkleTree {
public:
    static MerkleTree build(std::vector<FieldElement> leaves, const Hasher& hasher,
                            std::size_t depth);

    const FieldElement& root() const { return levels_.back()[0]; }
    std::size_t depth() const { return levels_.size() - 1; }
    std::uint64_t leaf_count() const { return levels_[0].size(); }
    const std::vector<FieldElement>& leaves() const { return levels_[0]; }
    const FieldElement& node(std::size_t level, std::uint64_t index) const {
        return levels_[level][index];
    }

    MerklePath prove(std::uint64_t index) const;

private:
    MerkleTree() = default;
    std::vector<std::vector<FieldElement>> levels_;  // levels_[0] = leaves
};

/// Incremental fixed-depth tree (the on-chain "era" flavor): leaves start as
/// zero and fill strictly left to right. Every insert touches exactly depth
/// internal nodes. Filled nodes are retained so paths for any inserted leaf
/// can be produced against the current root; a bounded ring of recent roots
/// lets slightly stale membership proofs still verify.
class IncrementalMerkleTree {
public:
    IncrementalMerkleTree(std::size_t depth, const Hasher& hasher,
                          std::size_t root_history = 32);

    /// Appends a leaf; returns the new root. Throws std::out_of_range when full.
    FieldElement insert(const FieldElement& commitment);

    const FieldElement& root() const { return root_; }
    std::uint64_t next_index() const { return next_index_; }
    std::uint64_t capacity() const { return std::uint64_t{1} << depth_; }
    std::size_t depth() const { return depth_; }

    MerklePath prove(std::uint64_t index) const;
    bool is_known_root(const FieldElement& candidate) const;
    const std::vector<FieldElement>& zero_hashes() const { return zero_hashes_; }

private:
    std::size_t depth_;
    const Hasher* hasher_;
    std::uint64_t next_index_ = 0;
    FieldElement root_;
    std::vector<std::vector<FieldElement>> levels_;  // retained filled nodes
    std::vector<FieldElement> zero_hashes_;          // zero-subtree root per level
    std::vector<FieldElement> root_ring_;
    std::size_t ring_capacity_;
};

/// Folds `leaf` up the path and compares with `root`; exactly depth hash2
/// calls. Malformed membership is the false return, not an error.
bool verify(const FieldElement& leaf, const FieldElement& root, const MerklePath& path,
            const Hasher& hasher);

/// Two-stage membership: leaf in a slot tree whose root is a leaf of the era
/// tree. True iff both constituent paths verify.
bool verify_composed(const FieldElement& leaf, const MerklePath& slot_path,
                     const FieldElement& slot_root, const MerklePath& era_path,
                     const FieldElement& era_root, const Hasher& hasher);

/// One hex field element per line; blank lines ignored.
std::vector<FieldElement> read_leaf_file(const std::string& path);

}  // namespace zklab
