// Copyright 2026 The zklab Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "zklab/merkle.hpp"

#include <fstream>
#include <json.hpp>
#include <stdexcept>

namespace zklab {

Hasher::Hasher(const PermutationSpec& spec, SpongeConfig sponge)
    : spec_(&spec), sponge_(sponge) {
    validate(sponge_, spec.width);
}

FieldElement Hasher::hash2(const FieldElement& left, const FieldElement& right) const {
    ++calls_;
    return zklab::hash2(*spec_, sponge_, left, right);
}

MerkleTree MerkleTree::build(std::vector<FieldElement> leaves, const Hasher& hasher,
                             std::size_t depth) {
    if (depth > 24) throw std::out_of_range("merkle: build depth > 24 (use the incremental tree)");
    const std::uint64_t cap = std::uint64_t{1} << depth;
    if (leaves.size() > cap)
        throw std::out_of_range("merkle: " + std::to_string(leaves.size()) +
                                " leaves exceed capacity 2^" + std::to_string(depth));
    leaves.resize(cap, FieldElement::zero());

    MerkleTree tree;
    tree.levels_.reserve(depth + 1);
    tree.levels_.push_back(std::move(leaves));
    for (std::size_t level = 0; level < depth; ++level) {
        const auto& below = tree.levels_[level];
        std::vector<FieldElement> above(below.size() / 2);
        for (std::size_t i = 0; i < above.size(); ++i)
            above[i] = hasher.hash2(below[2 * i], below[2 * i + 1]);
        tree.levels_.push_back(std::move(above));
    }
    return tree;
}

MerklePath MerkleTree::prove(std::uint64_t index) const {
    if (index >= leaf_count())
        throw std::out_of_range("merkle: leaf index " + std::to_string(index) + " out of range");
    MerklePath path;
    path.leaf_index = index;
    std::uint64_t i = index;
    for (std::size_t level = 0; level < depth(); ++level) {
        path.bits.push_back((std::uint8_t)(i & 1));
        path.siblings.push_back(levels_[level][i ^ 1]);
        i >>= 1;
    }
    return path;
}

IncrementalMerkleTree::IncrementalMerkleTree(std::size_t depth, const Hasher& hasher,
                                             std::size_t root_history)
    : depth_(depth), hasher_(&hasher), ring_capacity_(root_history) {
    if (depth == 0 || depth > 32)
        throw std::out_of_range("merkle: incremental depth must be in 1..32");
    if (ring_capacity_ == 0) ring_capacity_ = 1;
    levels_.resize(depth + 1);
    zero_hashes_.resize(depth + 1);
    zero_hashes_[0] = FieldElement::zero();
    for (std::size_t l = 0; l < depth; ++l)
        zero_hashes_[l + 1] = hasher.hash2(zero_hashes_[l], zero_hashes_[l]);
    root_ = zero_hashes_[depth];
    root_ring_.push_back(root_);
}

FieldElement IncrementalMerkleTree::insert(const FieldElement& commitment) {
    if (next_index_ >= capacity())
        throw std::out_of_range("merkle: incremental tree is full (2^" +
                                std::to_string(depth_) + " leaves)");
    FieldElement current = commitment;
    std::uint64_t i = next_index_;
    for (std::size_t level = 0; level <= depth_; ++level) {
        auto& nodes = levels_[level];
        if (nodes.size() <= i) nodes.resize(i + 1, zero_hashes_[level]);
        nodes[i] = current;
        if (level == depth_) break;
        FieldElement sibling = ((i ^ 1) < nodes.size()) ? nodes[i ^ 1] : zero_hashes_[level];
        current = (i & 1) ? hasher_->hash2(sibling, current)
                          : hasher_->hash2(current, sibling);
        i >>= 1;
    }
    root_ = current;
    ++next_index_;
    root_ring_.push_back(root_);
    if (root_ring_.size() > ring_capacity_) root_ring_.erase(root_ring_.begin());
    return root_;
}

MerklePath IncrementalMerkleTree::prove(std::uint64_t index) const {
    if (index >= next_index_)
        throw std::out_of_range("merkle: leaf " + std::to_string(index) +
                                " has not been inserted");
    MerklePath path;
    path.leaf_index = index;
    std::uint64_t i = index;
    for (std::size_t level = 0; level < depth_; ++level) {
        std::uint64_t sib = i ^ 1;
        path.bits.push_back((std::uint8_t)(i & 1));
        path.siblings.push_back(sib < levels_[level].size() ? levels_[level][sib]
                                                            : zero_hashes_[level]);
        i >>= 1;
    }
    return path;
}

bool IncrementalMerkleTree::is_known_root(const FieldElement& candidate) const {
    for (const auto& r : root_ring_)
        if (r == candidate) return true;
    return false;
}

bool verify(const FieldElement& leaf, const FieldElement& root, const MerklePath& path,
            const Hasher& hasher) {
    if (path.siblings.size() != path.bits.size()) return false;
    FieldElement current = leaf;
    for (std::size_t level = 0; level < path.siblings.size(); ++level) {
        current = path.bits[level] ? hasher.hash2(path.siblings[level], current)
                                   : hasher.hash2(current, path.siblings[level]);
    }
    return current == root;
}

bool verify_composed(const FieldElement& leaf, const MerklePath& slot_path,
                     const FieldElement& slot_root, const MerklePath& era_path,
                     const FieldElement& era_root, const Hasher& hasher) {
    return verify(leaf, slot_root, slot_path, hasher) &&
           verify(slot_root, era_root, era_path, hasher);
}

std::string path_to_json_text(const MerklePath& path) {
    nlohmann::json j;
    nlohmann::json siblings = nlohmann::json::array();
    for (const auto& s : path.siblings) siblings.push_back(s.to_hex());
    nlohmann::json bits = nlohmann::json::array();
    for (auto b : path.bits) bits.push_back((int)b);
    j["siblings"] = std::move(siblings);
    j["bits"] = std::move(bits);
    j["index"] = path.leaf_index;
    return j.dump(2) + "\n";
}

MerklePath path_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("path: JSON parse error: ") + e.what());
    }
    MerklePath path;
    try {
        for (const auto& s : j.at("siblings"))
            path.siblings.push_back(FieldElement::from_hex(s.get<std::string>()));
        for (const auto& b : j.at("bits")) {
            int v = b.get<int>();
            if (v != 0 && v != 1) throw std::invalid_argument("path: bits must be 0 or 1");
            path.bits.push_back((std::uint8_t)v);
        }
        path.leaf_index = j.at("index").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("path: malformed path JSON: ") + e.what());
    }
    if (path.siblings.size() != path.bits.size())
        throw std::invalid_argument("path: siblings and bits must have equal length");
    return path;
}

std::vector<FieldElement> read_leaf_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("merkle: cannot open leaf file '" + path + "'");
    std::vector<FieldElement> leaves;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        auto end = line.find_last_not_of(" \t\r");
        try {
            leaves.push_back(FieldElement::from_hex(line.substr(start, end - start + 1)));
        } catch (const std::exception& e) {
            throw std::invalid_argument("merkle: leaf file line " + std::to_string(lineno) +
                                        ": " + e.what());
        }
    }
    return leaves;
}

}  // namespace zklab
