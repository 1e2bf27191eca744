// Copyright 2026 The zklab Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "zklab/permutation.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "zklab/keccak.hpp"

namespace zklab {
namespace {

struct Geometry {
    std::size_t width;
    unsigned exponent;
    std::size_t rounds_full;
    std::size_t rounds_partial;
};

// Canonical parameter choices. MiMC is the width-2 Feistel with 220 rounds
// (so a 2-to-1 hash costs two absorptions); the others follow the cited
// round counts: GMiMC 226, Poseidon 8+57, Poseidon2 8+56, Neptune 6+68.
Geometry geometry_of(HashName name) {
    switch (name) {
        case HashName::MiMC:
            return {2, 5, 220, 0};
        case HashName::GMiMC:
            return {4, 5, 226, 0};
        case HashName::Poseidon:
            return {3, 5, 8, 57};
        case HashName::Poseidon2:
            return {3, 5, 8, 56};
        case HashName::Neptune:
            return {4, 5, 6, 68};
    }
    throw std::invalid_argument("params: unknown hash name");
}

bool is_feistel(HashName name) {
    return name == HashName::MiMC || name == HashName::GMiMC;
}

bool has_external_internal(HashName name) {
    return name == HashName::Poseidon2 || name == HashName::Neptune;
}

void mat_mul_in_place(const Matrix& m, std::span<FieldElement> state,
                      std::vector<FieldElement>& scratch) {
    const std::size_t n = m.n;
    scratch.assign(n, FieldElement::zero());
    for (std::size_t i = 0; i < n; ++i) {
        FieldElement acc = FieldElement::zero();
        for (std::size_t j = 0; j < n; ++j) acc += m.at(i, j) * state[j];
        scratch[i] = acc;
    }
    std::copy(scratch.begin(), scratch.end(), state.begin());
}

void permute_mimc(const PermutationSpec& spec, std::span<FieldElement> state) {
    FieldElement left = state[0];
    FieldElement right = state[1];
    const std::size_t rounds = spec.rounds_full;
    for (std::size_t r = 0; r < rounds; ++r) {
        FieldElement t = (left + spec.round_constants[r][0]).pow(spec.exponent);
        if (r + 1 < rounds) {
            FieldElement new_left = right + t;
            right = left;
            left = new_left;
        } else {
            // swap suppressed on the last round
            right = right + t;
        }
    }
    state[0] = left;
    state[1] = right;
}

void permute_gmimc(const PermutationSpec& spec, std::span<FieldElement> state) {
    const std::size_t t = spec.width;
    for (std::size_t r = 0; r < spec.rounds_full; ++r) {
        FieldElement f = (state[0] + spec.round_constants[r][0]).pow(spec.exponent);
        for (std::size_t j = 1; j < t; ++j) state[j] += f;
        std::rotate(state.begin(), state.begin() + 1, state.end());
    }
}

void permute_poseidon(const PermutationSpec& spec, std::span<FieldElement> state,
                      std::vector<FieldElement>& scratch) {
    const Matrix& mds = spec.layer("mds");
    const std::size_t half = spec.rounds_full / 2;
    std::size_t row = 0;
    auto full_round = [&] {
        for (std::size_t i = 0; i < spec.width; ++i)
            state[i] = (state[i] + spec.round_constants[row][i]).pow(spec.exponent);
        ++row;
        mat_mul_in_place(mds, state, scratch);
    };
    auto partial_round = [&] {
        for (std::size_t i = 0; i < spec.width; ++i) state[i] += spec.round_constants[row][i];
        ++row;
        state[0] = state[0].pow(spec.exponent);
        mat_mul_in_place(mds, state, scratch);
    };
    for (std::size_t r = 0; r < half; ++r) full_round();
    for (std::size_t r = 0; r < spec.rounds_partial; ++r) partial_round();
    for (std::size_t r = 0; r < half; ++r) full_round();
}

void permute_poseidon2_like(const PermutationSpec& spec, std::span<FieldElement> state,
                            std::vector<FieldElement>& scratch) {
    const Matrix& external = spec.layer("external");
    const Matrix& internal = spec.layer("internal");
    const std::size_t half = spec.rounds_full / 2;
    std::size_t row = 0;

    mat_mul_in_place(external, state, scratch);
    for (std::size_t r = 0; r < half; ++r) {
        for (std::size_t i = 0; i < spec.width; ++i)
            state[i] = (state[i] + spec.round_constants[row][i]).pow(spec.exponent);
        ++row;
        mat_mul_in_place(external, state, scratch);
    }
    for (std::size_t r = 0; r < spec.rounds_partial; ++r) {
        state[0] = (state[0] + spec.round_constants[row][0]).pow(spec.exponent);
        ++row;
        mat_mul_in_place(internal, state, scratch);
    }
    for (std::size_t r = 0; r < half; ++r) {
        for (std::size_t i = 0; i < spec.width; ++i)
            state[i] = (state[i] + spec.round_constants[row][i]).pow(spec.exponent);
        ++row;
        mat_mul_in_place(external, state, scratch);
    }
}

std::string row_error(const char* what, std::size_t row) {
    std::ostringstream os;
    os << "params: " << what << " (row " << row << ")";
    return os.str();
}

}  // namespace

std::string_view to_string(HashName name) {
    switch (name) {
        case HashName::MiMC:
            return "mimc";
        case HashName::GMiMC:
            return "gmimc";
        case HashName::Poseidon:
            return "poseidon";
        case HashName::Poseidon2:
            return "poseidon2";
        case HashName::Neptune:
            return "neptune";
    }
    return "?";
}

HashName hash_name_from_string(std::string_view s) {
    for (HashName n : all_hash_names())
        if (s == to_string(n)) return n;
    throw std::invalid_argument("params: unknown hash name '" + std::string(s) + "'");
}

const std::vector<HashName>& all_hash_names() {
    static const std::vector<HashName> names = {HashName::MiMC, HashName::GMiMC,
                                                HashName::Poseidon, HashName::Poseidon2,
                                                HashName::Neptune};
    return names;
}

bool Matrix::invertible() const {
    // determinant != 0 via elimination; the matrices are tiny (t <= 4)
    Matrix m = *this;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m.at(pivot, col).is_zero()) ++pivot;
        if (pivot == n) return false;
        if (pivot != col)
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(pivot, j), m.at(col, j));
        FieldElement inv = m.at(col, col).inv();
        for (std::size_t r = col + 1; r < n; ++r) {
            FieldElement factor = m.at(r, col) * inv;
            for (std::size_t j = col; j < n; ++j) m.at(r, j) -= factor * m.at(col, j);
        }
    }
    return true;
}

std::size_t PermutationSpec::sbox_count() const {
    if (is_feistel(name)) return total_rounds();
    return rounds_full * width + rounds_partial;
}

std::size_t PermutationSpec::constants_row_width(std::size_t r) const {
    if (is_feistel(name)) return 1;
    if (name == HashName::Poseidon) return width;
    // External/internal split: t constants per full round, 1 per partial.
    const std::size_t half = rounds_full / 2;
    if (r < half || r >= half + rounds_partial) return width;
    return 1;
}

const Matrix& PermutationSpec::layer(std::string_view key) const {
    auto it = linear_layers.find(std::string(key));
    if (it == linear_layers.end())
        throw std::invalid_argument("params: missing linear layer '" + std::string(key) + "'");
    return it->second;
}

void validate(const PermutationSpec& spec) {
    if (spec.width < 2) throw std::invalid_argument("params: width must be >= 2");
    if (is_feistel(spec.name)) {
        if (spec.name == HashName::MiMC && spec.width != 2)
            throw std::invalid_argument("params: mimc runs on a width-2 Feistel state");
        if (spec.rounds_partial != 0)
            throw std::invalid_argument("params: Feistel constructions have no partial rounds");
        if (spec.rounds_full == 0)
            throw std::invalid_argument("params: round count must be positive");
    } else {
        if (spec.rounds_full == 0 || spec.rounds_full % 2 != 0)
            throw std::invalid_argument("params: full rounds must be positive and even");
    }
    if (!exponent_is_bijective(spec.exponent))
        throw std::invalid_argument("params: gcd(d, p-1) != 1, exponent " +
                                    std::to_string(spec.exponent) + " is not a bijection");

    if (spec.round_constants.size() != spec.total_rounds())
        throw std::invalid_argument(
            "params: round constant rows (" + std::to_string(spec.round_constants.size()) +
            ") != scheduled rounds (" + std::to_string(spec.total_rounds()) + ")");
    for (std::size_t r = 0; r < spec.round_constants.size(); ++r) {
        if (spec.round_constants[r].size() != spec.constants_row_width(r))
            throw std::invalid_argument(row_error("round constant row width off schedule", r));
    }

    std::vector<std::string> required;
    if (spec.name == HashName::Poseidon) required = {"mds"};
    if (has_external_internal(spec.name)) required = {"external", "internal"};
    for (const auto& key : required) {
        auto it = spec.linear_layers.find(key);
        if (it == spec.linear_layers.end())
            throw std::invalid_argument("params: missing linear layer '" + key + "'");
        const Matrix& m = it->second;
        if (m.n != spec.width || m.cells.size() != m.n * m.n)
            throw std::invalid_argument("params: linear layer '" + key + "' is not " +
                                        std::to_string(spec.width) + "x" +
                                        std::to_string(spec.width));
        if (!m.invertible())
            throw std::invalid_argument("params: linear layer '" + key + "' is singular");
    }
    if (is_feistel(spec.name) && !spec.linear_layers.empty())
        throw std::invalid_argument("params: Feistel constructions take no linear layers");
}

void validate(const SpongeConfig& sponge, std::size_t width) {
    if (sponge.rate < 1) throw std::invalid_argument("sponge: rate must be >= 1");
    if (sponge.rate + sponge.capacity != width)
        throw std::invalid_argument("sponge: rate + capacity must equal the permutation width");
}

SpongeConfig default_sponge(const PermutationSpec& spec) {
    if (spec.name == HashName::MiMC) return SpongeConfig{1, 1};
    return SpongeConfig{spec.width - 1, 1};
}

void permute(const PermutationSpec& spec, std::span<FieldElement> state,
             std::uint64_t* permute_calls) {
    if (state.size() != spec.width)
        throw std::invalid_argument("permute: state length " + std::to_string(state.size()) +
                                    " != width " + std::to_string(spec.width));
    if (permute_calls) ++*permute_calls;
    thread_local std::vector<FieldElement> scratch;
    switch (spec.name) {
        case HashName::MiMC:
            permute_mimc(spec, state);
            break;
        case HashName::GMiMC:
            permute_gmimc(spec, state);
            break;
        case HashName::Poseidon:
            permute_poseidon(spec, state, scratch);
            break;
        case HashName::Poseidon2:
        case HashName::Neptune:
            permute_poseidon2_like(spec, state, scratch);
            break;
    }
}

FieldElement sponge_hash(const PermutationSpec& spec, const SpongeConfig& sponge,
                         std::span<const FieldElement> inputs, std::uint64_t* permute_calls) {
    validate(sponge, spec.width);
    if (inputs.empty()) throw std::invalid_argument("sponge: empty input");

    std::vector<FieldElement> state(spec.width, FieldElement::zero());
    std::size_t pos = 0;
    while (pos < inputs.size()) {
        std::size_t block = std::min(sponge.rate, inputs.size() - pos);
        for (std::size_t i = 0; i < block; ++i) state[i] += inputs[pos + i];
        permute(spec, state, permute_calls);
        pos += block;
    }
    return state[0];
}

FieldElement hash2(const PermutationSpec& spec, const SpongeConfig& sponge,
                   const FieldElement& left, const FieldElement& right) {
    const FieldElement pair[2] = {left, right};
    return sponge_hash(spec, sponge, pair);
}

std::size_t hash2_permute_calls(const SpongeConfig& sponge) {
    return (2 + sponge.rate - 1) / sponge.rate;
}

PermutationSpec generate_params(HashName name, std::uint64_t seed) {
    const Geometry geo = geometry_of(name);
    PermutationSpec spec;
    spec.name = name;
    spec.width = geo.width;
    spec.exponent = geo.exponent;
    spec.rounds_full = geo.rounds_full;
    spec.rounds_partial = geo.rounds_partial;
    spec.seed = seed;

    const std::string base = "zklab/params|" + std::string(to_string(name)) +
                             "|p=" + FieldElement::modulus_hex() +
                             "|t=" + std::to_string(geo.width);

    spec.round_constants.resize(spec.total_rounds());
    for (std::size_t r = 0; r < spec.total_rounds(); ++r) {
        std::size_t cols = spec.constants_row_width(r);
        spec.round_constants[r].reserve(cols);
        for (std::size_t c = 0; c < cols; ++c) {
            spec.round_constants[r].push_back(field_from_tag(
                base + "|round=" + std::to_string(r) + "|col=" + std::to_string(c), seed));
        }
    }

    auto cauchy = [&](const std::string& layer) {
        // x_i and y_j come from the tag chain; retry counters keep the x_i
        // distinct and every x_i + y_j nonzero, so the Cauchy matrix is
        // nonsingular by construction.
        std::vector<FieldElement> xs, ys;
        std::size_t attempt = 0;
        auto draw = [&](const char* axis, std::size_t i) {
            return field_from_tag(base + "|" + layer + "|" + axis + "=" + std::to_string(i) +
                                      "|try=" + std::to_string(attempt),
                                  seed);
        };
        for (std::size_t i = 0; i < geo.width; ++i) {
            FieldElement x = draw("x", i);
            while (std::find(xs.begin(), xs.end(), x) != xs.end()) {
                ++attempt;
                x = draw("x", i);
            }
            xs.push_back(x);
        }
        for (std::size_t j = 0; j < geo.width; ++j) {
            for (;;) {
                FieldElement y = draw("y", j);
                bool ok = std::find(ys.begin(), ys.end(), y) == ys.end();
                for (const auto& x : xs)
                    if (ok && (x + y).is_zero()) ok = false;
                if (ok) {
                    ys.push_back(y);
                    break;
                }
                ++attempt;
            }
        }
        Matrix m;
        m.n = geo.width;
        m.cells.resize(m.n * m.n);
        for (std::size_t i = 0; i < m.n; ++i)
            for (std::size_t j = 0; j < m.n; ++j) m.at(i, j) = (xs[i] + ys[j]).inv();
        return m;
    };

    if (name == HashName::Poseidon) {
        spec.linear_layers["mds"] = cauchy("mds");
    } else if (has_external_internal(name)) {
        spec.linear_layers["external"] = cauchy("external");
        spec.linear_layers["internal"] = cauchy("internal");
    }

    validate(spec);
    return spec;
}

namespace {

nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.n; ++j) row.push_back(m.at(i, j).to_hex());
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const nlohmann::json& rows) {
    Matrix m;
    m.n = rows.size();
    m.cells.reserve(m.n * m.n);
    for (const auto& row : rows) {
        if (row.size() != m.n)
            throw std::invalid_argument("params: linear layer matrix is not square");
        for (const auto& cell : row)
            m.cells.push_back(FieldElement::from_hex(cell.get<std::string>()));
    }
    return m;
}

}  // namespace

std::string params_to_json_text(const PermutationSpec& spec) {
    nlohmann::json j;
    j["name"] = std::string(to_string(spec.name));
    j["t"] = spec.width;
    j["d"] = spec.exponent;
    j["rounds_full"] = spec.rounds_full;
    j["rounds_partial"] = spec.rounds_partial;
    j["seed"] = spec.seed;
    nlohmann::json consts = nlohmann::json::array();
    for (const auto& row : spec.round_constants) {
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& c : row) jr.push_back(c.to_hex());
        consts.push_back(std::move(jr));
    }
    j["constants"] = std::move(consts);
    nlohmann::json mats = nlohmann::json::object();
    for (const auto& [key, m] : spec.linear_layers) mats[key] = matrix_to_json(m);
    j["matrices"] = std::move(mats);
    return j.dump(2) + "\n";
}

PermutationSpec params_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("params: JSON parse error: ") + e.what());
    }
    PermutationSpec spec;
    try {
        spec.name = hash_name_from_string(j.at("name").get<std::string>());
        spec.width = j.at("t").get<std::size_t>();
        spec.exponent = j.at("d").get<unsigned>();
        spec.rounds_full = j.at("rounds_full").get<std::size_t>();
        spec.rounds_partial = j.at("rounds_partial").get<std::size_t>();
        spec.seed = j.value("seed", std::uint64_t{0});
        for (const auto& row : j.at("constants")) {
            std::vector<FieldElement> r;
            for (const auto& cell : row)
                r.push_back(FieldElement::from_hex(cell.get<std::string>()));
            spec.round_constants.push_back(std::move(r));
        }
        for (const auto& [key, rows] : j.at("matrices").items())
            spec.linear_layers[key] = matrix_from_json(rows);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("params: malformed parameter file: ") + e.what());
    }
    validate(spec);
    return spec;
}

PermutationSpec load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("params: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return params_from_json_text(ss.str());
}

void save_params(const PermutationSpec& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("params: cannot write '" + path + "'");
    out << params_to_json_text(spec);
}

PermutationSpec load_params_for(HashName name, const std::string& params_dir) {
    return load_params(params_dir + "/" + std::string(to_string(name)) + ".json");
}

}  // namespace zklab
