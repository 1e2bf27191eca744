// Copyright 2026 The zklab Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <random>

#include "support/oracles.hpp"
#include "zklab/circuit.hpp"

using namespace zklab;
using namespace zklab::test;

namespace {

// y = (x1 + x2) * (x3 * x4): two mul gates, one add gate.
struct ExampleCircuit {
    Circuit c;
    std::uint32_t x1, x2, x3, x4, x6, x5, y;

    ExampleCircuit() {
        x1 = c.add_input();
        x2 = c.add_input();
        x3 = c.add_input();
        x4 = c.add_input();
        x6 = c.add_gate(GateKind::Add, x1, x2);
        x5 = c.add_gate(GateKind::Mul, x3, x4);
        y = c.add_gate(GateKind::Mul, x6, x5);
        c.mark_output(y);
    }
};

// Independent recursive DAG interpreter with memoization; shares nothing
// with eval_witness's forward pass.
FieldElement interpret(const Circuit& c, std::uint32_t id,
                       const std::map<std::uint32_t, FieldElement>& inputs,
                       std::vector<std::optional<FieldElement>>& memo) {
    if (memo[id]) return *memo[id];
    const Gate& g = c.gates()[id];
    FieldElement v;
    switch (g.kind) {
        case GateKind::Input:
            v = inputs.at(id);
            break;
        case GateKind::Constant:
            v = g.value;
            break;
        case GateKind::Add:
            v = interpret(c, g.a, inputs, memo) + interpret(c, g.b, inputs, memo);
            break;
        case GateKind::Mul:
            v = interpret(c, g.a, inputs, memo) * interpret(c, g.b, inputs, memo);
            break;
    }
    memo[id] = v;
    return v;
}

struct RandomCircuit {
    Circuit c;
    std::map<std::uint32_t, FieldElement> inputs;
    std::size_t expected_mul_constraints = 0;
    std::size_t expected_bindings = 0;
};

RandomCircuit make_random_circuit(std::mt19937_64& rng, std::size_t extra_gates) {
    RandomCircuit rc;
    std::size_t num_inputs = 2 + rng() % 3;
    std::vector<std::uint32_t> ids;
    for (std::size_t i = 0; i < num_inputs; ++i) {
        std::uint32_t id = rc.c.add_input();
        rc.inputs[id] = random_field(rng);
        ids.push_back(id);
    }
    // combine all inputs once so no input column dangles outside the relation
    std::uint32_t acc = ids[0];
    for (std::size_t i = 1; i < num_inputs; ++i) {
        acc = rc.c.add_gate(GateKind::Add, acc, ids[i]);
        ids.push_back(acc);
    }
    // a mul gate folds into a scaling iff exactly one operand is a literal
    // constant gate; this mirrors the lowering's rule
    auto is_literal = [&](std::uint32_t id) {
        return rc.c.gates()[id].kind == GateKind::Constant;
    };
    for (std::size_t i = 0; i < extra_gates; ++i) {
        int pick = (int)(rng() % 4);
        if (pick == 0) {
            BigInt v = random_big(rng);
            if (v == 0) v = 1;
            ids.push_back(rc.c.add_constant(from_big(v)));
        } else {
            std::uint32_t a = ids[rng() % ids.size()];
            std::uint32_t b = ids[rng() % ids.size()];
            if (pick == 1) {
                ids.push_back(rc.c.add_gate(GateKind::Add, a, b));
            } else {
                ids.push_back(rc.c.add_gate(GateKind::Mul, a, b));
                if (is_literal(a) == is_literal(b)) ++rc.expected_mul_constraints;
            }
        }
    }
    // last gate plus one random earlier gate as outputs
    std::uint32_t out1 = ids.back();
    rc.c.mark_output(out1);
    std::uint32_t out2 = ids[rng() % ids.size()];
    rc.c.mark_output(out2);
    for (std::uint32_t out : rc.c.outputs()) {
        const Gate& g = rc.c.gates()[out];
        bool slotted_mul =
            g.kind == GateKind::Mul && (is_literal(g.a) == is_literal(g.b));
        if (!slotted_mul) ++rc.expected_bindings;
    }
    return rc;
}

}  // namespace

TEST_CASE("example circuit evaluates to 36 on inputs (1,2,3,4)") {
    ExampleCircuit ex;
    Witness w = eval_witness(ex.c, {FieldElement::from_u64(1), FieldElement::from_u64(2),
                                    FieldElement::from_u64(3), FieldElement::from_u64(4)});
    CHECK(w.values[ex.y] == FieldElement::from_u64(36));

    // absorbing zero path
    Witness w0 = eval_witness(ex.c, {FieldElement::zero(), FieldElement::zero(),
                                     FieldElement::from_u64(7), FieldElement::from_u64(9)});
    CHECK(w0.values[ex.y] == FieldElement::zero());

    std::map<std::uint32_t, FieldElement> missing = {{ex.x1, FieldElement::one()}};
    CHECK_THROWS_AS(eval_witness(ex.c, missing), std::invalid_argument);
}

TEST_CASE("example circuit lowers to exactly two R1CS constraints with the known pattern") {
    ExampleCircuit ex;
    R1CSSystem sys = lower_to_r1cs(ex.c);
    CHECK(sys.rows.size() == 2);
    CHECK(sys.mul_constraints == 2);
    CHECK(sys.binding_constraints == 0);
    // columns: [1, x1, x2, x3, x4, x5, y]
    REQUIRE(sys.num_columns == 7);
    CHECK(sys.columns[5].kind == ColumnKind::Internal);
    CHECK(sys.columns[5].gate == ex.x5);
    CHECK(sys.columns[6].kind == ColumnKind::Output);
    CHECK(sys.columns[6].gate == ex.y);

    // x5 = x3*x4 row: A = x3, B = x4, C = x5
    const R1CSConstraint& inner = sys.rows[0];
    REQUIRE(inner.a.terms.size() == 1);
    CHECK(inner.a.terms[0].first == 3);
    REQUIRE(inner.b.terms.size() == 1);
    CHECK(inner.b.terms[0].first == 4);
    REQUIRE(inner.c.terms.size() == 1);
    CHECK(inner.c.terms[0].first == 5);

    // y = (x1+x2)*x5 row: the addition folded into A
    const R1CSConstraint& outer = sys.rows[1];
    REQUIRE(outer.a.terms.size() == 2);
    CHECK(outer.a.terms[0].first == 1);
    CHECK(outer.a.terms[1].first == 2);
    CHECK(outer.a.terms[0].second == FieldElement::one());
    CHECK(outer.a.terms[1].second == FieldElement::one());
    REQUIRE(outer.b.terms.size() == 1);
    CHECK(outer.b.terms[0].first == 5);
    REQUIRE(outer.c.terms.size() == 1);
    CHECK(outer.c.terms[0].first == 6);

    Witness w = eval_witness(ex.c, {FieldElement::from_u64(1), FieldElement::from_u64(2),
                                    FieldElement::from_u64(3), FieldElement::from_u64(4)});
    auto vec = r1cs_witness(sys, ex.c, w);
    CHECK(check_satisfied(sys, vec));
    vec[5] += FieldElement::one();
    CHECK_FALSE(check_satisfied(sys, vec));
}

TEST_CASE("example circuit lowers to exactly three Plonkish rows with the selector table") {
    ExampleCircuit ex;
    PlonkishSystem sys = lower_to_plonkish(ex.c);
    REQUIRE(sys.rows.size() == 3);

    const FieldElement one = FieldElement::one();
    const FieldElement minus_one = -one;
    auto is_add_row = [&](const PlonkishRow& r) {
        return r.q_l == one && r.q_r == one && r.q_m.is_zero() && r.q_c.is_zero() &&
               r.q_o == minus_one;
    };
    auto is_mul_row = [&](const PlonkishRow& r) {
        return r.q_l.is_zero() && r.q_r.is_zero() && r.q_m == one && r.q_c.is_zero() &&
               r.q_o == minus_one;
    };

    // row for x6 = x1 + x2
    CHECK(is_add_row(sys.rows[0]));
    CHECK(sys.rows[0].wire_l == ex.x1);
    CHECK(sys.rows[0].wire_r == ex.x2);
    CHECK(sys.rows[0].wire_o == ex.x6);
    // row for x5 = x3 * x4
    CHECK(is_mul_row(sys.rows[1]));
    CHECK(sys.rows[1].wire_l == ex.x3);
    CHECK(sys.rows[1].wire_r == ex.x4);
    CHECK(sys.rows[1].wire_o == ex.x5);
    // row for y = x6 * x5, wired to the add and mul outputs
    CHECK(is_mul_row(sys.rows[2]));
    CHECK(sys.rows[2].wire_l == ex.x6);
    CHECK(sys.rows[2].wire_r == ex.x5);
    CHECK(sys.rows[2].wire_o == ex.y);

    // shared wires x6 and x5 produce one copy pair each
    CHECK(sys.copy_constraints.size() == 2);

    Witness w = eval_witness(ex.c, {FieldElement::from_u64(1), FieldElement::from_u64(2),
                                    FieldElement::from_u64(3), FieldElement::from_u64(4)});
    auto assignment = plonkish_assignment(sys, ex.c, w);
    CHECK(check_satisfied(sys, assignment));

    // breaking one cell of a shared wire violates a copy constraint
    auto tampered = assignment;
    tampered.cells[2][0] += FieldElement::one();
    CHECK_FALSE(check_satisfied(sys, tampered));
}

TEST_CASE("pure-addition circuit costs only the output binding") {
    Circuit c;
    auto x1 = c.add_input();
    auto x2 = c.add_input();
    auto x3 = c.add_input();
    auto s = c.add_gate(GateKind::Add, c.add_gate(GateKind::Add, x1, x2), x3);
    c.mark_output(s);

    R1CSSystem sys = lower_to_r1cs(c);
    CHECK(sys.mul_constraints == 0);
    CHECK(sys.binding_constraints == 1);
    CHECK(sys.rows.size() == 1);

    Witness w = eval_witness(c, {FieldElement::from_u64(3), FieldElement::from_u64(4),
                                 FieldElement::from_u64(5)});
    CHECK(check_satisfied(sys, r1cs_witness(sys, c, w)));

    // without output binding there is nothing to constrain
    R1CSSystem bare = lower_to_r1cs(c, LowerOptions{.bind_outputs = false});
    CHECK(bare.rows.empty());
}

TEST_CASE("single constant-output circuit uses one q_c row") {
    Circuit c;
    auto k = c.add_constant(FieldElement::from_u64(42));
    c.mark_output(k);

    PlonkishSystem sys = lower_to_plonkish(c);
    REQUIRE(sys.rows.size() == 1);
    CHECK(sys.rows[0].q_c == FieldElement::from_u64(42));
    CHECK(sys.rows[0].q_o == -FieldElement::one());
    CHECK(sys.rows[0].wire_o == k);
    CHECK(sys.rows[0].q_l.is_zero());
    CHECK(sys.rows[0].q_m.is_zero());

    Witness w = eval_witness(c, std::map<std::uint32_t, FieldElement>{});
    CHECK(check_satisfied(sys, plonkish_assignment(sys, c, w)));

    // R1CS side: one binding row ties the output column to the constant
    R1CSSystem rsys = lower_to_r1cs(c);
    CHECK(rsys.rows.size() == 1);
    auto vec = r1cs_witness(rsys, c, w);
    CHECK(check_satisfied(rsys, vec));
    // the all-zero witness zeroes the constant-one slot and must fail
    std::vector<FieldElement> zeros(rsys.num_columns, FieldElement::zero());
    CHECK_FALSE(check_satisfied(rsys, zeros));
}

TEST_CASE("eval_witness agrees with an independent DAG interpreter on random circuits") {
    std::mt19937_64 rng(40);
    for (int trial = 0; trial < 100; ++trial) {
        RandomCircuit rc = make_random_circuit(rng, 3 + rng() % 15);
        Witness w = eval_witness(rc.c, rc.inputs);
        std::vector<std::optional<FieldElement>> memo(rc.c.size());
        for (std::uint32_t out : rc.c.outputs())
            CHECK(w.values[out] == interpret(rc.c, out, rc.inputs, memo));
    }
}

TEST_CASE("random circuits satisfy both lowerings; perturbations are rejected") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        RandomCircuit rc = make_random_circuit(rng, 5 + rng() % 15);
        Witness w = eval_witness(rc.c, rc.inputs);

        R1CSSystem rsys = lower_to_r1cs(rc.c);
        CHECK(rsys.mul_constraints == rc.expected_mul_constraints);
        CHECK(rsys.binding_constraints == rc.expected_bindings);
        auto vec = r1cs_witness(rsys, rc.c, w);
        CHECK(check_satisfied(rsys, vec));

        // perturb a column that participates in the relation
        std::vector<std::uint32_t> referenced;
        for (std::uint32_t col = 0; col < rsys.num_columns; ++col) {
            bool used = false;
            for (const auto& row : rsys.rows) {
                for (const auto& [cc, coeff] : row.a.terms) used = used || cc == col;
                for (const auto& [cc, coeff] : row.b.terms) used = used || cc == col;
                for (const auto& [cc, coeff] : row.c.terms) used = used || cc == col;
            }
            if (used) referenced.push_back(col);
        }
        if (!rsys.rows.empty()) {
            auto bad = vec;
            bad[referenced[rng() % referenced.size()]] += FieldElement::one();
            CHECK_FALSE(check_satisfied(rsys, bad));
        }

        PlonkishSystem psys = lower_to_plonkish(rc.c);
        CHECK(psys.rows.size() == rc.c.count(GateKind::Add) + rc.c.count(GateKind::Mul) +
                                      rc.c.count(GateKind::Constant));
        auto assignment = plonkish_assignment(psys, rc.c, w);
        CHECK(check_satisfied(psys, assignment));

        if (!psys.rows.empty()) {
            // perturb one occupied cell
            for (int attempt = 0; attempt < 64; ++attempt) {
                std::size_t r = rng() % psys.rows.size();
                int s = (int)(rng() % 3);
                const std::int64_t wires[3] = {psys.rows[r].wire_l, psys.rows[r].wire_r,
                                               psys.rows[r].wire_o};
                if (wires[s] < 0) continue;
                auto bad = assignment;
                bad.cells[r][s] += FieldElement::one();
                CHECK_FALSE(check_satisfied(psys, bad));
                break;
            }
        }
    }
}

TEST_CASE("lowering is deterministic") {
    std::mt19937_64 rng(42);
    RandomCircuit rc = make_random_circuit(rng, 12);
    CHECK(r1cs_to_json_text(lower_to_r1cs(rc.c)) == r1cs_to_json_text(lower_to_r1cs(rc.c)));
    CHECK(plonkish_to_json_text(lower_to_plonkish(rc.c)) ==
          plonkish_to_json_text(lower_to_plonkish(rc.c)));
}

TEST_CASE("assert-zero gates lower to constraint rows without wires") {
    // b must be boolean: z = b*(b-1) = 0
    Circuit c;
    auto b = c.add_input();
    auto minus_one = c.add_constant(-FieldElement::one());
    auto bm1 = c.add_gate(GateKind::Add, b, minus_one);
    auto z = c.add_gate(GateKind::Mul, b, bm1);
    c.assert_zero(z);
    c.mark_output(b);  // keep an output so the circuit validates

    R1CSSystem sys = lower_to_r1cs(c);
    CHECK(sys.assert_constraints == 1);
    CHECK(sys.mul_constraints == 0);

    for (std::uint64_t v : {0ull, 1ull}) {
        Witness w = eval_witness(c, {FieldElement::from_u64(v)});
        CHECK(check_satisfied(sys, r1cs_witness(sys, c, w)));
    }
    Witness w2 = eval_witness(c, {FieldElement::from_u64(2)});
    CHECK_FALSE(check_satisfied(sys, r1cs_witness(sys, c, w2)));

    PlonkishSystem psys = lower_to_plonkish(c);
    Witness w1 = eval_witness(c, {FieldElement::one()});
    CHECK(check_satisfied(psys, plonkish_assignment(psys, c, w1)));
    CHECK_FALSE(check_satisfied(psys, plonkish_assignment(psys, c, w2)));

    // asserted gates are terminal: using one as an operand is rejected
    Circuit bad;
    auto i = bad.add_input();
    auto m = bad.add_gate(GateKind::Mul, i, i);
    bad.assert_zero(m);
    auto follow = bad.add_gate(GateKind::Add, m, i);
    bad.mark_output(follow);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("check_satisfied rejects dimension mismatches as shape errors") {
    ExampleCircuit ex;
    R1CSSystem sys = lower_to_r1cs(ex.c);
    std::vector<FieldElement> wrong(sys.num_columns + 1, FieldElement::one());
    CHECK_THROWS_AS(check_satisfied(sys, wrong), std::invalid_argument);
}

TEST_CASE("circuit power") {
    CHECK(circuit_power(1024) == 10);
    CHECK(circuit_power(1025) == 11);
    CHECK(circuit_power(1) == 0);
    CHECK_THROWS_AS(circuit_power(0), std::domain_error);

    std::mt19937_64 rng(43);
    for (int i = 0; i < 1000; ++i) {
        std::uint64_t n = 1 + rng() % (1u << 20);
        // linear scan oracle
        unsigned k = 0;
        while ((std::uint64_t{1} << k) < n) ++k;
        CHECK(circuit_power(n) == k);
    }
}

TEST_CASE("circuit JSON round trip") {
    ExampleCircuit ex;
    std::string text = circuit_to_json_text(ex.c);
    Circuit parsed = circuit_from_json_text(text);
    CHECK(circuit_to_json_text(parsed) == text);

    Witness w = eval_witness(parsed, {FieldElement::from_u64(1), FieldElement::from_u64(2),
                                      FieldElement::from_u64(3), FieldElement::from_u64(4)});
    CHECK(w.values.back() == FieldElement::from_u64(36));

    CHECK_THROWS_AS(circuit_from_json_text("{"), std::invalid_argument);
    CHECK_THROWS_AS(circuit_from_json_text(R"({"gates":[],"outputs":[]})"),
                    std::invalid_argument);
}
