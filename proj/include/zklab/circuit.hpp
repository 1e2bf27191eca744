// Copyright 2026 The zklab Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "zklab/field.hpp"

namespace zklab {

enum class GateKind : std::uint8_t { Input, Constant, Add, Mul };

struct Gate {
    GateKind kind = GateKind::Input;
    std::uint32_t a = 0;  // operand gate ids (Add/Mul)
    std::uint32_t b = 0;
    FieldElement value;   // Constant payload
};

/// Arithmetic-circuit DAG. Gates reference earlier gates only; outputs are
/// designated gate ids. Gates in the assert-zero list are terminal
/// constraints: they must evaluate to zero, may not feed other gates, and are
/// lowered as constraint rows rather than wires.
class Circuit {
public:
    std::uint32_t add_input();
    std::uint32_t add_constant(const FieldElement& value);
    std::uint32_t add_gate(GateKind kind, std::uint32_t a, std::uint32_t b);
    void mark_output(std::uint32_t gate);
    void assert_zero(std::uint32_t gate);

    const std::vector<Gate>& gates() const { return gates_; }
    const std::vector<std::uint32_t>& outputs() const { return outputs_; }
    const std::vector<std::uint32_t>& assertions() const { return assertions_; }
    const std::vector<std::uint32_t>& input_gates() const { return inputs_; }
    std::size_t size() const { return gates_.size(); }

    std::size_t count(GateKind kind) const;

    /// Topological order, >= 1 output, asserted gates terminal. Throws
    /// std::invalid_argument naming the violation.
    void validate() const;

private:
    std::vector<Gate> gates_;
    std::vector<std::uint32_t> inputs_;
    std::vector<std::uint32_t> outputs_;
    std::vector<std::uint32_t> assertions_;
};

std::string circuit_to_json_text(const Circuit& c);
Circuit circuit_from_json_text(const std::string& text);

/// Values per gate id, in gate order.
struct Witness {
    std::vector<FieldElement> values;
};

/// Evaluates every gate given the input assignment (gate id -> value for
/// every input gate). Missing inputs are an assignment error.
Witness eval_witness(const Circuit& c, const std::map<std::uint32_t, FieldElement>& inputs);
/// Convenience: values listed in input-gate order.
Witness eval_witness(const Circuit& c, const std::vector<FieldElement>& inputs_in_order);

// ---------------------------------------------------------------------------
// R1CS
// ---------------------------------------------------------------------------

/// Sparse linear combination over witness columns, sorted by column.
/// Column 0 is the constant-one slot.
struct LinearCombination {
    std::vector<std::pair<std::uint32_t, FieldElement>> terms;

    bool is_constant() const { return terms.empty() || (terms.size() == 1 && terms[0].first == 0); }
    FieldElement constant_value() const;
};

struct R1CSConstraint {
    LinearCombination a, b, c;
};

enum class ColumnKind : std::uint8_t { One, Input, Internal, Output };

struct ColumnInfo {
    ColumnKind kind = ColumnKind::One;
    std::uint32_t gate = 0;  // defining gate (unused for the one column)
};

/// Constraint rows (A.r)o(B.r) = (C.r) over witness columns ordered
/// [1, inputs..., internal wires..., outputs...]. Multiplication gates with
/// one constant operand fold into linear combinations (constant scaling);
/// additions and constants always fold. Each remaining multiplication gate
/// contributes exactly one constraint; designated outputs that are not
/// multiplication outputs get one binding constraint when bind_outputs is
/// set.
struct R1CSSystem {
    std::size_t num_columns = 0;
    std::vector<ColumnInfo> columns;
    std::vector<R1CSConstraint> rows;
    std::size_t mul_constraints = 0;     // from multiplication gates
    std::size_t assert_constraints = 0;  // from assert-zero rows
    std::size_t binding_constraints = 0; // output bindings

    std::size_t num_constraints() const { return rows.size(); }
};

struct LowerOptions {
    bool bind_outputs = true;
};

R1CSSystem lower_to_r1cs(const Circuit& c, const LowerOptions& options = {});

/// Witness column vector for a fully evaluated circuit.
std::vector<FieldElement> r1cs_witness(const R1CSSystem& system, const Circuit& c,
                                       const Witness& witness);

/// Row-wise (A.r)o(B.r) - (C.r) = 0. Dimension mismatch is a shape error.
bool check_satisfied(const R1CSSystem& system, const std::vector<FieldElement>& witness);

std::string r1cs_to_json_text(const R1CSSystem& system);

// ---------------------------------------------------------------------------
// Plonkish
// ---------------------------------------------------------------------------

/// One row per add/mul/constant gate with selector values; assert-zero gates
/// become output-free rows. Wires are gate ids (-1 marks an unused cell).
struct PlonkishRow {
    std::int64_t wire_l = -1, wire_r = -1, wire_o = -1;
    FieldElement q_l, q_r, q_m, q_c, q_o;
};

struct CellRef {
    std::uint32_t row = 0;
    std::uint8_t slot = 0;  // 0 = left, 1 = right, 2 = output
    bool operator==(const CellRef&) const = default;
};

struct PlonkishSystem {
    std::vector<PlonkishRow> rows;
    /// Cells that must carry equal values because they share a circuit wire.
    std::vector<std::pair<CellRef, CellRef>> copy_constraints;
};

/// Per-row cell values (left, right, output).
struct PlonkishAssignment {
    std::vector<std::array<FieldElement, 3>> cells;
};

PlonkishSystem lower_to_plonkish(const Circuit& c);
PlonkishAssignment plonkish_assignment(const PlonkishSystem& system, const Circuit& c,
                                       const Witness& witness);
/// Row equations plus all copy constraints.
bool check_satisfied(const PlonkishSystem& system, const PlonkishAssignment& assignment);

std::string plonkish_to_json_text(const PlonkishSystem& system);

// ---------------------------------------------------------------------------

/// Smallest k with n <= 2^k. Rejects n = 0.
unsigned circuit_power(std::uint64_t num_constraints);

}  // namespace zklab
