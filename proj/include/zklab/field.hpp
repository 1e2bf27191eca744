// Copyright 2026 The zklab Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace zklab {

/// Element of the BN254 scalar field
///   p = 21888242871839275222246405745257275088548364400416034343698204186575808495617.
///
/// The observable value is always the canonical residue in [0, p). Internally
/// elements are kept in Montgomery form (R = 2^256); the representation never
/// leaks through the public surface. All operations are pure and the type is
/// an immutable value, safe to share across threads.
class FieldElement {
public:
    static constexpr std::size_t kByteLength = 32;
    /// Identifier of the one prime this artifact is built around. A second
    /// modulus would be a distinct C++ type, so mixed-modulus arithmetic is
    /// ruled out at compile time rather than by a runtime check.
    static constexpr std::string_view kModulusId = "bn254-scalar";

    constexpr FieldElement() : mont_{0, 0, 0, 0} {}

    static FieldElement zero() { return FieldElement(); }
    static FieldElement one();

    static FieldElement from_u64(std::uint64_t v);
    /// Canonical little-endian limbs, strict: input must be < p.
    static FieldElement from_limbs(const std::array<std::uint64_t, 4>& canonical);
    /// 32-byte big-endian encoding, strict: values >= p are rejected, never
    /// silently reduced.
    static FieldElement from_bytes(const std::array<std::uint8_t, 32>& be);
    /// Hex string of up to 64 nibbles, optionally 0x-prefixed.
    static FieldElement from_hex(std::string_view hex);

    static const std::array<std::uint64_t, 4>& modulus_limbs();
    static std::string modulus_hex();

    std::array<std::uint64_t, 4> to_limbs() const;
    std::array<std::uint8_t, 32> to_bytes() const;
    std::string to_hex() const;  // 0x-prefixed, fixed 64 nibbles

    bool is_zero() const { return mont_[0] == 0 && mont_[1] == 0 && mont_[2] == 0 && mont_[3] == 0; }

    FieldElement operator+(const FieldElement& rhs) const;
    FieldElement operator-(const FieldElement& rhs) const;
    FieldElement operator*(const FieldElement& rhs) const;
    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& rhs) { return *this = *this + rhs; }
    FieldElement& operator-=(const FieldElement& rhs) { return *this = *this - rhs; }
    FieldElement& operator*=(const FieldElement& rhs) { return *this = *this * rhs; }

    FieldElement square() const { return *this * *this; }

    /// a^e for e >= 1. Exponents 3, 5 and 7 use the fixed addition chains the
    /// arithmetization module counts constraints with (2, 3 and 4
    /// multiplications); other exponents fall back to square-and-multiply.
    /// e = 0 is rejected.
    FieldElement pow(std::uint64_t e) const;

    /// Multiplicative inverse; rejects zero.
    FieldElement inv() const;

    bool operator==(const FieldElement& rhs) const { return mont_ == rhs.mont_; }
    bool operator!=(const FieldElement& rhs) const { return mont_ != rhs.mont_; }

    struct Hasher {
        std::size_t operator()(const FieldElement& x) const;
    };

private:
    std::array<std::uint64_t, 4> mont_;
};

/// Multiplications in the fixed addition chain for x^d (d in {2,3,5,7}; other
/// exponents use the square-and-multiply count). Normative for constraint
/// accounting.
std::size_t sbox_chain_multiplications(unsigned d);

/// gcd(d, p-1) == 1, i.e. x -> x^d permutes the field.
bool exponent_is_bijective(unsigned d);

std::string to_hex(const FieldElement& x);

}  // namespace zklab
