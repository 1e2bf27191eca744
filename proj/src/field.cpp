// Copyright 2026 The zklab Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "zklab/field.hpp"

#include <numeric>
#include <stdexcept>

namespace zklab {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Limbs = std::array<u64, 4>;

// Little-endian limbs of p.
constexpr Limbs kModulus = {0x43e1f593f0000001ULL, 0x2833e84879b97091ULL,
                            0xb85045b68181585dULL, 0x30644e72e131a029ULL};
// R = 2^256 mod p.
constexpr Limbs kMontR = {0xac96341c4ffffffbULL, 0x36fc76959f60cd29ULL,
                          0x666ea36f7879462eULL, 0x0e0a77c19a07df2fULL};
// R^2 mod p.
constexpr Limbs kMontR2 = {0x1bb8e645ae216da7ULL, 0x53fe3ab1e35c59e3ULL,
                           0x8c49833d53bb8085ULL, 0x0216d0b17f4e44a5ULL};
// -p^-1 mod 2^64.
constexpr u64 kMontInv = 0xc2e1f593efffffffULL;

bool geq(const Limbs& a, const Limbs& b) {
    for (int i = 3; i >= 0; --i) {
        if (a[i] != b[i]) return a[i] > b[i];
    }
    return true;
}

void sub_in_place(Limbs& a, const Limbs& b) {
    u64 borrow = 0;
    for (int i = 0; i < 4; ++i) {
        u128 d = (u128)a[i] - b[i] - borrow;
        a[i] = (u64)d;
        borrow = (d >> 127) ? 1 : 0;
    }
}

Limbs add_mod(const Limbs& a, const Limbs& b) {
    Limbs r;
    u64 carry = 0;
    for (int i = 0; i < 4; ++i) {
        u128 s = (u128)a[i] + b[i] + carry;
        r[i] = (u64)s;
        carry = (u64)(s >> 64);
    }
    // a, b < p < 2^254 so the sum never carries out of four limbs.
    if (geq(r, kModulus)) sub_in_place(r, kModulus);
    return r;
}

Limbs sub_mod(const Limbs& a, const Limbs& b) {
    Limbs r = a;
    if (geq(a, b)) {
        sub_in_place(r, b);
        return r;
    }
    u64 carry = 0;
    for (int i = 0; i < 4; ++i) {
        u128 s = (u128)r[i] + kModulus[i] + carry;
        r[i] = (u64)s;
        carry = (u64)(s >> 64);
    }
    sub_in_place(r, b);
    return r;
}

// CIOS Montgomery multiplication: a*b*R^-1 mod p.
Limbs mont_mul(const Limbs& a, const Limbs& b) {
    u64 t[6] = {0, 0, 0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
        u64 carry = 0;
        for (int j = 0; j < 4; ++j) {
            u128 cur = (u128)a[i] * b[j] + t[j] + carry;
            t[j] = (u64)cur;
            carry = (u64)(cur >> 64);
        }
        u128 cur = (u128)t[4] + carry;
        t[4] = (u64)cur;
        t[5] = (u64)(cur >> 64);

        u64 m = t[0] * kMontInv;
        cur = (u128)m * kModulus[0] + t[0];
        carry = (u64)(cur >> 64);
        for (int j = 1; j < 4; ++j) {
            cur = (u128)m * kModulus[j] + t[j] + carry;
            t[j - 1] = (u64)cur;
            carry = (u64)(cur >> 64);
        }
        cur = (u128)t[4] + carry;
        t[3] = (u64)cur;
        t[4] = t[5] + (u64)(cur >> 64);
        t[5] = 0;
    }
    Limbs r = {t[0], t[1], t[2], t[3]};
    if (t[4] != 0 || geq(r, kModulus)) sub_in_place(r, kModulus);
    return r;
}

Limbs to_mont(const Limbs& canonical) { return mont_mul(canonical, kMontR2); }

Limbs from_mont(const Limbs& mont) { return mont_mul(mont, Limbs{1, 0, 0, 0}); }

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

FieldElement FieldElement::one() {
    FieldElement out;
    out.mont_ = kMontR;
    return out;
}

FieldElement FieldElement::from_u64(std::uint64_t v) {
    FieldElement out;
    out.mont_ = to_mont(Limbs{v, 0, 0, 0});
    return out;
}

FieldElement FieldElement::from_limbs(const std::array<std::uint64_t, 4>& canonical) {
    if (geq(canonical, kModulus))
        throw std::out_of_range("field: value out of range (>= modulus)");
    FieldElement out;
    out.mont_ = to_mont(canonical);
    return out;
}

FieldElement FieldElement::from_bytes(const std::array<std::uint8_t, 32>& be) {
    Limbs limbs = {0, 0, 0, 0};
    for (int i = 0; i < 32; ++i) {
        limbs[3 - i / 8] |= (u64)be[i] << (8 * (7 - i % 8));
    }
    return from_limbs(limbs);
}

FieldElement FieldElement::from_hex(std::string_view hex) {
    if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X'))
        hex.remove_prefix(2);
    if (hex.empty() || hex.size() > 64)
        throw std::invalid_argument("field: hex string must be 1..64 nibbles");
    Limbs limbs = {0, 0, 0, 0};
    for (std::size_t i = 0; i < hex.size(); ++i) {
        int nib = hex_nibble(hex[hex.size() - 1 - i]);
        if (nib < 0) throw std::invalid_argument("field: invalid hex character");
        std::size_t bit = i * 4;
        limbs[bit / 64] |= (u64)nib << (bit % 64);
    }
    return from_limbs(limbs);
}

const std::array<std::uint64_t, 4>& FieldElement::modulus_limbs() {
    static const std::array<std::uint64_t, 4> m = kModulus;
    return m;
}

std::string FieldElement::modulus_hex() {
    static const char* digits = "0123456789abcdef";
    std::string s = "0x";
    for (int i = 3; i >= 0; --i)
        for (int n = 15; n >= 0; --n) s.push_back(digits[(kModulus[i] >> (n * 4)) & 0xf]);
    return s;
}

std::array<std::uint64_t, 4> FieldElement::to_limbs() const { return from_mont(mont_); }

std::array<std::uint8_t, 32> FieldElement::to_bytes() const {
    Limbs limbs = from_mont(mont_);
    std::array<std::uint8_t, 32> out{};
    for (int i = 0; i < 32; ++i) {
        out[i] = (std::uint8_t)(limbs[3 - i / 8] >> (8 * (7 - i % 8)));
    }
    return out;
}

std::string FieldElement::to_hex() const {
    static const char* digits = "0123456789abcdef";
    auto bytes = to_bytes();
    std::string s = "0x";
    s.reserve(66);
    for (auto b : bytes) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xf]);
    }
    return s;
}

FieldElement FieldElement::operator+(const FieldElement& rhs) const {
    FieldElement out;
    out.mont_ = add_mod(mont_, rhs.mont_);
    return out;
}

FieldElement FieldElement::operator-(const FieldElement& rhs) const {
    FieldElement out;
    out.mont_ = sub_mod(mont_, rhs.mont_);
    return out;
}

FieldElement FieldElement::operator*(const FieldElement& rhs) const {
    FieldElement out;
    out.mont_ = mont_mul(mont_, rhs.mont_);
    return out;
}

FieldElement FieldElement::operator-() const {
    if (is_zero()) return *this;
    FieldElement out;
    out.mont_ = kModulus;
    sub_in_place(out.mont_, mont_);
    return out;
}

FieldElement FieldElement::pow(std::uint64_t e) const {
    if (e == 0) throw std::domain_error("field: pow exponent must be >= 1");
    switch (e) {
        case 1:
            return *this;
        case 2:
            return square();
        case 3:
            return square() * *this;  // x^2, x^3
        case 5: {
            FieldElement x2 = square();
            FieldElement x4 = x2.square();
            return x4 * *this;  // x^2, x^4, x^5
        }
        case 7: {
            FieldElement x2 = square();
            FieldElement x4 = x2.square();
            FieldElement x6 = x4 * x2;
            return x6 * *this;  // x^2, x^4, x^6, x^7
        }
        default: {
            FieldElement acc = FieldElement::one();
            FieldElement base = *this;
            while (e > 0) {
                if (e & 1) acc *= base;
                base = base.square();
                e >>= 1;
            }
            return acc;
        }
    }
}

FieldElement FieldElement::inv() const {
    if (is_zero()) throw std::domain_error("field: inverse of zero");
    // Fermat: a^(p-2).
    Limbs e = kModulus;
    u64 borrow = 2;
    for (int i = 0; i < 4 && borrow; ++i) {
        u64 before = e[i];
        e[i] -= borrow;
        borrow = before < borrow ? 1 : 0;
    }
    FieldElement acc = FieldElement::one();
    FieldElement base = *this;
    for (int limb = 0; limb < 4; ++limb) {
        for (int bit = 0; bit < 64; ++bit) {
            if ((e[limb] >> bit) & 1) acc *= base;
            base = base.square();
        }
    }
    return acc;
}

std::size_t FieldElement::Hasher::operator()(const FieldElement& x) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (u64 limb : x.mont_) {
        h ^= limb;
        h *= 0x100000001b3ULL;
    }
    return (std::size_t)h;
}

std::size_t sbox_chain_multiplications(unsigned d) {
    switch (d) {
        case 1:
            return 0;
        case 2:
            return 1;
        case 3:
            return 2;
        case 5:
            return 3;
        case 7:
            return 4;
        default: {
            std::size_t n = 0;
            unsigned e = d;
            while (e > 1) {
                n += 1 + (e & 1);
                e >>= 1;
            }
            return n;
        }
    }
}

bool exponent_is_bijective(unsigned d) {
    if (d == 0) return false;
    // (p - 1) mod d, folding limbs most-significant first.
    Limbs pm1 = kModulus;
    pm1[0] -= 1;  // p is odd, no borrow
    u64 rem = 0;
    for (int i = 3; i >= 0; --i) {
        u128 cur = ((u128)rem << 64) | pm1[i];
        rem = (u64)(cur % d);
    }
    return std::gcd((u64)d, rem) == 1;
}

std::string to_hex(const FieldElement& x) { return x.to_hex(); }

}  // namespace zklab
