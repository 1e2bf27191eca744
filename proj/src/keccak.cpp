// Copyright 2026 The zklab Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "zklab/keccak.hpp"

#include <cstring>

namespace zklab {
namespace {

constexpr std::uint64_t kRoundConstants[24] = {
    0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
    0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
    0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
    0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
    0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
    0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
    0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
    0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL};

constexpr int kRotations[24] = {1,  3,  6,  10, 15, 21, 28, 36, 45, 55, 2,  14,
                                27, 41, 56, 8,  25, 43, 62, 18, 39, 61, 20, 44};

constexpr int kPiLanes[24] = {10, 7,  11, 17, 18, 3, 5,  16, 8,  21, 24, 4,
                              15, 23, 19, 13, 12, 2, 20, 14, 22, 9,  6,  1};

inline std::uint64_t rotl(std::uint64_t x, int n) {
    return (x << n) | (x >> (64 - n));
}

void keccak_f1600(std::uint64_t st[25]) {
    for (int round = 0; round < 24; ++round) {
        // theta
        std::uint64_t bc[5];
        for (int i = 0; i < 5; ++i)
            bc[i] = st[i] ^ st[i + 5] ^ st[i + 10] ^ st[i + 15] ^ st[i + 20];
        for (int i = 0; i < 5; ++i) {
            std::uint64_t t = bc[(i + 4) % 5] ^ rotl(bc[(i + 1) % 5], 1);
            for (int j = 0; j < 25; j += 5) st[j + i] ^= t;
        }
        // rho + pi
        std::uint64_t t = st[1];
        for (int i = 0; i < 24; ++i) {
            int j = kPiLanes[i];
            std::uint64_t tmp = st[j];
            st[j] = rotl(t, kRotations[i]);
            t = tmp;
        }
        // chi
        for (int j = 0; j < 25; j += 5) {
            std::uint64_t row[5];
            for (int i = 0; i < 5; ++i) row[i] = st[j + i];
            for (int i = 0; i < 5; ++i)
                st[j + i] = row[i] ^ (~row[(i + 1) % 5] & row[(i + 2) % 5]);
        }
        // iota
        st[0] ^= kRoundConstants[round];
    }
}

}  // namespace

std::array<std::uint8_t, 32> keccak256(const std::uint8_t* data, std::size_t len) {
    constexpr std::size_t rate = 136;  // 1088-bit rate for 256-bit output
    std::uint64_t st[25] = {0};
    auto* bytes = reinterpret_cast<std::uint8_t*>(st);

    while (len >= rate) {
        for (std::size_t i = 0; i < rate; ++i) bytes[i] ^= data[i];
        keccak_f1600(st);
        data += rate;
        len -= rate;
    }
    for (std::size_t i = 0; i < len; ++i) bytes[i] ^= data[i];
    bytes[len] ^= 0x01;
    bytes[rate - 1] ^= 0x80;
    keccak_f1600(st);

    std::array<std::uint8_t, 32> out;
    std::memcpy(out.data(), bytes, 32);
    return out;
}

std::array<std::uint8_t, 32> keccak256(std::string_view s) {
    return keccak256(reinterpret_cast<const std::uint8_t*>(s.data()), s.size());
}

FieldElement field_from_tag(std::string_view tag, std::uint64_t seed) {
    std::array<std::uint8_t, 32> modulus_be{};
    const auto& m = FieldElement::modulus_limbs();
    for (int i = 0; i < 32; ++i)
        modulus_be[i] = (std::uint8_t)(m[3 - i / 8] >> (8 * (7 - i % 8)));

    std::vector<std::uint8_t> buf(tag.begin(), tag.end());
    for (int i = 7; i >= 0; --i) buf.push_back((std::uint8_t)(seed >> (8 * i)));
    auto digest = keccak256(buf.data(), buf.size());
    // Rejection-sample until the digest lands below p (roughly 3 in 4 draws).
    while (!(digest < modulus_be)) digest = keccak256(digest.data(), digest.size());
    return FieldElement::from_bytes(digest);
}

}  // namespace zklab
