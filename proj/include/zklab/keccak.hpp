// Copyright 2026 The zklab Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "zklab/field.hpp"

namespace zklab {

/// Keccak-256 (original padding 0x01, as used by Ethereum).
std::array<std::uint8_t, 32> keccak256(const std::uint8_t* data, std::size_t len);
std::array<std::uint8_t, 32> keccak256(std::string_view s);

/// Deterministic mapping of an ASCII tag (plus a 64-bit seed) into the field:
/// a Keccak-256 counter chain with rejection sampling of the 256-bit
/// big-endian digest against p. Used for round constants, matrix seeds and
/// address/domain labels.
FieldElement field_from_tag(std::string_view tag, std::uint64_t seed);

}  // namespace zklab
