#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace sfv {

using Sha256Digest = std::array<std::uint8_t, 32>;

Sha256Digest sha256(const std::uint8_t* data, std::size_t len);
Sha256Digest sha256(const std::vector<std::uint8_t>& data);

std::string hex_encode(const Sha256Digest& d);

}  // namespace sfv
