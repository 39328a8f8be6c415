#pragma once

#include "sfv/vault_pfv.hpp"
#include "sfv/vault_sfv.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace sfv {

enum class VaultIoErrorKind { MalformedJson, UnknownVersion, InvariantViolation };

struct VaultIoError : std::runtime_error {
    VaultIoError(VaultIoErrorKind k, const std::string& location, const std::string& what)
        : std::runtime_error(location.empty() ? what : location + ": " + what),
          kind(k),
          location(location) {}
    VaultIoErrorKind kind;
    std::string location;
};

const char* to_string(VaultIoErrorKind k);

/// Canonical JSON bytes: sorted keys, no insignificant whitespace, field
/// elements as integer coefficient arrays, digests as lowercase hex.
/// Identical vaults serialize to identical bytes on every platform.
std::string vault_serialize(const PfvVault& vault);
std::string vault_serialize(const SfvVault& vault);

using AnyVault = std::variant<PfvVault, SfvVault>;

/// Parses and fully revalidates a vault file (distinct first coordinates,
/// parameter consistency, coefficient ranges). Throws VaultIoError with the
/// offending location.
AnyVault vault_parse(const std::string& bytes);

/// One run's reproducibility knobs, expanded into per-purpose streams.
struct RunConfig {
    std::uint64_t seed = 0;
    std::uint64_t trial_budget = 100000;
    std::uint64_t enumeration_cap = 1ull << 16;
    std::string output_path;
};

}  // namespace sfv
