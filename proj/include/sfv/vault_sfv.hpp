#pragma once

#include "sfv/hash.hpp"
#include "sfv/linalg.hpp"
#include "sfv/spread.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sfv {

class Rng;

/// Feature handling of a subspace vault.
///   Strict:  exactly k linearly independent features; chaff first
///            coordinates are all of F_q^k \ A (the zero vector included).
///   Relaxed: t features anywhere in F_q^k (t >= k typical, dependencies
///            allowed); chaff first coordinates are a random subset of the
///            complement.
///   Hashed:  first coordinates are stored as SHA-256 digests instead of raw
///            features; feature rules follow Strict when t = k and the
///            features are independent, Relaxed otherwise.
enum class SfvMode { Strict, Relaxed, Hashed };

const char* to_string(SfvMode mode);
SfvMode sfv_mode_from_string(const std::string& s);

struct SfvPoint {
    Vec x;               // feature; empty in hashed vaults
    std::string digest;  // lowercase hex SHA-256 of x; hashed vaults only
    Vec y;               // second coordinate in F_q^n
};

/// The vault: shuffled authentic and chaff points. The secret row basis
/// kappa used at lock time is never stored; unlocking recovers the canonical
/// (RREF) codeword, independent of which basis was sampled.
struct SfvVault {
    SpreadCodePtr code;
    SfvMode mode = SfvMode::Strict;
    std::size_t t = 0;  // feature count
    std::size_t r = 0;  // total points
    std::vector<SfvPoint> points;

    bool hashed() const { return mode == SfvMode::Hashed; }
};

/// The decommitted secret: a codeword of the configured code, canonical by
/// its RREF basis.
using SfvKey = Codeword;

/// SHA-256 over the canonical byte encoding of a feature vector:
/// per coordinate, the element's coefficients low-to-high, each coefficient
/// big-endian in the minimal width that holds p-1.
Sha256Digest feature_hash(const FieldPtr& field, const Vec& x);

/// Lock-time artifacts retained for tests and diagnostics: the sampled
/// secret basis and the enrolled features. Never serialized.
struct SfvLockTrace {
    SfvVault vault;
    SfvKey key;
    Matrix kappa;  // k x n, rowsp = key subspace
    std::vector<Vec> features;
};

/// Hides `key` under the feature set. A secret basis kappa of the key
/// subspace is sampled uniformly, authentic points are (x, x kappa), chaff
/// second coordinates avoid the key subspace, and the point order is
/// shuffled. In strict mode the chaff cosets modulo the key subspace follow
/// an injective linear image of the chaff features, so any independent
/// witness spans a subspace meeting the key exactly in its authentic part;
/// unlock outcomes then depend only on the set difference between enrolled
/// and witness features. Relaxed-mode chaff is uniform over the complement
/// of the key subspace.
///
/// `r` is the total point count; pass 0 for the mode default (strict: q^k).
SfvLockTrace sfv_lock_traced(const SpreadCodePtr& code, const SfvKey& key,
                             const std::vector<Vec>& features, SfvMode mode, std::size_t r,
                             Rng& rng);
SfvVault sfv_lock(const SpreadCodePtr& code, const SfvKey& key, const std::vector<Vec>& features,
                  SfvMode mode, std::size_t r, Rng& rng);

struct WitnessSpan {
    Subspace space;
    std::size_t matched;  // vault points whose first coordinate was in W
};

/// Span of the second coordinates of the vault points matching W.
/// Throws when nothing matches.
WitnessSpan build_witness_subspace(const SfvVault& vault, const std::vector<Vec>& witness);

struct SfvUnlockResult {
    std::optional<SfvKey> key;
    std::size_t matched = 0;
    std::size_t witness_dim = 0;
    /// dim(W') fell short of |W|; surfaced, never assumed away.
    bool dim_deficit = false;
};

/// Strict vaults require an independent witness of size <= k; relaxed and
/// hashed vaults accept any set of distinct features.
SfvUnlockResult sfv_unlock(const SfvVault& vault, const std::vector<Vec>& witness);

/// Diagnostics relating the set-difference and subspace metrics for one
/// witness against a traced vault, with the slack terms
///   x = |W| - dim(W')         (span deficit)
///   y = |A∩W| - rank(A∩W)     (dependent shared features)
/// and the bounds d_delta - (t-k) - x <= d_S <= d_delta - (t-k) + 2y.
struct DistanceReport {
    std::size_t d_delta = 0;
    std::size_t d_s = 0;
    long t_minus_k = 0;
    std::size_t x_slack = 0;
    std::size_t y_slack = 0;
    long lower = 0;  // d_delta - (t-k) - x
    long upper = 0;  // d_delta - (t-k) + 2y
    bool within = false;
    /// Lower bound fell below zero (always slack there, since d_S >= 0).
    bool lower_clamped = false;
};

DistanceReport sfv_distance_report(const SfvLockTrace& trace, const std::vector<Vec>& witness);

}  // namespace sfv
