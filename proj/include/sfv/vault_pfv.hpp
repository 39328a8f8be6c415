#pragma once

#include "sfv/field.hpp"
#include "sfv/reed_solomon.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace sfv {

class Rng;

/// Classic polynomial fuzzy vault: the key polynomial kappa (degree < ell) is
/// hidden among r points. Authentic points evaluate kappa at the t enrolled
/// features; chaff points carry any other value. A witness close enough to
/// the enrolled set under the set-difference metric recovers kappa through
/// Reed-Solomon decoding of the matched points.
///
/// With r = q the vault is in the "simplified" model: every field element
/// appears as a first coordinate, witnesses have size exactly t, and the
/// tolerance is d_delta(A, W) <= t - ell. (When |W| = |A| = t the metric is
/// even while t - ell may be odd; the odd threshold is then simply never
/// attained.) With r < q, unlock applies the raw agreement condition of the
/// decoder instead.
struct PfvVault {
    FieldPtr field;
    std::size_t ell;  // key length
    std::size_t t;    // feature count
    std::size_t r;    // total points
    std::vector<std::pair<std::uint32_t, std::uint32_t>> points;  // shuffled (x, y)

    bool simplified() const { return r == field->size(); }
};

/// Locks `key` (degree < ell) under feature set A (|A| = t > ell, distinct).
/// Chaff first coordinates fill F_q \ A (all of it when r = q, otherwise a
/// random (r-t)-subset); chaff second coordinates are uniform over
/// F_q \ {key(x)}. Point order is shuffled.
PfvVault pfv_lock(const Poly& key, std::size_t ell, const std::vector<std::uint32_t>& features,
                  std::size_t r, Rng& rng);

/// Selects the vault points whose first coordinate lies in W and decodes.
/// In the simplified model |W| = t is enforced.
std::optional<Poly> pfv_unlock(const PfvVault& vault, const std::vector<std::uint32_t>& witness);

}  // namespace sfv
