#pragma once

#include "sfv/field.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace sfv {

/// Evaluation-style Reed-Solomon code: messages are polynomials of degree
/// < ell, codewords their values at z distinct nonzero points.
struct RSInstance {
    FieldPtr field;
    std::size_t ell;
    std::vector<std::uint32_t> points;  // pairwise distinct, nonzero

    RSInstance(FieldPtr f, std::size_t message_len, std::vector<std::uint32_t> pts);

    std::size_t length() const { return points.size(); }
    /// Largest number of corrupt positions unique decoding can repair.
    std::size_t error_capacity() const { return (points.size() - ell) / 2; }
};

/// (f(g_1), ..., f(g_z)); deg f < ell required.
std::vector<std::uint32_t> rs_encode(const Poly& f, const RSInstance& inst);

using RSPair = std::pair<std::uint32_t, std::uint32_t>;  // (g_i, y_i)

/// Unique decoding (Berlekamp-Welch): returns the polynomial of degree < ell
/// agreeing with at least ceil((z+ell)/2) of the z pairs when one exists.
std::optional<Poly> rs_decode(const FieldPtr& field, const std::vector<RSPair>& pairs,
                              std::size_t ell);

/// Independent reference decoder: interpolates every ell-subset of the pairs
/// and keeps the candidate meeting the agreement threshold. Exponential in z;
/// test use only.
std::optional<Poly> rs_decode_oracle(const FieldPtr& field, const std::vector<RSPair>& pairs,
                                     std::size_t ell);

/// Lagrange interpolation through exactly the given points (distinct g_i).
Poly interpolate(const FieldPtr& field, const std::vector<RSPair>& pairs);

}  // namespace sfv
