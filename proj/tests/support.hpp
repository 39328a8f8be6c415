#pragma once

// Shared helpers for the test suites: small independent oracles and
// enumeration utilities. Everything here is deliberately naive; these
// routines cross-check the library, so they must not share its shortcuts.

#include "sfv/field.hpp"
#include "sfv/linalg.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace testsupport {

using sfv::FieldPtr;
using sfv::Matrix;
using sfv::Poly;
using sfv::Vec;

/// All monic polynomials of the given degree, coefficient codes counted up.
inline std::vector<Poly> all_monic(const FieldPtr& f, std::uint32_t degree) {
    std::vector<Poly> out;
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < degree; ++i) count *= f->size();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<std::uint32_t> c(degree + 1, 0);
        std::uint64_t v = idx;
        for (std::uint32_t i = 0; i < degree; ++i) {
            c[i] = static_cast<std::uint32_t>(v % f->size());
            v /= f->size();
        }
        c[degree] = 1;
        out.emplace_back(f, std::move(c));
    }
    return out;
}

/// Trial-division irreducibility: no monic divisor of degree 1..d/2.
inline bool irreducible_by_trial_division(const Poly& p) {
    const auto d = static_cast<std::uint32_t>(p.degree());
    for (std::uint32_t dd = 1; dd <= d / 2; ++dd) {
        for (const auto& q : all_monic(p.field(), dd)) {
            if (sfv::poly_mod(p, q).is_zero()) return false;
        }
    }
    return true;
}

/// Characteristic polynomial of a small matrix by Leibniz expansion of
/// det(xI - M) over the polynomial ring.
inline Poly char_poly_by_det(const Matrix& m) {
    const auto& f = m.field();
    const std::size_t k = m.rows();
    std::vector<std::vector<Poly>> entries(k, std::vector<Poly>(k, Poly(f)));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            std::vector<std::uint32_t> c{f->neg(m.at(i, j))};
            if (i == j) c.push_back(1);  // x on the diagonal
            entries[i][j] = Poly(f, c);
        }
    }
    std::vector<std::size_t> perm(k);
    for (std::size_t i = 0; i < k; ++i) perm[i] = i;
    Poly det(f);
    // permutation enumeration with explicit parity
    std::function<void(std::size_t, bool)> rec = [&](std::size_t pos, bool even) {
        if (pos == k) {
            Poly term = sfv::make_poly(f, {even ? 1u : f->neg(1)});
            for (std::size_t i = 0; i < k; ++i) term = sfv::poly_mul(term, entries[i][perm[i]]);
            det = sfv::poly_add(det, term);
            return;
        }
        for (std::size_t i = pos; i < k; ++i) {
            std::swap(perm[pos], perm[i]);
            rec(pos + 1, i == pos ? even : !even);
            std::swap(perm[pos], perm[i]);
        }
    };
    rec(0, true);
    return det;
}

/// All vectors of F_q^len in code order.
inline std::vector<Vec> all_vectors(const FieldPtr& f, std::size_t len) {
    std::vector<Vec> out;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < len; ++i) count *= f->size();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Vec v(len);
        std::uint64_t x = idx;
        for (std::size_t i = 0; i < len; ++i) {
            v[i] = static_cast<std::uint32_t>(x % f->size());
            x /= f->size();
        }
        out.push_back(std::move(v));
    }
    return out;
}

/// All linearly independent subsets of F_q^len \ {0} with size in
/// [min_size, max_size], as vectors of Vec.
inline std::vector<std::vector<Vec>> independent_subsets(const FieldPtr& f, std::size_t len,
                                                         std::size_t min_size,
                                                         std::size_t max_size) {
    auto vecs = all_vectors(f, len);
    vecs.erase(vecs.begin());  // drop zero
    std::vector<std::vector<Vec>> out;
    std::vector<Vec> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (cur.size() >= min_size) out.push_back(cur);
        if (cur.size() == max_size) return;
        for (std::size_t i = start; i < vecs.size(); ++i) {
            cur.push_back(vecs[i]);
            if (sfv::rank(Matrix(f, cur)) == cur.size()) rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

/// Exhaustive span of a set of rows (all q^rows combinations, zero included).
inline std::vector<Vec> span_of(const Matrix& basis) {
    std::vector<Vec> out;
    out.push_back(Vec(basis.cols(), 0));
    sfv::for_each_span_vector(basis, [&](const Vec& v) { out.push_back(v); });
    return out;
}

}  // namespace testsupport
