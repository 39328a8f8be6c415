#include "sfv/reed_solomon.hpp"

#include "sfv/linalg.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace sfv {

namespace {

void check_pairs(const FieldPtr& field, const std::vector<RSPair>& pairs, std::size_t ell) {
    if (pairs.size() < ell) throw std::invalid_argument("fewer pairs than the message length");
    std::set<std::uint32_t> seen;
    for (const auto& [g, y] : pairs) {
        if (g >= field->size() || y >= field->size()) {
            throw std::invalid_argument("pair value outside the field");
        }
        if (!seen.insert(g).second) throw std::invalid_argument("duplicate evaluation point");
    }
}

std::size_t agreement(const Poly& f, const std::vector<RSPair>& pairs) {
    std::size_t n = 0;
    for (const auto& [g, y] : pairs) {
        if (poly_eval_code(f, g) == y) ++n;
    }
    return n;
}

}  // namespace

RSInstance::RSInstance(FieldPtr f, std::size_t message_len, std::vector<std::uint32_t> pts)
    : field(std::move(f)), ell(message_len), points(std::move(pts)) {
    if (ell == 0) throw std::invalid_argument("message length must be positive");
    if (points.size() < ell) throw std::invalid_argument("need at least ell evaluation points");
    std::set<std::uint32_t> seen;
    for (auto g : points) {
        if (g == 0 || g >= field->size()) {
            throw std::invalid_argument("evaluation points must be nonzero field elements");
        }
        if (!seen.insert(g).second) throw std::invalid_argument("duplicate evaluation point");
    }
}

std::vector<std::uint32_t> rs_encode(const Poly& f, const RSInstance& inst) {
    if (!f.field()->same_as(*inst.field)) throw FieldMismatchError("message over a different field");
    if (f.degree() >= static_cast<int>(inst.ell)) {
        throw std::invalid_argument("message degree too large for this code");
    }
    std::vector<std::uint32_t> out;
    out.reserve(inst.points.size());
    for (auto g : inst.points) out.push_back(poly_eval_code(f, g));
    return out;
}

std::optional<Poly> rs_decode(const FieldPtr& field, const std::vector<RSPair>& pairs,
                              std::size_t ell) {
    check_pairs(field, pairs, ell);
    const std::size_t z = pairs.size();
    const std::size_t e = (z - ell) / 2;
    const std::size_t threshold = z - e;  // = ceil((z+ell)/2)

    // Berlekamp-Welch: find E (deg <= e) and N (deg <= ell+e-1), not both
    // zero, with y_i E(g_i) = N(g_i) for all i; then f = N / E.
    // Unknowns: E_0..E_e, N_0..N_{ell+e-1}.
    const std::size_t ne = e + 1, nn = ell + e, cols = ne + nn;
    Matrix sys(field, z, cols);
    for (std::size_t i = 0; i < z; ++i) {
        const auto [g, y] = pairs[i];
        std::uint32_t gp = 1;
        for (std::size_t j = 0; j < ne; ++j) {
            sys.at(i, j) = field->mul(y, gp);
            gp = field->mul(gp, g);
        }
        gp = 1;
        for (std::size_t j = 0; j < nn; ++j) {
            sys.at(i, ne + j) = field->neg(gp);
            gp = field->mul(gp, g);
        }
    }

    // one nonzero nullspace vector (free variable set to 1, pivots back-filled)
    auto res = rref(sys);
    if (res.rank == cols) return std::nullopt;  // only the trivial solution
    std::vector<bool> is_pivot(cols, false);
    for (auto c : res.pivot_cols) is_pivot[c] = true;
    std::size_t free_col = cols;
    for (std::size_t c = 0; c < cols; ++c) {
        if (!is_pivot[c]) free_col = c;  // take the last free column
    }
    Vec sol(cols, 0);
    sol[free_col] = 1;
    for (std::size_t i = 0; i < res.rank; ++i) {
        sol[res.pivot_cols[i]] = field->neg(res.mat.at(i, free_col));
    }

    Poly E(field, std::vector<std::uint32_t>(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(ne)));
    Poly N(field, std::vector<std::uint32_t>(sol.begin() + static_cast<std::ptrdiff_t>(ne), sol.end()));
    if (E.is_zero()) return std::nullopt;
    auto [f, rem] = poly_divmod(N, E);
    if (!rem.is_zero()) return std::nullopt;
    if (f.degree() >= static_cast<int>(ell)) return std::nullopt;
    if (agreement(f, pairs) < threshold) return std::nullopt;
    return f;
}

Poly interpolate(const FieldPtr& field, const std::vector<RSPair>& pairs) {
    Poly acc(field);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        // Lagrange basis polynomial for point i, scaled by y_i
        Poly num = make_poly(field, {1});
        std::uint32_t den = 1;
        for (std::size_t j = 0; j < pairs.size(); ++j) {
            if (j == i) continue;
            num = poly_mul(num, Poly(field, {field->neg(pairs[j].first), 1}));
            den = field->mul(den, field->sub(pairs[i].first, pairs[j].first));
        }
        acc = poly_add(acc, poly_scale(num, field->div(pairs[i].second, den)));
    }
    return acc;
}

std::optional<Poly> rs_decode_oracle(const FieldPtr& field, const std::vector<RSPair>& pairs,
                                     std::size_t ell) {
    check_pairs(field, pairs, ell);
    const std::size_t z = pairs.size();
    const std::size_t threshold = z - (z - ell) / 2;

    std::optional<Poly> found;
    std::vector<std::size_t> idx(ell);
    for (std::size_t i = 0; i < ell; ++i) idx[i] = i;
    while (true) {
        std::vector<RSPair> subset;
        subset.reserve(ell);
        for (auto i : idx) subset.push_back(pairs[i]);
        Poly cand = interpolate(field, subset);
        if (cand.degree() < static_cast<int>(ell) && agreement(cand, pairs) >= threshold) {
            if (!found || *found == cand) {
                found = cand;
            } else {
                return std::nullopt;  // two distinct candidates: not unique
            }
        }
        // next ell-combination of {0..z-1}
        std::size_t i = ell;
        while (i > 0 && idx[i - 1] == z - ell + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < ell; ++j) idx[j] = idx[j - 1] + 1;
    }
    return found;
}

}  // namespace sfv
