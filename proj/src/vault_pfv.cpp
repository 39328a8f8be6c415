#include "sfv/vault_pfv.hpp"

#include "sfv/rng.hpp"

#include <set>
#include <stdexcept>

namespace sfv {

PfvVault pfv_lock(const Poly& key, std::size_t ell, const std::vector<std::uint32_t>& features,
                  std::size_t r, Rng& rng) {
    const auto& field = key.field();
    const std::uint64_t q = field->size();
    const std::size_t t = features.size();

    if (ell == 0) throw std::invalid_argument("key length must be positive");
    if (key.degree() >= static_cast<int>(ell)) {
        throw std::invalid_argument("key degree too large for the stated key length");
    }
    std::set<std::uint32_t> feature_set(features.begin(), features.end());
    if (feature_set.size() != t) throw std::invalid_argument("duplicate feature");
    for (auto x : features) {
        if (x >= q) throw std::invalid_argument("feature outside the field");
    }
    if (t <= ell) throw std::invalid_argument("need more features than key coefficients");
    if (r <= t) throw std::invalid_argument("vault size must exceed the feature count");
    if (r > q) throw std::invalid_argument("vault size cannot exceed the field size");

    PfvVault vault;
    vault.field = field;
    vault.ell = ell;
    vault.t = t;
    vault.r = r;

    for (auto x : features) vault.points.emplace_back(x, poly_eval_code(key, x));

    // chaff first coordinates: all of F_q \ A when r = q, else a random subset
    std::vector<std::uint32_t> pool;
    for (std::uint32_t x = 0; x < q; ++x) {
        if (!feature_set.count(x)) pool.push_back(x);
    }
    Rng chaff_rng = rng.derive("pfv.chaff");
    if (r < q) {
        chaff_rng.shuffle(pool);
        pool.resize(r - t);
    }
    for (auto x : pool) {
        const std::uint32_t authentic_y = poly_eval_code(key, x);
        std::uint32_t y = static_cast<std::uint32_t>(chaff_rng.uniform_below(q - 1));
        if (y >= authentic_y) ++y;  // uniform over F_q \ {key(x)}
        vault.points.emplace_back(x, y);
    }

    Rng shuffle_rng = rng.derive("pfv.shuffle");
    shuffle_rng.shuffle(vault.points);
    return vault;
}

std::optional<Poly> pfv_unlock(const PfvVault& vault, const std::vector<std::uint32_t>& witness) {
    std::set<std::uint32_t> wset(witness.begin(), witness.end());
    if (wset.size() != witness.size()) throw std::invalid_argument("duplicate witness feature");
    for (auto x : witness) {
        if (x >= vault.field->size()) throw std::invalid_argument("witness feature outside the field");
    }
    if (vault.simplified() && witness.size() != vault.t) {
        throw std::invalid_argument("simplified-model witness must have exactly t features");
    }

    std::vector<RSPair> selected;
    for (const auto& [x, y] : vault.points) {
        if (wset.count(x)) selected.emplace_back(x, y);
    }
    if (selected.size() < vault.ell) return std::nullopt;
    return rs_decode(vault.field, selected, vault.ell);
}

}  // namespace sfv
