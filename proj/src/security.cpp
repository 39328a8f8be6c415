#include "sfv/security.hpp"

#include "sfv/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace sfv {

BigInt count_rank_matrices(std::uint64_t q, std::uint32_t k, std::uint32_t delta,
                           std::uint32_t n) {
    if (q < 2) throw std::invalid_argument("field size must be at least 2");
    if (k > std::min(delta, n)) throw std::invalid_argument("rank exceeds matrix dimensions");
    const BigInt Q(q);
    const BigInt qn = big_pow(Q, n), qd = big_pow(Q, delta), qk = big_pow(Q, k);
    BigInt num = 1, den = 1;
    BigInt qi = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        num *= (qn - qi) * (qd - qi);
        den *= (qk - qi);
        qi *= Q;
    }
    BigInt quot, rem;
    boost::multiprecision::divide_qr(num, den, quot, rem);
    if (rem != 0) throw std::logic_error("rank count division not exact");
    return quot;
}

BigRat rank_full_probability(std::uint64_t q, std::uint32_t k, std::uint32_t t) {
    if (t < k) throw std::invalid_argument("need at least k vectors to reach rank k");
    return BigRat(count_rank_matrices(q, k, t, k), big_pow(BigInt(q), std::uint64_t(k) * t));
}

BigRat expected_spanning_subsets(std::uint64_t q, std::uint32_t k, std::uint32_t delta,
                                 std::uint32_t n, std::uint64_t r) {
    if (delta < k) throw std::invalid_argument("subset size below the target rank");
    if (r <= delta) throw std::invalid_argument("need more points than the subset size");
    const BigInt ways = binomial(r, delta);
    return BigRat(ways * count_rank_matrices(q, k, delta, n),
                  big_pow(BigInt(q), std::uint64_t(delta) * n));
}

std::optional<std::uint32_t> find_delta0(std::uint64_t q, std::uint32_t k, std::uint32_t n,
                                         std::uint64_t r, std::uint32_t t) {
    if (r < t || t < k) throw std::invalid_argument("need r >= t >= k");
    const auto hi = static_cast<std::uint32_t>(std::min<std::uint64_t>(t, r - 1));
    for (std::uint32_t delta = k; delta <= hi; ++delta) {
        if (expected_spanning_subsets(q, k, delta, n, r) < 1) return delta;
    }
    return std::nullopt;
}

BruteForceCost brute_force_cost(std::uint64_t q, std::uint32_t k, std::uint32_t n,
                                std::uint64_t r, std::uint32_t t) {
    if (q != 2) throw std::invalid_argument("cost model covers binary fields only");
    const auto d0 = find_delta0(q, k, n, r, t);
    if (!d0) throw std::invalid_argument("no delta0 with alpha < 1 at these parameters");
    BruteForceCost c;
    c.delta0 = *d0;
    c.ops_per_trial = 0.55 * n * (static_cast<double>(*d0) * *d0 - *d0);
    BigRat guesses = 1;
    const BigRat rt{BigInt(r), BigInt(t)};
    for (std::uint32_t i = 0; i < *d0; ++i) guesses *= rt;
    c.total = c.ops_per_trial * to_double(guesses);
    return c;
}

BinomialHeuristic binomial_growth_heuristic(std::uint64_t r, std::uint64_t t,
                                            std::uint32_t delta) {
    BinomialHeuristic h;
    h.lhs = BigRat(binomial(r, delta), binomial(t, delta));
    h.rhs = 1.1 * std::pow(static_cast<double>(r) / static_cast<double>(t), delta);
    h.holds = to_double(h.lhs) < h.rhs;
    return h;
}

SecurityReport analyze_parameters(std::uint64_t q, std::uint32_t k, std::uint32_t n,
                                  std::uint64_t r, std::uint32_t t, bool sweep) {
    if (k == 0 || n % k != 0) throw std::invalid_argument("k must divide n");
    SecurityReport rep;
    rep.q = q;
    rep.k = k;
    rep.n = n;
    rep.r = r;
    rep.t = t;
    rep.key_space = (big_pow(BigInt(q), n) - 1) / (big_pow(BigInt(q), k) - 1);
    rep.key_space_log2 = log2_big(rep.key_space);
    rep.delta0 = find_delta0(q, k, n, r, t);
    if (rep.delta0) {
        rep.alpha_at_delta0 = expected_spanning_subsets(q, k, *rep.delta0, n, r);
        if (q == 2) rep.cost = brute_force_cost(q, k, n, r, t);
    }
    rep.naive_rank_ops = BigInt(n) * (BigInt(k) * k - k);
    if (q == 2) rep.naive_rank_ops /= 2;
    if (sweep) {
        for (std::uint32_t delta = k; delta <= t; ++delta) {
            rep.sweep.push_back({delta, expected_spanning_subsets(q, k, delta, n, r)});
        }
    }
    return rep;
}

AttackInstance attack_instance_from_trace(const SfvLockTrace& trace) {
    AttackInstance inst;
    inst.code = trace.vault.code;
    inst.t = trace.vault.t;
    inst.true_key = trace.key;

    std::set<std::string> digests;
    std::set<Vec> raw;
    const auto& field = trace.vault.code->field();
    for (const auto& x : trace.features) {
        if (trace.vault.hashed()) {
            digests.insert(hex_encode(feature_hash(field, x)));
        } else {
            raw.insert(x);
        }
    }
    std::vector<bool> truth;
    for (const auto& pt : trace.vault.points) {
        inst.ys.push_back(pt.y);
        truth.push_back(trace.vault.hashed() ? digests.count(pt.digest) > 0
                                             : raw.count(pt.x) > 0);
    }
    inst.authentic = std::move(truth);
    return inst;
}

AttackInstance attack_instance_from_vault(const SfvVault& vault) {
    AttackInstance inst;
    inst.code = vault.code;
    inst.t = vault.t;
    for (const auto& pt : vault.points) inst.ys.push_back(pt.y);
    return inst;
}

AttackInstance synth_attack_instance(const SpreadCodePtr& code, const std::vector<Vec>& features,
                                     std::size_t r, Rng& rng) {
    const auto& field = code->field();
    const std::size_t n = code->ambient();
    const std::size_t t = features.size();
    if (r < t) throw std::invalid_argument("instance size below the authentic count");

    Rng key_rng = rng.derive("attack.key");
    Rng chaff_rng = rng.derive("attack.chaff");
    Rng shuffle_rng = rng.derive("attack.shuffle");

    const Codeword key = code->random_codeword(key_rng);
    const Matrix T = random_invertible(code->block_dim(), field, key_rng);
    const Matrix kappa = T * key.space.basis();

    std::vector<std::pair<Vec, bool>> pts;
    for (const auto& x : features) pts.emplace_back(row_times(x, kappa), true);
    for (std::size_t i = t; i < r; ++i) {
        Vec y;
        do {
            y = Vec(n);
            for (auto& c : y) c = field->random_code(chaff_rng);
        } while (key.space.contains(y));
        pts.emplace_back(std::move(y), false);
    }
    shuffle_rng.shuffle(pts);

    AttackInstance inst;
    inst.code = code;
    inst.t = t;
    inst.true_key = key;
    std::vector<bool> truth;
    for (auto& [y, is_auth] : pts) {
        inst.ys.push_back(std::move(y));
        truth.push_back(is_auth);
    }
    inst.authentic = std::move(truth);
    return inst;
}

AttackStats simulate_subset_attack(const AttackInstance& inst, std::uint32_t delta,
                                   std::uint64_t max_trials, std::uint64_t seed,
                                   std::uint64_t target_successes) {
    const auto& code = inst.code;
    const auto& field = code->field();
    const std::size_t r = inst.ys.size();
    const std::uint32_t k = code->block_dim();
    if (delta == 0 || delta > r) throw std::invalid_argument("subset size out of range");

    AttackStats stats;
    stats.scored_against_truth = inst.authentic.has_value() && inst.true_key.has_value();
    if (inst.t >= delta) {
        const double predicted =
            to_double(BigRat(binomial(r, delta), binomial(inst.t, delta)));
        stats.predicted_mean = predicted;
    }

    const Rng master(seed);
    std::vector<std::size_t> indices(r);
    for (std::uint64_t trial = 0; trial < max_trials; ++trial) {
        Rng trng = master.derive("attack.trial", trial);
        for (std::size_t i = 0; i < r; ++i) indices[i] = i;
        for (std::uint32_t i = 0; i < delta; ++i) {
            const std::size_t j = i + trng.uniform_below(r - i);
            std::swap(indices[i], indices[j]);
        }
        ++stats.trials;

        bool mixed = false;
        if (inst.authentic) {
            for (std::uint32_t i = 0; i < delta; ++i) {
                if (!(*inst.authentic)[indices[i]]) {
                    mixed = true;
                    break;
                }
            }
            if (mixed) ++stats.mixed_trials;
        }

        Matrix m(field, delta, code->ambient());
        for (std::uint32_t i = 0; i < delta; ++i) m.set_row(i, inst.ys[indices[i]]);
        auto reduced = rref(m);
        if (reduced.rank != k) continue;
        ++stats.rank_passes;
        if (mixed) ++stats.mixed_rank_passes;

        Matrix basis(field, k, code->ambient());
        for (std::uint32_t i = 0; i < k; ++i) basis.set_row(i, reduced.mat.row(i));
        const Subspace span = Subspace::from_rows(basis);
        const auto decoded = code->decode(span, DecodeAlgorithm::Vote);
        if (!decoded) continue;

        const bool recovered =
            stats.scored_against_truth ? (*decoded == *inst.true_key) : true;
        if (recovered) {
            if (span == decoded->space) {
                ++stats.successes;
                if (target_successes && stats.successes >= target_successes) break;
            } else {
                ++stats.windfall_successes;
            }
        }
    }

    if (stats.successes > 0) {
        stats.mean_trials_to_success =
            static_cast<double>(stats.trials) / static_cast<double>(stats.successes);
        if (stats.predicted_mean) {
            stats.ratio = stats.mean_trials_to_success / *stats.predicted_mean;
        }
    } else {
        stats.budget_exhausted = true;
    }
    return stats;
}

LindepResult linear_dependency_attack(const SfvVault& vault) {
    LindepResult res;
    if (vault.hashed()) {
        res.applicable = false;
        return res;
    }
    const auto& field = vault.code->field();
    const std::uint64_t q = field->size();
    const std::size_t r = vault.points.size();
    if (r * r * (q - 1) * (q - 1) > 100'000'000ull) {
        throw std::invalid_argument("vault too large for the pairwise dependency scan");
    }

    std::map<Vec, std::size_t> index;
    for (std::size_t i = 0; i < r; ++i) index[vault.points[i].x] = i;

    // scalar multiples: x_j = c x_i
    for (std::size_t i = 0; i < r; ++i) {
        const Vec& xi = vault.points[i].x;
        if (vec_is_zero(xi)) continue;
        for (std::uint32_t c = 2; c < q; ++c) {
            const Vec target = vec_scale(field, xi, c);
            auto it = index.find(target);
            if (it == index.end() || it->second == i) continue;
            const std::size_t j = it->second;
            if (vault.points[j].y == vec_scale(field, vault.points[i].y, c)) {
                res.findings.push_back({j, {i}, {c}});
            }
        }
    }

    // two-point combinations: x_m = c_i x_i + c_j x_j
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i + 1; j < r; ++j) {
            for (std::uint32_t ci = 1; ci < q; ++ci) {
                for (std::uint32_t cj = 1; cj < q; ++cj) {
                    const Vec target = vec_add(field, vec_scale(field, vault.points[i].x, ci),
                                               vec_scale(field, vault.points[j].x, cj));
                    auto it = index.find(target);
                    if (it == index.end() || it->second == i || it->second == j) continue;
                    const std::size_t m = it->second;
                    const Vec combo = vec_add(field, vec_scale(field, vault.points[i].y, ci),
                                              vec_scale(field, vault.points[j].y, cj));
                    if (vault.points[m].y == combo) {
                        res.findings.push_back({m, {i, j}, {ci, cj}});
                    }
                }
            }
        }
    }
    return res;
}

}  // namespace sfv
