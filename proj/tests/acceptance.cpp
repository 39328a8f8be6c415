// Acceptance suite: end-to-end checks of the library's contract, one line of
// output per criterion. Exits nonzero if any criterion fails.

#include "sfv/bigint.hpp"
#include "sfv/rng.hpp"
#include "sfv/security.hpp"
#include "sfv/vault_io.hpp"

#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

using namespace sfv;

namespace {

struct CriterionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
    if (!cond) throw CriterionFailure(what);
}

template <typename T>
std::string str(const T& v) {
    std::ostringstream ss;
    ss << v;
    return ss.str();
}

// ---------------------------------------------------------------------------
// 1. Unlock succeeds iff d_delta(A, W) <= k-1, exhaustively, and the
//    set-difference distance equals the subspace distance whenever the
//    witness span has full size.

void criterion_recovery_iff() {
    struct Shape {
        std::uint32_t p, k, s;
    };
    for (auto [p, k, s] : {Shape{2, 2, 2}, Shape{2, 3, 2}}) {
        auto field = Field::prime(p);
        auto code = SpreadCode::make(field, k, s);
        const auto codewords = code->enumerate();
        const auto feature_sets = testsupport::independent_subsets(field, k, k, k);
        const auto witnesses = testsupport::independent_subsets(field, k, 1, k);

        std::size_t cases = 0;
        for (std::size_t a = 0; a < feature_sets.size(); ++a) {
            for (const auto& key : codewords) {
                for (std::uint64_t seed : {1ull, 2ull}) {
                    Rng rng(seed * 7919 + a);
                    const auto trace = sfv_lock_traced(code, key, feature_sets[a],
                                                       SfvMode::Strict, 0, rng);
                    std::set<Vec> aset(feature_sets[a].begin(), feature_sets[a].end());
                    for (const auto& w : witnesses) {
                        std::size_t shared = 0;
                        for (const auto& x : w) shared += aset.count(x);
                        const std::size_t d_delta =
                            (aset.size() - shared) + (w.size() - shared);

                        const auto span = build_witness_subspace(trace.vault, w);
                        if (span.space.dim() == w.size()) {
                            const std::size_t d_s =
                                subspace_distance(span.space, key.space);
                            require(d_delta == d_s,
                                    "distance identity broke: d_delta=" + str(d_delta) +
                                        " d_S=" + str(d_s));
                        }

                        const auto res = sfv_unlock(trace.vault, w);
                        const bool hit = res.key.has_value() && *res.key == key;
                        require(hit == (d_delta <= k - 1),
                                "iff broke at d_delta=" + str(d_delta));
                        ++cases;
                    }
                }
            }
        }
        std::size_t expected_cases =
            feature_sets.size() * codewords.size() * 2 * witnesses.size();
        require(cases == expected_cases, "sweep did not cover every case");
    }
}

// ---------------------------------------------------------------------------
// 2. Spread parameters: enumerated cardinality (q^n-1)/(q^k-1) and exact
//    pairwise minimum distance 2k.

void criterion_spread_parameters() {
    struct Shape {
        std::uint32_t p, k, s;
    };
    for (auto [p, k, s] : {Shape{2, 2, 2}, Shape{2, 3, 2}, Shape{3, 2, 2}}) {
        auto code = SpreadCode::make(Field::prime(p), k, s);
        const auto words = code->enumerate();
        const BigInt expect = (big_pow(BigInt(p), k * s) - 1) / (big_pow(BigInt(p), k) - 1);
        require(BigInt(words.size()) == expect, "cardinality mismatch");
        require(code->cardinality() == expect, "cardinality formula mismatch");
        for (std::size_t i = 0; i < words.size(); ++i) {
            for (std::size_t j = i + 1; j < words.size(); ++j) {
                require(subspace_distance(words[i].space, words[j].space) == 2 * k,
                        "pairwise distance != 2k");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// 3. The q=2, k=16, s=6 instance, symbolically: n = 96, tolerance 15,
//    log2 of the key space within [79.99, 80.01]. No enumeration.

void criterion_large_instance() {
    auto code = SpreadCode::make(Field::prime(2), 16, 6);
    require(code->ambient() == 96, "ambient dimension != 96");
    require(code->decode_radius() == 15, "decoding tolerance != 15");
    require(code->min_distance() == 32, "minimum distance != 2k");
    const double log2keys = log2_big(code->cardinality());
    require(log2keys >= 79.99 && log2keys <= 80.01,
            "key space log2 = " + str(log2keys));
    const BigInt exact = (big_pow(BigInt(2), 96) - 1) / (big_pow(BigInt(2), 16) - 1);
    require(code->cardinality() == exact, "cardinality mismatch");
}

// ---------------------------------------------------------------------------
// 4. The rank-counting formula matches brute-force enumeration for q in
//    {2,3} and all matrix shapes up to 4x4, and the counts sum to q^(dn).

// Census over all q^(delta*n) matrices with incremental row reduction.
std::vector<std::uint64_t> rank_census(std::uint32_t q, std::uint32_t delta, std::uint32_t n) {
    std::uint64_t qn = 1;
    for (std::uint32_t i = 0; i < n; ++i) qn *= q;

    // all possible rows, decoded once
    std::vector<std::array<std::uint8_t, 4>> rows(qn);
    for (std::uint64_t v = 0; v < qn; ++v) {
        std::uint64_t x = v;
        for (std::uint32_t i = 0; i < n; ++i) {
            rows[v][i] = static_cast<std::uint8_t>(x % q);
            x /= q;
        }
    }
    std::array<std::uint8_t, 3> inv{};  // inverses mod q for q <= 3
    for (std::uint32_t a = 1; a < q; ++a) {
        for (std::uint32_t b = 1; b < q; ++b) {
            if (a * b % q == 1) inv[a] = static_cast<std::uint8_t>(b);
        }
    }

    std::vector<std::uint64_t> counts(std::min(delta, n) + 1, 0);
    std::array<std::array<std::uint8_t, 4>, 4> basis{};  // echelon rows
    std::array<std::uint8_t, 4> pivot{};

    std::function<void(std::uint32_t, std::uint32_t)> walk = [&](std::uint32_t row,
                                                                 std::uint32_t rank) {
        if (row == delta) {
            counts[rank]++;
            return;
        }
        for (std::uint64_t v = 0; v < qn; ++v) {
            std::array<std::uint8_t, 4> r = rows[v];
            for (std::uint32_t b = 0; b < rank; ++b) {
                const std::uint8_t c = r[pivot[b]];
                if (c == 0) continue;
                for (std::uint32_t i = 0; i < n; ++i) {
                    r[i] = static_cast<std::uint8_t>((r[i] + (q - c) * basis[b][i]) % q);
                }
            }
            std::uint32_t p = n;
            for (std::uint32_t i = 0; i < n; ++i) {
                if (r[i] != 0) {
                    p = i;
                    break;
                }
            }
            if (p == n) {
                walk(row + 1, rank);
            } else {
                const std::uint8_t scale = inv[r[p]];
                for (std::uint32_t i = 0; i < n; ++i) {
                    r[i] = static_cast<std::uint8_t>(r[i] * scale % q);
                }
                basis[rank] = r;
                pivot[rank] = static_cast<std::uint8_t>(p);
                walk(row + 1, rank + 1);
            }
        }
    };
    walk(0, 0);
    return counts;
}

void criterion_rank_counts() {
    require(count_rank_matrices(2, 2, 2, 3) == 42, "N_2(2,2,3) != 42");
    require(count_rank_matrices(2, 2, 2, 4) == 210, "N_2(2,2,4) != 210");
    require(count_rank_matrices(2, 2, 3, 4) == 1470, "N_2(2,3,4) != 1470");
    for (std::uint32_t q : {2u, 3u}) {
        for (std::uint32_t delta = 1; delta <= 4; ++delta) {
            for (std::uint32_t n = 1; n <= 4; ++n) {
                const auto census = rank_census(q, delta, n);
                BigInt total = 0;
                for (std::uint32_t k = 0; k < census.size(); ++k) {
                    require(count_rank_matrices(q, k, delta, n) == census[k],
                            "formula disagrees with enumeration at q=" + str(q) + " k=" +
                                str(k) + " delta=" + str(delta) + " n=" + str(n));
                    total += census[k];
                }
                require(total == big_pow(BigInt(q), std::uint64_t(delta) * n),
                        "census does not cover all matrices");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// 5. PFV threshold at q=13, l=2, t=4, r=13, exhaustively over witnesses,
//    plus decoder/oracle agreement on 10^3 random instances.

void criterion_pfv_threshold() {
    auto f13 = Field::prime(13);
    const Poly key = make_poly(f13, {7, 11});
    const std::vector<std::uint32_t> features{1, 2, 3, 4};
    Rng rng(20130);
    const auto vault = pfv_lock(key, 2, features, 13, rng);

    std::set<std::uint32_t> aset(features.begin(), features.end());
    std::vector<std::uint32_t> idx{0, 1, 2, 3};
    std::size_t checked = 0;
    while (true) {
        std::size_t shared = 0;
        for (auto x : idx) shared += aset.count(x);
        const std::size_t d_delta = (4 - shared) * 2;
        const auto got = pfv_unlock(vault, idx);
        const bool hit = got.has_value() && *got == key;
        require(hit == (d_delta <= 2), "threshold broke at d_delta=" + str(d_delta));
        ++checked;

        std::size_t i = 4;
        while (i > 0 && idx[i - 1] == 13 - 4 + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < 4; ++j) idx[j] = idx[j - 1] + 1;
    }
    require(checked == 715, "witness sweep incomplete");  // C(13,4)

    Rng orc(20131);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t ell = 1 + orc.uniform_below(3);
        const std::size_t z = ell + orc.uniform_below(9 - ell + 1);
        std::vector<std::uint32_t> pts(12);
        for (std::uint32_t i = 0; i < 12; ++i) pts[i] = i + 1;
        orc.shuffle(pts);
        pts.resize(z);
        std::vector<RSPair> pairs;
        for (auto g : pts) {
            pairs.emplace_back(g, static_cast<std::uint32_t>(orc.uniform_below(13)));
        }
        require(rs_decode(f13, pairs, ell) == rs_decode_oracle(f13, pairs, ell),
                "decoder disagrees with the subset-interpolation oracle");
    }
}

// ---------------------------------------------------------------------------
// 6. Vote decoding is the exhaustive minimum-distance decoder, including
//    beyond-radius failures, on 500 random inputs per spread.

void criterion_decoder_equivalence() {
    struct Shape {
        std::uint32_t p, k, s;
    };
    for (auto [p, k, s] : {Shape{2, 2, 2}, Shape{2, 3, 2}, Shape{3, 2, 2}}) {
        auto field = Field::prime(p);
        auto code = SpreadCode::make(field, k, s);
        Rng rng(6000 + p * 100 + k * 10 + s);
        std::size_t agreements = 0, failures = 0;
        for (int trial = 0; trial < 500; ++trial) {
            const std::size_t dim = 1 + rng.uniform_below(2 * k);
            const auto w =
                Subspace::from_rows(random_matrix(dim, code->ambient(), field, rng));
            if (w.dim() == 0) continue;
            const auto vote = code->decode(w, DecodeAlgorithm::Vote);
            const auto scan = code->decode(w, DecodeAlgorithm::Exhaustive);
            require(vote.has_value() == scan.has_value(),
                    "decoders disagree on decodability");
            if (vote) {
                require(*vote == *scan, "decoders return different codewords");
            } else {
                ++failures;
            }
            ++agreements;
        }
        require(agreements > 400, "sweep too small");
        require(failures > 0, "no beyond-radius case exercised");
    }
}

// ---------------------------------------------------------------------------
// 7. Relaxed-mode sandwich: measured d_S within
//    [d_delta - (t-k) - x, d_delta - (t-k) + 2y] on 10^3 seeded vaults.

void criterion_relaxed_sandwich() {
    auto code = SpreadCode::make(Field::prime(2), 3, 4);  // n = 12
    auto field = code->field();
    Rng master(7777);
    const auto all = testsupport::all_vectors(field, 3);

    std::size_t violations = 0, pos_x = 0, pos_y = 0, chaff_hits = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        Rng trial_rng = master.derive("sandwich", static_cast<std::uint64_t>(trial));
        const std::size_t t = 3 + trial_rng.uniform_below(4);  // 3..6

        auto pool = all;
        trial_rng.shuffle(pool);
        std::vector<Vec> features(pool.begin(), pool.begin() + static_cast<long>(t));

        const auto key = code->random_codeword(trial_rng);
        const auto trace =
            sfv_lock_traced(code, key, features, SfvMode::Relaxed, t + 1, trial_rng);

        trial_rng.shuffle(pool);
        std::vector<Vec> witness(pool.begin(), pool.begin() + static_cast<long>(t));

        const auto rep = sfv_distance_report(trace, witness);
        violations += !rep.within;
        pos_x += rep.x_slack > 0;
        pos_y += rep.y_slack > 0;
        // track how often the lone chaff point entered the witness span
        std::set<Vec> aset(features.begin(), features.end());
        for (const auto& w : witness) {
            chaff_hits += aset.count(w) == 0 && [&] {
                for (const auto& pt : trace.vault.points) {
                    if (pt.x == w) return true;
                }
                return false;
            }();
        }
    }
    require(violations == 0, str(violations) + " bound violations");
    require(pos_x > 100 && pos_y > 100, "slack terms barely exercised");
    require(chaff_hits > 100, "chaff never matched by witnesses");
}

// ---------------------------------------------------------------------------
// 8. Attack realism: subset sampling near the hypergeometric prediction;
//    the dependency scan flags a planted relation with zero false positives;
//    hashed vaults yield the not-applicable result.

void criterion_attacks() {
    // (a) subset sampling at q=2, k=3, n=12, t=8, r=20, delta = delta0
    auto code2 = SpreadCode::make(Field::prime(2), 3, 4);
    const auto d0 = find_delta0(2, 3, 12, 20, 8);
    require(d0.has_value(), "no delta0 at the attack parameters");
    Rng arng(8801);
    const auto features8 = testsupport::all_vectors(code2->field(), 3);  // t = 8 = q^k
    const auto inst = synth_attack_instance(code2, features8, 20, arng);
    const auto stats = simulate_subset_attack(inst, *d0, 400000, 8802, 220);
    require(stats.successes >= 200,
            "only " + str(stats.successes) + " successes inside the budget");
    require(stats.predicted_mean.has_value() && stats.ratio.has_value(),
            "prediction unavailable");
    require(*stats.ratio > 0.5 && *stats.ratio < 2.0,
            "empirical/predicted ratio " + str(*stats.ratio) + " outside [0.5, 2]");

    // (b) dependency scan over 10^3 vaults at n = 12 (q=3, k=4, s=3):
    //     planted x5 = x1 + x2 must be flagged, chaff never
    auto code3 = SpreadCode::make(Field::prime(3), 4, 3);
    auto f3 = code3->field();
    Rng master(8803);
    std::size_t planted_found = 0, false_positives = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        Rng rng = master.derive("lindep", static_cast<std::uint64_t>(trial));
        std::vector<Vec> features;
        std::set<Vec> used;
        Vec planted;
        while (true) {  // redraw until the planted sum is fresh and nonzero
            features.clear();
            used.clear();
            while (features.size() < 4) {
                Vec x(4);
                for (auto& c : x) c = f3->random_code(rng);
                if (vec_is_zero(x) || used.count(x)) continue;
                used.insert(x);
                features.push_back(x);
            }
            planted = vec_add(f3, features[0], features[1]);
            if (!vec_is_zero(planted) && !used.count(planted)) break;
        }
        features.push_back(planted);
        used.insert(planted);

        const auto key = code3->random_codeword(rng);
        const auto trace = sfv_lock_traced(code3, key, features, SfvMode::Relaxed, 9, rng);
        const auto res = linear_dependency_attack(trace.vault);
        require(res.applicable, "scan not applicable to a plain vault");

        bool saw_planted = false;
        for (const auto& f : res.findings) {
            bool all_auth = used.count(trace.vault.points[f.target].x) > 0;
            for (auto s : f.sources) {
                all_auth = all_auth && used.count(trace.vault.points[s].x) > 0;
            }
            false_positives += !all_auth;
            if (trace.vault.points[f.target].x == planted) saw_planted = true;
        }
        planted_found += saw_planted;
    }
    require(planted_found == 1000, "planted dependency missed in " +
                                       str(1000 - planted_found) + " vaults");
    require(false_positives == 0, str(false_positives) + " false positives");

    // (c) hashed vaults hide the first coordinates from the scan
    Rng hr(8804);
    const auto hkey = code3->random_codeword(hr);
    const std::vector<Vec> hfeat{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1},
                                 {1, 1, 0, 0}};
    const auto hashed = sfv_lock(code3, hkey, hfeat, SfvMode::Hashed, 9, hr);
    const auto hres = linear_dependency_attack(hashed);
    require(!hres.applicable && hres.findings.empty(),
            "hashed vault did not yield the not-applicable result");
}

// ---------------------------------------------------------------------------
// 9. Determinism: identical seeds give byte-identical vault files and
//    serialization round-trips are exact.

void criterion_determinism() {
    auto code = SpreadCode::make(Field::prime(2), 3, 2);
    const std::vector<Vec> features{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

    for (auto mode : {SfvMode::Strict, SfvMode::Relaxed, SfvMode::Hashed}) {
        std::string first;
        for (int rep = 0; rep < 2; ++rep) {
            Rng rng(990011);
            const auto key = code->random_codeword(rng);
            const auto vault = sfv_lock(code, key, features, mode, 0, rng);
            const auto bytes = vault_serialize(vault);
            if (rep == 0) {
                first = bytes;
            } else {
                require(bytes == first, "same seed produced different bytes");
            }
            const auto back = vault_parse(bytes);
            require(std::holds_alternative<SfvVault>(back), "scheme lost in round-trip");
            require(vault_serialize(std::get<SfvVault>(back)) == bytes,
                    "round-trip not byte-exact");
        }
    }

    auto f13 = Field::prime(13);
    std::string pfv_first;
    for (int rep = 0; rep < 2; ++rep) {
        Rng rng(990022);
        const auto vault = pfv_lock(make_poly(f13, {5, 2}), 2, {1, 2, 3}, 13, rng);
        const auto bytes = vault_serialize(vault);
        if (rep == 0) {
            pfv_first = bytes;
        } else {
            require(bytes == pfv_first, "same seed produced different pfv bytes");
        }
        require(vault_serialize(std::get<PfvVault>(vault_parse(bytes))) == bytes,
                "pfv round-trip not byte-exact");
    }
}

}  // namespace

int main() {
    struct Entry {
        int number;
        const char* name;
        std::function<void()> run;
    };
    const std::vector<Entry> criteria{
        {1, "recovery iff d_delta <= k-1, exhaustive at (2,2,2) and (2,3,2)",
         criterion_recovery_iff},
        {2, "spread cardinality and exact minimum distance", criterion_spread_parameters},
        {3, "q=2, k=16, n=96 instance, symbolic", criterion_large_instance},
        {4, "rank-count formula vs brute-force enumeration", criterion_rank_counts},
        {5, "pfv threshold, exhaustive at q=13, + decoder oracle", criterion_pfv_threshold},
        {6, "vote decoder == exhaustive decoder", criterion_decoder_equivalence},
        {7, "relaxed-mode distance bounds, zero violations", criterion_relaxed_sandwich},
        {8, "subset + dependency attacks behave as analyzed", criterion_attacks},
        {9, "seeded determinism and exact round-trips", criterion_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            c.run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        if (error.empty()) {
            std::printf("PASS  criterion %d: %s (%lld ms)\n", c.number, c.name,
                        static_cast<long long>(ms));
        } else {
            std::printf("FAIL  criterion %d: %s (%lld ms): %s\n", c.number, c.name,
                        static_cast<long long>(ms), error.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
