#pragma once

#include "sfv/bigint.hpp"
#include "sfv/linalg.hpp"
#include "sfv/spread.hpp"
#include "sfv/vault_sfv.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace sfv {

class Rng;

/// Number of delta x n matrices over F_q of rank exactly k:
///   prod_{i<k} (q^n - q^i) * prod_{i<k} (q^delta - q^i) / prod_{i<k} (q^k - q^i),
/// exact (the division leaves no remainder). Symmetric in delta and n;
/// requires 0 <= k <= min(delta, n).
BigInt count_rank_matrices(std::uint64_t q, std::uint32_t k, std::uint32_t delta, std::uint32_t n);

/// Probability that t >= k random vectors in F_q^k span the whole space:
/// N_q(k, t, k) / q^{kt}, exact.
BigRat rank_full_probability(std::uint64_t q, std::uint32_t k, std::uint32_t t);

/// Expected number of delta-subsets of r random points in F_q^n spanning a
/// k-dimensional space: C(r, delta) * N_q(k, delta, n) / q^{delta n}.
/// Requires r > delta >= k.
BigRat expected_spanning_subsets(std::uint64_t q, std::uint32_t k, std::uint32_t delta,
                                 std::uint32_t n, std::uint64_t r);

/// Smallest delta0 in [k, t] with expected_spanning_subsets < 1, if any.
std::optional<std::uint32_t> find_delta0(std::uint64_t q, std::uint32_t k, std::uint32_t n,
                                         std::uint64_t r, std::uint32_t t);

struct BruteForceCost {
    std::uint32_t delta0 = 0;
    double ops_per_trial = 0;  // 0.55 * n * (delta0^2 - delta0)
    double total = 0;          // ops_per_trial * (r/t)^delta0
};

/// Expected work of the subset-sampling attack over F_2. Errors on a
/// non-binary field (the row-reduction operation count is binary-specific)
/// and when no delta0 exists.
BruteForceCost brute_force_cost(std::uint64_t q, std::uint32_t k, std::uint32_t n, std::uint64_t r,
                                std::uint32_t t);

/// Both sides of the claimed bound C(r,delta)/C(t,delta) < 1.1 (r/t)^delta.
/// The bound fails for some admissible parameters, so it is reported, never
/// assumed.
struct BinomialHeuristic {
    BigRat lhs;
    double rhs = 0;
    bool holds = false;
};
BinomialHeuristic binomial_growth_heuristic(std::uint64_t r, std::uint64_t t, std::uint32_t delta);

struct AlphaSweepRow {
    std::uint32_t delta = 0;
    BigRat alpha;
};

struct SecurityReport {
    std::uint64_t q = 0;
    std::uint32_t k = 0, n = 0, t = 0;
    std::uint64_t r = 0;
    BigInt key_space;  // spread-code cardinality at these (q, k, n)
    double key_space_log2 = 0;
    std::optional<std::uint32_t> delta0;
    std::optional<BigRat> alpha_at_delta0;
    std::optional<BruteForceCost> cost;  // binary fields only
    BigInt naive_rank_ops;               // n(k^2 - k), halved over F_2
    std::vector<AlphaSweepRow> sweep;    // alpha(delta) for delta in [k, t]
};

SecurityReport analyze_parameters(std::uint64_t q, std::uint32_t k, std::uint32_t n,
                                  std::uint64_t r, std::uint32_t t, bool sweep);

/// Attack-facing view of a vault: the second coordinates, plus ground truth
/// when the caller has it (test harnesses; never serialized vaults).
struct AttackInstance {
    SpreadCodePtr code;
    std::vector<Vec> ys;
    std::size_t t = 0;
    std::optional<std::vector<bool>> authentic;
    std::optional<Codeword> true_key;
};

AttackInstance attack_instance_from_trace(const SfvLockTrace& trace);
AttackInstance attack_instance_from_vault(const SfvVault& vault);

/// Instance with t authentic points x_i kappa for the given distinct
/// features and r - t uniform chaff outside the key subspace. Covers
/// parameter ranges where a full vault cannot exist (for example t = q^k,
/// which leaves no room for distinct chaff first coordinates).
AttackInstance synth_attack_instance(const SpreadCodePtr& code, const std::vector<Vec>& features,
                                     std::size_t r, Rng& rng);

struct AttackStats {
    std::uint64_t trials = 0;
    /// Key recoveries where the sampled span IS the recovered codeword --
    /// the guessing events the hypergeometric C(r,d)/C(t,d) model counts.
    std::uint64_t successes = 0;
    /// Key recoveries rescued by the decoding radius from a span that was
    /// not itself a codeword (degenerate authentic part plus chaff). These
    /// beat the guessing model; reported separately, never mixed into it.
    std::uint64_t windfall_successes = 0;
    std::uint64_t rank_passes = 0;        // subsets passing the rank-k filter
    std::uint64_t mixed_trials = 0;       // subsets containing chaff (needs truth)
    std::uint64_t mixed_rank_passes = 0;  // of those, rank-k passers
    double mean_trials_to_success = 0;
    std::optional<double> predicted_mean;  // C(r,delta)/C(t,delta)
    std::optional<double> ratio;           // empirical / predicted
    bool scored_against_truth = false;
    bool budget_exhausted = false;  // budget ran out before any success
};

/// Subset-sampling attack: each trial draws delta vault points, row-reduces
/// their second coordinates, and only on rank exactly k attempts a decode
/// plus key comparison. With ground truth, recovery means the decoded
/// codeword equals the true key; without it, any decode counts as recovery.
/// Trials use per-index derived streams, so execution order cannot matter.
/// Stops early after `target_successes` exact successes (0 = never).
AttackStats simulate_subset_attack(const AttackInstance& inst, std::uint32_t delta,
                                   std::uint64_t max_trials, std::uint64_t seed,
                                   std::uint64_t target_successes = 0);

struct LindepFinding {
    std::size_t target = 0;            // flagged point (likely authentic)
    std::vector<std::size_t> sources;  // points whose combination matches it
    std::vector<std::uint32_t> coeffs;
};

struct LindepResult {
    bool applicable = true;  // false for hashed vaults: first coordinates hidden
    std::vector<LindepFinding> findings;
};

/// Scans for vault points whose first coordinate is a linear combination of
/// one or two other first coordinates and whose second coordinate satisfies
/// the same combination. Authentic tuples always satisfy it; tuples touching
/// chaff only with probability about q^-n.
LindepResult linear_dependency_attack(const SfvVault& vault);

}  // namespace sfv
