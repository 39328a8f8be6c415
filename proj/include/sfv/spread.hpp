#pragma once

#include "sfv/bigint.hpp"
#include "sfv/field.hpp"
#include "sfv/linalg.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace sfv {

class Rng;

struct EnumerationCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One element of a spread code: a k-dimensional subspace of F_q^n together
/// with its projective coordinate (a_1 : ... : a_s) over F_{q^k}, stored with
/// the first nonzero block normalized to 1. Blocks are polynomials of degree
/// < k over the base field, reduced modulo the code's construction polynomial.
struct Codeword {
    std::vector<Poly> tuple;
    Subspace space;

    bool operator==(const Codeword& o) const { return tuple == o.tuple; }
    bool operator!=(const Codeword& o) const { return !(*this == o); }
};

enum class DecodeAlgorithm { Vote, Exhaustive };

/// A (k, n = ks)-spread code over F_q: the row spaces of the nonzero
/// k x n block matrices (A_1 | ... | A_s) with each A_i in F_q[P], P the
/// companion matrix of an irreducible monic polynomial of degree k. Its
/// codewords partition the nonzero vectors of F_q^n; minimum subspace
/// distance 2k, cardinality (q^n - 1)/(q^k - 1).
class SpreadCode {
  public:
    /// Builds the code; `modulus` defaults to the lexicographically first
    /// irreducible monic polynomial of degree k over the base field.
    static std::shared_ptr<const SpreadCode> make(const FieldPtr& base, std::uint32_t k,
                                                  std::uint32_t s,
                                                  std::optional<Poly> modulus = std::nullopt);

    const FieldPtr& field() const { return base_; }
    std::uint32_t block_dim() const { return k_; }
    std::uint32_t block_count() const { return s_; }
    std::uint32_t ambient() const { return n_; }
    const Poly& modulus() const { return modulus_; }
    const Matrix& companion() const { return companion_; }

    BigInt cardinality() const;
    std::uint32_t min_distance() const { return 2 * k_; }
    /// Largest distance at which unique decoding is guaranteed. The metric's
    /// parity makes the half-the-minimum-distance bound effectively k-1.
    std::uint32_t decode_radius() const { return k_ - 1; }

    /// Sum a_i P^i for a block polynomial a.
    Matrix embed_block(const Poly& a) const;

    Codeword codeword_from_tuple(std::vector<Poly> tuple) const;

    /// The unique codeword whose subspace contains the nonzero vector v:
    /// split v into s blocks, read each as an element of F_{q^k}, normalize
    /// projectively.
    Codeword containing_codeword(const Vec& v) const;
    std::vector<Poly> containing_tuple(const Vec& v) const;

    /// All codewords; refuses when the cardinality exceeds `cap`
    /// (use containing_codeword/decode instead at large parameters).
    std::vector<Codeword> enumerate(std::uint64_t cap = 1ull << 16) const;

    /// Minimum-distance decoding of a nonzero subspace, unique within the
    /// decode radius; returns nothing when no codeword lies within it.
    /// Vote: every nonzero vector of W votes for its containing codeword
    /// (a codeword meeting W in dimension d collects q^d - 1 votes).
    /// Exhaustive: full scan over the enumerated code (oracle).
    std::optional<Codeword> decode(const Subspace& w,
                                   DecodeAlgorithm alg = DecodeAlgorithm::Vote) const;

    Codeword random_codeword(Rng& rng) const;

  private:
    SpreadCode() = default;

    FieldPtr base_;
    std::uint32_t k_ = 0, s_ = 0, n_ = 0;
    Poly modulus_{nullptr};
    Matrix companion_{nullptr, 0, 0};
    std::vector<Matrix> powers_;  // P^0 .. P^{k-1}

    Poly block_at(const Vec& v, std::size_t block) const;
    std::vector<Poly> normalize_tuple(std::vector<Poly> tuple) const;
};

using SpreadCodePtr = std::shared_ptr<const SpreadCode>;

}  // namespace sfv
