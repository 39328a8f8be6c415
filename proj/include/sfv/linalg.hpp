#pragma once

#include "sfv/field.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace sfv {

class Rng;

/// Row vector over F_q, stored as element codes.
using Vec = std::vector<std::uint32_t>;

/// Dense row-major matrix over a runtime field. Value semantics; the field is
/// held once per matrix, entries are raw element codes.
class Matrix {
  public:
    Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    Matrix(FieldPtr field, std::vector<Vec> rows);

    static Matrix identity(const FieldPtr& field, std::size_t n);

    const FieldPtr& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint32_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    FieldElem elem(std::size_t r, std::size_t c) const { return field_->elem(at(r, c)); }

    Vec row(std::size_t r) const;
    void set_row(std::size_t r, const Vec& v);

    const std::vector<std::uint32_t>& data() const { return data_; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_ &&
               field_->same_as(*o.field_);
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

  private:
    FieldPtr field_;
    std::size_t rows_, cols_;
    std::vector<std::uint32_t> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix stack_rows(const Matrix& a, const Matrix& b);

/// x * M for a row vector x of length M.rows().
Vec row_times(const Vec& x, const Matrix& m);

Vec vec_add(const FieldPtr& f, const Vec& a, const Vec& b);
Vec vec_scale(const FieldPtr& f, const Vec& a, std::uint32_t s);
bool vec_is_zero(const Vec& v);

struct RrefResult {
    Matrix mat;
    std::size_t rank;
    std::vector<std::size_t> pivot_cols;
};

/// Unique reduced row echelon form; preserves the row space.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);

struct AmbientMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A subspace of F_q^n in canonical form: its RREF basis with zero rows
/// dropped. Two Subspace values are equal iff their bases are identical.
class Subspace {
  public:
    /// Row space of an arbitrary matrix.
    static Subspace from_rows(const Matrix& m);
    static Subspace zero(const FieldPtr& field, std::size_t ambient);

    const FieldPtr& field() const { return basis_.field(); }
    std::size_t ambient() const { return basis_.cols(); }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }

    /// Membership test by reduction against the RREF basis.
    bool contains(const Vec& v) const;

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

  private:
    explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
    Matrix basis_;
};

std::size_t sum_dim(const Subspace& u, const Subspace& v);

/// Subspace metric dim(U+V) - dim(U∩V); the intersection dimension comes
/// from the dimension formula, not an explicit basis.
std::size_t subspace_distance(const Subspace& u, const Subspace& v);

/// Explicit intersection basis (Zassenhaus). Diagnostic use only.
Subspace intersection(const Subspace& u, const Subspace& v);

/// Visits every vector of the row space of `basis` except zero
/// (q^rows - 1 vectors; the basis rows must be independent).
void for_each_span_vector(const Matrix& basis, const std::function<void(const Vec&)>& fn);

/// Uniformly random rows x cols matrix of full row rank (rejection sampling).
Matrix random_full_rank(std::size_t rows, std::size_t cols, const FieldPtr& field, Rng& rng);
Matrix random_matrix(std::size_t rows, std::size_t cols, const FieldPtr& field, Rng& rng);
Matrix random_invertible(std::size_t n, const FieldPtr& field, Rng& rng);

/// Companion matrix of a monic polynomial p of degree k: ones on the
/// superdiagonal, last row -p_0 .. -p_{k-1}. Row-vector convention: for the
/// extension F_q[x]/(p) with class a of x, coords(u) * P = coords(u * a).
Matrix companion_matrix(const Poly& p);

/// The ring embedding of F_{p^k} into k x k matrices over F_p generated by
/// sending the class of x to P. `a`'s field must be built from the same
/// reduction polynomial that P is the companion of.
Matrix ext_embed(const FieldElem& a, const Matrix& P);

}  // namespace sfv
