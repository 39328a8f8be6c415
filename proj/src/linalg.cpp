#include "sfv/linalg.hpp"

#include "sfv/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace sfv {

Matrix::Matrix(FieldPtr field, std::vector<Vec> rows)
    : field_(std::move(field)), rows_(rows.size()), cols_(rows.empty() ? 0 : rows[0].size()) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged row list");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(const FieldPtr& field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Vec Matrix::row(std::size_t r) const {
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void Matrix::set_row(std::size_t r, const Vec& v) {
    if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
    std::copy(v.begin(), v.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * cols_));
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (!a.field()->same_as(*b.field())) throw FieldMismatchError("matrix product across fields");
    if (a.cols() != b.rows()) throw std::invalid_argument("inner dimensions differ");
    const auto& f = a.field();
    Matrix out(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const std::uint32_t aik = a.at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out.at(i, j) = f->add(out.at(i, j), f->mul(aik, b.at(k, j)));
            }
        }
    }
    return out;
}

Matrix stack_rows(const Matrix& a, const Matrix& b) {
    if (!a.field()->same_as(*b.field())) throw FieldMismatchError("stacking across fields");
    if (a.cols() != b.cols()) throw std::invalid_argument("column counts differ");
    Matrix out(a.field(), a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) out.set_row(i, a.row(i));
    for (std::size_t i = 0; i < b.rows(); ++i) out.set_row(a.rows() + i, b.row(i));
    return out;
}

Vec row_times(const Vec& x, const Matrix& m) {
    if (x.size() != m.rows()) throw std::invalid_argument("vector length != row count");
    const auto& f = m.field();
    Vec out(m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out[j] = f->add(out[j], f->mul(x[i], m.at(i, j)));
        }
    }
    return out;
}

Vec vec_add(const FieldPtr& f, const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector lengths differ");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f->add(a[i], b[i]);
    return out;
}

Vec vec_scale(const FieldPtr& f, const Vec& a, std::uint32_t s) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f->mul(a[i], s);
    return out;
}

bool vec_is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](std::uint32_t x) { return x == 0; });
}

RrefResult rref(const Matrix& m) {
    Matrix a = m;
    const auto& f = a.field();
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (a.at(i, c) != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot == rows) continue;
        if (pivot != r) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(r, j), a.at(pivot, j));
        }
        const std::uint32_t inv = f->inv(a.at(r, c));
        if (inv != 1) {
            for (std::size_t j = c; j < cols; ++j) a.at(r, j) = f->mul(a.at(r, j), inv);
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const std::uint32_t factor = a.at(i, c);
            if (factor == 0) continue;
            for (std::size_t j = c; j < cols; ++j) {
                a.at(i, j) = f->sub(a.at(i, j), f->mul(factor, a.at(r, j)));
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return RrefResult{std::move(a), r, std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Subspace Subspace::from_rows(const Matrix& m) {
    auto res = rref(m);
    Matrix basis(m.field(), res.rank, m.cols());
    for (std::size_t i = 0; i < res.rank; ++i) basis.set_row(i, res.mat.row(i));
    return Subspace(std::move(basis));
}

Subspace Subspace::zero(const FieldPtr& field, std::size_t ambient) {
    return Subspace(Matrix(field, 0, ambient));
}

bool Subspace::contains(const Vec& v) const {
    if (v.size() != ambient()) throw std::invalid_argument("vector length != ambient dimension");
    const auto& f = field();
    Vec r = v;
    std::size_t basis_row = 0;
    for (std::size_t c = 0; c < ambient() && basis_row < dim(); ++c) {
        if (basis_.at(basis_row, c) != 1) continue;  // not this row's pivot column
        if (r[c] != 0) {
            const std::uint32_t factor = r[c];
            for (std::size_t j = c; j < ambient(); ++j) {
                r[j] = f->sub(r[j], f->mul(factor, basis_.at(basis_row, j)));
            }
        }
        ++basis_row;
    }
    return vec_is_zero(r);
}

std::size_t sum_dim(const Subspace& u, const Subspace& v) {
    if (!u.field()->same_as(*v.field()) || u.ambient() != v.ambient()) {
        throw AmbientMismatchError("subspaces live in different ambient spaces");
    }
    return rank(stack_rows(u.basis(), v.basis()));
}

std::size_t subspace_distance(const Subspace& u, const Subspace& v) {
    const std::size_t s = sum_dim(u, v);
    // dim(U∩V) = dim U + dim V - dim(U+V)
    return 2 * s - u.dim() - v.dim();
}

Subspace intersection(const Subspace& u, const Subspace& v) {
    if (!u.field()->same_as(*v.field()) || u.ambient() != v.ambient()) {
        throw AmbientMismatchError("subspaces live in different ambient spaces");
    }
    // Zassenhaus: reduce [U | U; V | 0]; rows whose left half is zero carry
    // an intersection basis in their right half.
    const auto& f = u.field();
    const std::size_t n = u.ambient();
    Matrix block(f, u.dim() + v.dim(), 2 * n);
    for (std::size_t i = 0; i < u.dim(); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            block.at(i, j) = u.basis().at(i, j);
            block.at(i, n + j) = u.basis().at(i, j);
        }
    }
    for (std::size_t i = 0; i < v.dim(); ++i) {
        for (std::size_t j = 0; j < n; ++j) block.at(u.dim() + i, j) = v.basis().at(i, j);
    }
    auto res = rref(block);
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < res.rank; ++i) {
        bool left_zero = true;
        for (std::size_t j = 0; j < n && left_zero; ++j) left_zero = res.mat.at(i, j) == 0;
        if (left_zero) {
            Vec right(n);
            for (std::size_t j = 0; j < n; ++j) right[j] = res.mat.at(i, n + j);
            rows.push_back(std::move(right));
        }
    }
    if (rows.empty()) return Subspace::zero(f, n);
    return Subspace::from_rows(Matrix(f, rows));
}

void for_each_span_vector(const Matrix& basis, const std::function<void(const Vec&)>& fn) {
    const auto& f = basis.field();
    const std::uint64_t q = f->size();
    const std::size_t d = basis.rows();
    if (d > 24) throw std::invalid_argument("span enumeration dimension too large");
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= q;
    std::vector<std::uint32_t> digits(d, 0);
    Vec v(basis.cols(), 0);
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        // increment base-q odometer and patch v by the changed digits
        std::size_t pos = 0;
        while (true) {
            const std::uint32_t old = digits[pos];
            const std::uint32_t nw = (old + 1 == q) ? 0 : old + 1;
            digits[pos] = nw;
            const std::uint32_t delta = f->sub(nw, old);
            for (std::size_t j = 0; j < basis.cols(); ++j) {
                v[j] = f->add(v[j], f->mul(delta, basis.at(pos, j)));
            }
            if (nw != 0) break;
            ++pos;
        }
        fn(v);
    }
}

Matrix random_matrix(std::size_t rows, std::size_t cols, const FieldPtr& field, Rng& rng) {
    Matrix m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = field->random_code(rng);
    }
    return m;
}

Matrix random_full_rank(std::size_t rows, std::size_t cols, const FieldPtr& field, Rng& rng) {
    if (rows > cols) throw std::invalid_argument("full row rank needs rows <= cols");
    while (true) {
        Matrix m = random_matrix(rows, cols, field, rng);
        if (rank(m) == rows) return m;
    }
}

Matrix random_invertible(std::size_t n, const FieldPtr& field, Rng& rng) {
    return random_full_rank(n, n, field, rng);
}

Matrix companion_matrix(const Poly& p) {
    if (!p.is_monic()) throw std::invalid_argument("companion matrix needs a monic polynomial");
    const auto k = static_cast<std::size_t>(p.degree());
    if (k < 1) throw std::invalid_argument("companion matrix needs degree >= 1");
    const auto& f = p.field();
    Matrix m(f, k, k);
    for (std::size_t i = 0; i + 1 < k; ++i) m.at(i, i + 1) = 1;
    for (std::size_t j = 0; j < k; ++j) m.at(k - 1, j) = f->neg(p.coeff(j));
    return m;
}

Matrix ext_embed(const FieldElem& a, const Matrix& P) {
    const std::size_t k = P.rows();
    if (k == 0 || P.cols() != k) throw std::invalid_argument("companion matrix must be square");
    const auto& base = P.field();
    // recover the construction polynomial from P and check the shape
    for (std::size_t i = 0; i + 1 < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (P.at(i, j) != (j == i + 1 ? 1u : 0u)) {
                throw std::invalid_argument("matrix is not in companion form");
            }
        }
    }
    std::vector<std::uint32_t> mod(k + 1, 0);
    for (std::size_t j = 0; j < k; ++j) mod[j] = base->neg(P.at(k - 1, j));
    mod[k] = 1;

    const auto& ext = a.field();
    if (ext->characteristic() != base->characteristic() || base->degree() != 1 ||
        ext->degree() != k || (k > 1 && ext->modulus() != mod)) {
        throw std::invalid_argument("element field was not constructed from this companion polynomial");
    }

    Matrix out(base, k, k);
    Matrix power = Matrix::identity(base, k);
    const auto digits = a.coeffs();
    for (std::size_t i = 0; i < k; ++i) {
        if (digits[i] != 0) {
            for (std::size_t r = 0; r < k; ++r) {
                for (std::size_t c = 0; c < k; ++c) {
                    out.at(r, c) = base->add(out.at(r, c), base->mul(digits[i], power.at(r, c)));
                }
            }
        }
        if (i + 1 < k) power = power * P;
    }
    return out;
}

}  // namespace sfv
