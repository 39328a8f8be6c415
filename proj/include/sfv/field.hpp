#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace sfv {

class Rng;

struct FieldMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DivisionByZeroError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class FieldElem;

/// A finite field F_q with q = p^m, p prime. Elements are stored as integer
/// codes in [0, q): the code of an element with coefficient vector
/// (c_0, ..., c_{m-1}) over F_p is sum c_i p^i, so code equality is exactly
/// coefficient-wise equality. Multiplication runs on exp/log tables built at
/// construction; addition is an XOR for p = 2 and digit arithmetic otherwise.
///
/// Field objects are immutable and shared; all operations are safe to call
/// concurrently.
class Field : public std::enable_shared_from_this<Field> {
  public:
    /// Prime field F_p.
    static std::shared_ptr<const Field> prime(std::uint32_t p);

    /// Extension field F_{p^m}. The reduction modulus is a monic irreducible
    /// polynomial of degree m over F_p, given low-to-high (length m+1). When
    /// omitted, the lexicographically first irreducible monic polynomial of
    /// degree m is used, so a field is reproducible from (p, m) alone.
    static std::shared_ptr<const Field> make(
        std::uint32_t p, std::uint32_t m,
        const std::vector<std::uint32_t>& modulus = {});

    std::uint32_t characteristic() const { return p_; }
    std::uint32_t degree() const { return m_; }
    std::uint64_t size() const { return q_; }

    /// Reduction polynomial over F_p, low-to-high, monic, length m+1.
    /// Empty for prime fields.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    bool same_as(const Field& o) const {
        return this == &o || (p_ == o.p_ && m_ == o.m_ && modulus_ == o.modulus_);
    }

    // Arithmetic on codes. These are the hot-path primitives; FieldElem
    // wraps them with field-compatibility checks.
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (q_ - 1)];
    }
    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw DivisionByZeroError("field inverse of zero");
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }
    std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

    std::vector<std::uint32_t> coeffs_of(std::uint32_t code) const;
    std::uint32_t code_of(const std::vector<std::uint32_t>& coeffs) const;

    FieldElem elem(std::uint32_t code) const;
    FieldElem zero() const;
    FieldElem one() const;
    FieldElem from_coeffs(const std::vector<std::uint32_t>& coeffs) const;

    /// Uniform element; uniform nonzero element.
    std::uint32_t random_code(Rng& rng) const;
    std::uint32_t random_nonzero_code(Rng& rng) const;

  private:
    Field() = default;

    std::uint32_t p_ = 0;
    std::uint32_t m_ = 0;
    std::uint64_t q_ = 0;
    std::vector<std::uint32_t> modulus_;  // over F_p, low-to-high, monic
    std::vector<std::uint32_t> exp_;      // exp_[i] = g^i, size q-1
    std::vector<std::uint64_t> log_;      // log_[exp_[i]] = i, log_[0] unused

    std::uint32_t raw_mul(std::uint32_t a, std::uint32_t b) const;
    void build_tables();
};

using FieldPtr = std::shared_ptr<const Field>;

/// An element of a specific field. Carries its field, so mixed-field
/// arithmetic is rejected rather than silently misinterpreted.
class FieldElem {
  public:
    FieldElem() = default;
    FieldElem(FieldPtr field, std::uint32_t code) : field_(std::move(field)), code_(code) {}

    const FieldPtr& field() const { return field_; }
    std::uint32_t code() const { return code_; }
    bool is_zero() const { return code_ == 0; }
    std::vector<std::uint32_t> coeffs() const { return field_->coeffs_of(code_); }

    FieldElem operator+(const FieldElem& o) const { return with(field_->add(code_, check(o))); }
    FieldElem operator-(const FieldElem& o) const { return with(field_->sub(code_, check(o))); }
    FieldElem operator*(const FieldElem& o) const { return with(field_->mul(code_, check(o))); }
    FieldElem operator/(const FieldElem& o) const { return with(field_->div(code_, check(o))); }
    FieldElem operator-() const { return with(field_->neg(code_)); }
    FieldElem inverse() const { return with(field_->inv(code_)); }

    bool operator==(const FieldElem& o) const {
        return code_ == o.code_ && field_->same_as(*o.field_);
    }
    bool operator!=(const FieldElem& o) const { return !(*this == o); }

  private:
    FieldPtr field_;
    std::uint32_t code_ = 0;

    FieldElem with(std::uint32_t c) const { return FieldElem(field_, c); }
    std::uint32_t check(const FieldElem& o) const {
        if (!field_->same_as(*o.field_)) {
            throw FieldMismatchError("operands belong to different fields");
        }
        return o.code_;
    }
};

/// Polynomial over F_q, coefficients low-to-high with no trailing zeros;
/// the zero polynomial has an empty coefficient list.
class Poly {
  public:
    explicit Poly(FieldPtr field) : field_(std::move(field)) {}
    Poly(FieldPtr field, std::vector<std::uint32_t> coeffs)
        : field_(std::move(field)), c_(std::move(coeffs)) {
        trim();
    }

    const FieldPtr& field() const { return field_; }
    const std::vector<std::uint32_t>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    std::uint32_t leading() const { return c_.empty() ? 0 : c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    bool operator==(const Poly& o) const {
        return c_ == o.c_ && field_->same_as(*o.field_);
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

  private:
    FieldPtr field_;
    std::vector<std::uint32_t> c_;

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, std::uint32_t s);

/// Quotient and remainder; b must be nonzero.
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly poly_mod(const Poly& a, const Poly& b);
Poly poly_monic(const Poly& a);
Poly poly_gcd(const Poly& a, const Poly& b);

/// Horner evaluation of f at x.
FieldElem poly_eval(const Poly& f, const FieldElem& x);
std::uint32_t poly_eval_code(const Poly& f, std::uint32_t x);

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod);
Poly poly_powmod(const Poly& a, std::uint64_t e, const Poly& mod);

/// Inverse of a modulo `mod` (extended Euclid); a and mod must be coprime.
Poly poly_invmod(const Poly& a, const Poly& mod);

/// Rabin irreducibility test over the polynomial's coefficient field.
/// Requires a monic input of degree >= 1.
bool is_irreducible(const Poly& p);

/// Lexicographically first monic irreducible polynomial of the given degree
/// (candidates ordered by their coefficient codes, low digits least
/// significant).
Poly first_irreducible(const FieldPtr& field, std::uint32_t degree);

Poly make_poly(const FieldPtr& field, std::initializer_list<std::uint32_t> coeffs);

}  // namespace sfv
