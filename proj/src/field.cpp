#include "sfv/field.hpp"

#include "sfv/rng.hpp"

#include <algorithm>

namespace sfv {

namespace {

constexpr std::uint64_t kMaxFieldSize = 1ull << 20;

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::vector<std::uint32_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint32_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(static_cast<std::uint32_t>(d));
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(static_cast<std::uint32_t>(n));
    return out;
}

}  // namespace

std::shared_ptr<const Field> Field::prime(std::uint32_t p) { return make(p, 1); }

std::shared_ptr<const Field> Field::make(std::uint32_t p, std::uint32_t m,
                                         const std::vector<std::uint32_t>& modulus) {
    if (!is_prime_u32(p)) throw std::invalid_argument("field characteristic must be prime");
    if (m < 1) throw std::invalid_argument("extension degree must be >= 1");

    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        q *= p;
        if (q > kMaxFieldSize) throw std::invalid_argument("field size exceeds supported cap");
    }

    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->m_ = m;
    f->q_ = q;

    if (m == 1) {
        if (!modulus.empty()) {
            throw std::invalid_argument("prime fields take no reduction polynomial");
        }
    } else if (modulus.empty()) {
        auto base = Field::prime(p);
        f->modulus_ = first_irreducible(base, m).coeffs();
    } else {
        if (modulus.size() != m + 1 || modulus.back() != 1) {
            throw std::invalid_argument("reduction polynomial must be monic of degree m");
        }
        for (auto c : modulus) {
            if (c >= p) throw std::invalid_argument("reduction coefficients must lie in [0, p)");
        }
        auto base = Field::prime(p);
        Poly mod(base, modulus);
        if (!is_irreducible(mod)) {
            throw std::invalid_argument("reduction polynomial is reducible");
        }
        f->modulus_ = modulus;
    }

    f->build_tables();
    return f;
}

std::uint32_t Field::add(std::uint32_t a, std::uint32_t b) const {
    if (p_ == 2) return a ^ b;
    if (m_ == 1) {
        std::uint64_t s = static_cast<std::uint64_t>(a) + b;
        if (s >= p_) s -= p_;
        return static_cast<std::uint32_t>(s);
    }
    std::uint32_t out = 0, mult = 1;
    for (std::uint32_t i = 0; i < m_; ++i) {
        std::uint32_t da = a % p_, db = b % p_;
        a /= p_;
        b /= p_;
        std::uint32_t d = da + db;
        if (d >= p_) d -= p_;
        out += d * mult;
        mult *= p_;
    }
    return out;
}

std::uint32_t Field::neg(std::uint32_t a) const {
    if (p_ == 2) return a;
    std::uint32_t out = 0, mult = 1;
    for (std::uint32_t i = 0; i < m_; ++i) {
        std::uint32_t d = a % p_;
        a /= p_;
        out += (d == 0 ? 0 : p_ - d) * mult;
        mult *= p_;
    }
    return out;
}

std::uint32_t Field::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    std::uint64_t le = (log_[a] % (q_ - 1)) * (e % (q_ - 1)) % (q_ - 1);
    return exp_[le];
}

// Schoolbook multiply of coefficient vectors with reduction by the modulus;
// only used while bootstrapping the exp/log tables.
std::uint32_t Field::raw_mul(std::uint32_t a, std::uint32_t b) const {
    if (m_ == 1) {
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    std::vector<std::uint32_t> da = coeffs_of(a), db = coeffs_of(b);
    std::vector<std::uint32_t> prod(2 * m_ - 1, 0);
    for (std::uint32_t i = 0; i < m_; ++i) {
        if (da[i] == 0) continue;
        for (std::uint32_t j = 0; j < m_; ++j) {
            prod[i + j] = static_cast<std::uint32_t>(
                (prod[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p_);
        }
    }
    // reduce by the monic modulus: x^m = -(mod_0 + ... + mod_{m-1} x^{m-1})
    for (std::uint32_t d = 2 * m_ - 2; d >= m_; --d) {
        std::uint32_t c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (std::uint32_t j = 0; j < m_; ++j) {
            std::uint64_t t = static_cast<std::uint64_t>(c) * modulus_[j] % p_;
            prod[d - m_ + j] = static_cast<std::uint32_t>((prod[d - m_ + j] + p_ - t) % p_);
        }
    }
    prod.resize(m_);
    return code_of(prod);
}

void Field::build_tables() {
    const std::uint64_t order = q_ - 1;
    const auto factors = prime_factors(order);

    std::uint32_t gen = 0;
    for (std::uint32_t g = 1; g < q_; ++g) {
        bool primitive = g != 0;
        for (auto ell : factors) {
            // g^(order/ell) by square-and-multiply on raw_mul
            std::uint64_t e = order / ell;
            std::uint32_t acc = 1, base = g;
            while (e) {
                if (e & 1) acc = raw_mul(acc, base);
                base = raw_mul(base, base);
                e >>= 1;
            }
            if (acc == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            gen = g;
            break;
        }
    }
    if (gen == 0 && q_ > 2) throw std::logic_error("no primitive element found");
    if (q_ == 2) gen = 1;

    exp_.assign(order, 1);
    log_.assign(q_, 0);
    std::uint32_t cur = 1;
    for (std::uint64_t i = 0; i < order; ++i) {
        exp_[i] = cur;
        log_[cur] = i;
        cur = raw_mul(cur, gen);
    }
}

std::vector<std::uint32_t> Field::coeffs_of(std::uint32_t code) const {
    std::vector<std::uint32_t> out(m_);
    for (std::uint32_t i = 0; i < m_; ++i) {
        out[i] = code % p_;
        code /= p_;
    }
    return out;
}

std::uint32_t Field::code_of(const std::vector<std::uint32_t>& coeffs) const {
    if (coeffs.size() != m_) throw std::invalid_argument("coefficient vector has wrong length");
    std::uint32_t code = 0, mult = 1;
    for (std::uint32_t i = 0; i < m_; ++i) {
        if (coeffs[i] >= p_) throw std::invalid_argument("coefficient out of range");
        code += coeffs[i] * mult;
        mult *= p_;
    }
    return code;
}

FieldElem Field::elem(std::uint32_t code) const {
    if (code >= q_) throw std::invalid_argument("element code out of range");
    return FieldElem(shared_from_this(), code);
}

FieldElem Field::zero() const { return FieldElem(shared_from_this(), 0); }
FieldElem Field::one() const { return FieldElem(shared_from_this(), 1); }

FieldElem Field::from_coeffs(const std::vector<std::uint32_t>& coeffs) const {
    return FieldElem(shared_from_this(), code_of(coeffs));
}

std::uint32_t Field::random_code(Rng& rng) const {
    return static_cast<std::uint32_t>(rng.uniform_below(q_));
}

std::uint32_t Field::random_nonzero_code(Rng& rng) const {
    return static_cast<std::uint32_t>(rng.uniform_below(q_ - 1)) + 1;
}

// ---------------------------------------------------------------------------
// Polynomials

namespace {

const FieldPtr& common_field(const Poly& a, const Poly& b) {
    if (!a.field()->same_as(*b.field())) {
        throw FieldMismatchError("polynomials belong to different fields");
    }
    return a.field();
}

}  // namespace

Poly poly_add(const Poly& a, const Poly& b) {
    const auto& f = common_field(a, b);
    std::vector<std::uint32_t> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = f->add(a.coeff(i), b.coeff(i));
    return Poly(f, std::move(c));
}

Poly poly_sub(const Poly& a, const Poly& b) {
    const auto& f = common_field(a, b);
    std::vector<std::uint32_t> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = f->sub(a.coeff(i), b.coeff(i));
    return Poly(f, std::move(c));
}

Poly poly_mul(const Poly& a, const Poly& b) {
    const auto& f = common_field(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(f);
    std::vector<std::uint32_t> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        const std::uint32_t ai = a.coeffs()[i];
        if (ai == 0) continue;
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
            c[i + j] = f->add(c[i + j], f->mul(ai, b.coeffs()[j]));
        }
    }
    return Poly(f, std::move(c));
}

Poly poly_scale(const Poly& a, std::uint32_t s) {
    const auto& f = a.field();
    std::vector<std::uint32_t> c(a.coeffs());
    for (auto& x : c) x = f->mul(x, s);
    return Poly(f, std::move(c));
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    const auto& f = common_field(a, b);
    if (b.is_zero()) throw DivisionByZeroError("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(f), a};
    std::vector<std::uint32_t> rem(a.coeffs());
    std::vector<std::uint32_t> quot(a.coeffs().size() - b.coeffs().size() + 1, 0);
    const std::uint32_t lead_inv = f->inv(b.leading());
    for (int d = a.degree(); d >= b.degree(); --d) {
        const std::uint32_t c = rem[static_cast<std::size_t>(d)];
        if (c == 0) continue;
        const std::uint32_t q = f->mul(c, lead_inv);
        quot[static_cast<std::size_t>(d - b.degree())] = q;
        for (int j = 0; j <= b.degree(); ++j) {
            auto idx = static_cast<std::size_t>(d - b.degree() + j);
            rem[idx] = f->sub(rem[idx], f->mul(q, b.coeffs()[static_cast<std::size_t>(j)]));
        }
    }
    return {Poly(f, std::move(quot)), Poly(f, std::move(rem))};
}

Poly poly_mod(const Poly& a, const Poly& b) { return poly_divmod(a, b).second; }

Poly poly_monic(const Poly& a) {
    if (a.is_zero() || a.is_monic()) return a;
    return poly_scale(a, a.field()->inv(a.leading()));
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = poly_mod(x, y);
        x = y;
        y = r;
    }
    return poly_monic(x);
}

FieldElem poly_eval(const Poly& f, const FieldElem& x) {
    if (!f.field()->same_as(*x.field())) {
        throw FieldMismatchError("evaluation point outside the coefficient field");
    }
    return FieldElem(f.field(), poly_eval_code(f, x.code()));
}

std::uint32_t poly_eval_code(const Poly& f, std::uint32_t x) {
    const auto& fld = f.field();
    std::uint32_t acc = 0;
    for (std::size_t i = f.coeffs().size(); i > 0; --i) {
        acc = fld->add(fld->mul(acc, x), f.coeffs()[i - 1]);
    }
    return acc;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod) {
    return poly_mod(poly_mul(a, b), mod);
}

Poly poly_powmod(const Poly& a, std::uint64_t e, const Poly& mod) {
    Poly acc = make_poly(a.field(), {1});
    Poly base = poly_mod(a, mod);
    while (e) {
        if (e & 1) acc = poly_mulmod(acc, base, mod);
        base = poly_mulmod(base, base, mod);
        e >>= 1;
    }
    return acc;
}

Poly poly_invmod(const Poly& a, const Poly& mod) {
    // extended Euclid on (mod, a)
    Poly r0 = mod, r1 = poly_mod(a, mod);
    Poly t0(a.field()), t1 = make_poly(a.field(), {1});
    while (!r1.is_zero()) {
        auto [q, r2] = poly_divmod(r0, r1);
        Poly t2 = poly_sub(t0, poly_mul(q, t1));
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (r0.degree() != 0) throw std::invalid_argument("element not invertible modulo given polynomial");
    return poly_mod(poly_scale(t0, a.field()->inv(r0.coeff(0))), mod);
}

bool is_irreducible(const Poly& p) {
    if (p.degree() < 1) throw std::invalid_argument("irreducibility needs degree >= 1");
    if (!p.is_monic()) throw std::invalid_argument("irreducibility test requires a monic polynomial");
    const auto d = static_cast<std::uint32_t>(p.degree());
    if (d == 1) return true;

    const auto& f = p.field();
    const std::uint64_t q = f->size();
    const Poly x = make_poly(f, {0, 1});

    // Frobenius iterates x^(q^j) mod p for j = 1..d.
    std::vector<Poly> frob;
    frob.reserve(d);
    Poly t = x;
    for (std::uint32_t j = 1; j <= d; ++j) {
        t = poly_powmod(t, q, p);
        frob.push_back(t);
    }
    if (frob[d - 1] != poly_mod(x, p)) return false;
    for (std::uint32_t ell = 2; ell <= d; ++ell) {
        if (d % ell != 0) continue;
        bool ell_prime = true;
        for (std::uint32_t dd = 2; dd * dd <= ell; ++dd) {
            if (ell % dd == 0) {
                ell_prime = false;
                break;
            }
        }
        if (!ell_prime) continue;
        const Poly diff = poly_sub(frob[d / ell - 1], x);
        if (poly_gcd(diff, p).degree() != 0) return false;
    }
    return true;
}

Poly first_irreducible(const FieldPtr& field, std::uint32_t degree) {
    if (degree < 1) throw std::invalid_argument("degree must be >= 1");
    const std::uint64_t q = field->size();
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < degree; ++i) count *= q;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::vector<std::uint32_t> c(degree + 1, 0);
        std::uint64_t v = idx;
        for (std::uint32_t i = 0; i < degree; ++i) {
            c[i] = static_cast<std::uint32_t>(v % q);
            v /= q;
        }
        c[degree] = 1;
        Poly cand(field, std::move(c));
        if (is_irreducible(cand)) return cand;
    }
    throw std::logic_error("no irreducible polynomial found");  // unreachable
}

Poly make_poly(const FieldPtr& field, std::initializer_list<std::uint32_t> coeffs) {
    return Poly(field, std::vector<std::uint32_t>(coeffs));
}

}  // namespace sfv
