#include "sfv/spread.hpp"

#include "sfv/rng.hpp"

#include <map>
#include <stdexcept>

namespace sfv {

std::shared_ptr<const SpreadCode> SpreadCode::make(const FieldPtr& base, std::uint32_t k,
                                                   std::uint32_t s, std::optional<Poly> modulus) {
    if (k < 1 || s < 1) throw std::invalid_argument("spread code needs k >= 1 and s >= 1");
    Poly p = modulus ? *modulus : first_irreducible(base, k);
    if (!p.field()->same_as(*base)) throw FieldMismatchError("modulus is over a different field");
    if (p.degree() != static_cast<int>(k)) {
        throw std::invalid_argument("modulus degree does not match the block dimension");
    }
    if (!p.is_monic()) throw std::invalid_argument("modulus must be monic");
    if (!is_irreducible(p)) throw std::invalid_argument("modulus is reducible");

    auto code = std::shared_ptr<SpreadCode>(new SpreadCode());
    code->base_ = base;
    code->k_ = k;
    code->s_ = s;
    code->n_ = k * s;
    code->modulus_ = p;
    code->companion_ = companion_matrix(p);
    code->powers_.reserve(k);
    Matrix power = Matrix::identity(base, k);
    for (std::uint32_t i = 0; i < k; ++i) {
        code->powers_.push_back(power);
        if (i + 1 < k) power = power * code->companion_;
    }
    return code;
}

BigInt SpreadCode::cardinality() const {
    const BigInt q(base_->size());
    return (big_pow(q, n_) - 1) / (big_pow(q, k_) - 1);
}

Matrix SpreadCode::embed_block(const Poly& a) const {
    Matrix out(base_, k_, k_);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        const std::uint32_t c = a.coeffs()[i];
        if (c == 0) continue;
        const Matrix& pw = powers_[i];
        for (std::uint32_t r = 0; r < k_; ++r) {
            for (std::uint32_t j = 0; j < k_; ++j) {
                out.at(r, j) = base_->add(out.at(r, j), base_->mul(c, pw.at(r, j)));
            }
        }
    }
    return out;
}

Poly SpreadCode::block_at(const Vec& v, std::size_t block) const {
    std::vector<std::uint32_t> coeffs(v.begin() + static_cast<std::ptrdiff_t>(block * k_),
                                      v.begin() + static_cast<std::ptrdiff_t>((block + 1) * k_));
    return Poly(base_, std::move(coeffs));
}

std::vector<Poly> SpreadCode::normalize_tuple(std::vector<Poly> tuple) const {
    std::size_t lead = tuple.size();
    for (std::size_t j = 0; j < tuple.size(); ++j) {
        if (!tuple[j].is_zero()) {
            lead = j;
            break;
        }
    }
    if (lead == tuple.size()) throw std::invalid_argument("all-zero block tuple");
    const Poly inv = poly_invmod(tuple[lead], modulus_);
    for (auto& a : tuple) a = poly_mulmod(a, inv, modulus_);
    return tuple;
}

Codeword SpreadCode::codeword_from_tuple(std::vector<Poly> tuple) const {
    if (tuple.size() != s_) throw std::invalid_argument("tuple size != block count");
    auto t = normalize_tuple(std::move(tuple));
    std::vector<Vec> rows(k_, Vec(n_, 0));
    for (std::uint32_t j = 0; j < s_; ++j) {
        const Matrix emb = embed_block(t[j]);
        for (std::uint32_t r = 0; r < k_; ++r) {
            for (std::uint32_t c = 0; c < k_; ++c) rows[r][j * k_ + c] = emb.at(r, c);
        }
    }
    Subspace space = Subspace::from_rows(Matrix(base_, rows));
    return Codeword{std::move(t), std::move(space)};
}

std::vector<Poly> SpreadCode::containing_tuple(const Vec& v) const {
    if (v.size() != n_) throw std::invalid_argument("vector length != ambient dimension");
    if (vec_is_zero(v)) throw std::invalid_argument("zero vector lies in every codeword");
    std::vector<Poly> tuple;
    tuple.reserve(s_);
    for (std::uint32_t j = 0; j < s_; ++j) tuple.push_back(block_at(v, j));
    return normalize_tuple(std::move(tuple));
}

Codeword SpreadCode::containing_codeword(const Vec& v) const {
    return codeword_from_tuple(containing_tuple(v));
}

std::vector<Codeword> SpreadCode::enumerate(std::uint64_t cap) const {
    if (cardinality() > BigInt(cap)) {
        throw EnumerationCapError(
            "spread code too large to enumerate; use containing_codeword/decode");
    }
    const std::uint64_t qk = [&] {
        std::uint64_t v = 1;
        for (std::uint32_t i = 0; i < k_; ++i) v *= base_->size();
        return v;
    }();

    std::vector<Codeword> out;
    const Poly one = make_poly(base_, {1});
    // one codeword per projective point: leading block 1, earlier blocks 0
    for (std::uint32_t lead = 0; lead < s_; ++lead) {
        const std::uint32_t tail = s_ - lead - 1;
        std::uint64_t combos = 1;
        for (std::uint32_t i = 0; i < tail; ++i) combos *= qk;
        for (std::uint64_t idx = 0; idx < combos; ++idx) {
            std::vector<Poly> tuple;
            tuple.reserve(s_);
            for (std::uint32_t j = 0; j < lead; ++j) tuple.emplace_back(base_);
            tuple.push_back(one);
            std::uint64_t rest = idx;
            for (std::uint32_t j = 0; j < tail; ++j) {
                std::vector<std::uint32_t> coeffs(k_);
                std::uint64_t v = rest % qk;
                rest /= qk;
                for (std::uint32_t i = 0; i < k_; ++i) {
                    coeffs[i] = static_cast<std::uint32_t>(v % base_->size());
                    v /= base_->size();
                }
                tuple.emplace_back(base_, std::move(coeffs));
            }
            out.push_back(codeword_from_tuple(std::move(tuple)));
        }
    }
    return out;
}

namespace {

std::vector<std::uint64_t> tuple_key(const std::vector<Poly>& tuple, std::uint64_t q) {
    std::vector<std::uint64_t> key;
    key.reserve(tuple.size());
    for (const auto& p : tuple) {
        std::uint64_t v = 0;
        for (std::size_t i = p.coeffs().size(); i > 0; --i) v = v * q + p.coeffs()[i - 1];
        key.push_back(v);
    }
    return key;
}

}  // namespace

std::optional<Codeword> SpreadCode::decode(const Subspace& w, DecodeAlgorithm alg) const {
    if (w.dim() == 0) throw std::invalid_argument("cannot decode a zero-dimensional subspace");
    if (w.ambient() != n_ || !w.field()->same_as(*base_)) {
        throw AmbientMismatchError("subspace does not live in the code's ambient space");
    }

    if (alg == DecodeAlgorithm::Exhaustive) {
        std::optional<Codeword> best;
        std::size_t best_d = 0;
        bool tie = false;
        for (auto& c : enumerate()) {
            const std::size_t d = subspace_distance(w, c.space);
            if (!best || d < best_d) {
                best = std::move(c);
                best_d = d;
                tie = false;
            } else if (d == best_d) {
                tie = true;
            }
        }
        if (!best || tie || best_d > decode_radius()) return std::nullopt;
        return best;
    }

    // Vote decoder: the codeword meeting W in the largest dimension gets the
    // most votes, and largest intersection = smallest subspace distance.
    std::map<std::vector<std::uint64_t>, std::pair<std::uint64_t, std::vector<Poly>>> tally;
    for_each_span_vector(w.basis(), [&](const Vec& v) {
        auto t = containing_tuple(v);
        auto key = tuple_key(t, base_->size());
        auto& entry = tally[key];
        if (entry.first++ == 0) entry.second = std::move(t);
    });
    const std::pair<std::uint64_t, std::vector<Poly>>* best = nullptr;
    for (auto& [key, entry] : tally) {
        if (!best || entry.first > best->first) best = &entry;
    }
    Codeword cw = codeword_from_tuple(best->second);
    if (subspace_distance(w, cw.space) > decode_radius()) return std::nullopt;
    return cw;
}

Codeword SpreadCode::random_codeword(Rng& rng) const {
    while (true) {
        std::vector<Poly> tuple;
        tuple.reserve(s_);
        bool nonzero = false;
        for (std::uint32_t j = 0; j < s_; ++j) {
            std::vector<std::uint32_t> coeffs(k_);
            for (std::uint32_t i = 0; i < k_; ++i) coeffs[i] = base_->random_code(rng);
            Poly p(base_, std::move(coeffs));
            nonzero = nonzero || !p.is_zero();
            tuple.push_back(std::move(p));
        }
        if (nonzero) return codeword_from_tuple(std::move(tuple));
    }
}

}  // namespace sfv
