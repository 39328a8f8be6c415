#include "sfv/vault_sfv.hpp"

#include "sfv/rng.hpp"

#include <set>
#include <stdexcept>

namespace sfv {

const char* to_string(SfvMode mode) {
    switch (mode) {
        case SfvMode::Strict: return "strict";
        case SfvMode::Relaxed: return "relaxed";
        case SfvMode::Hashed: return "hashed";
    }
    return "?";
}

SfvMode sfv_mode_from_string(const std::string& s) {
    if (s == "strict") return SfvMode::Strict;
    if (s == "relaxed") return SfvMode::Relaxed;
    if (s == "hashed") return SfvMode::Hashed;
    throw std::invalid_argument("unknown vault mode: " + s);
}

Sha256Digest feature_hash(const FieldPtr& field, const Vec& x) {
    const std::uint32_t pm1 = field->characteristic() - 1;
    std::size_t width = 1;
    for (std::uint32_t v = pm1; v > 0xff; v >>= 8) ++width;
    std::vector<std::uint8_t> buf;
    buf.reserve(x.size() * field->degree() * width);
    for (auto code : x) {
        for (auto digit : field->coeffs_of(code)) {
            for (std::size_t b = width; b > 0; --b) {
                buf.push_back(static_cast<std::uint8_t>(digit >> (8 * (b - 1))));
            }
        }
    }
    return sha256(buf);
}

namespace {

std::uint64_t pow_u64(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

Vec decode_feature(std::uint64_t idx, std::uint32_t k, std::uint64_t q) {
    Vec v(k);
    for (std::uint32_t i = 0; i < k; ++i) {
        v[i] = static_cast<std::uint32_t>(idx % q);
        idx /= q;
    }
    return v;
}

std::uint64_t encode_feature(const Vec& v, std::uint64_t q) {
    std::uint64_t idx = 0;
    for (std::size_t i = v.size(); i > 0; --i) idx = idx * q + v[i - 1];
    return idx;
}

void validate_features(const SpreadCodePtr& code, const std::vector<Vec>& features) {
    std::set<std::uint64_t> seen;
    for (const auto& x : features) {
        if (x.size() != code->block_dim()) {
            throw std::invalid_argument("feature length != block dimension k");
        }
        for (auto c : x) {
            if (c >= code->field()->size()) throw std::invalid_argument("feature coordinate outside the field");
        }
        if (!seen.insert(encode_feature(x, code->field()->size())).second) {
            throw std::invalid_argument("duplicate feature");
        }
    }
}

Vec random_vec(const FieldPtr& f, std::size_t len, Rng& rng) {
    Vec v(len);
    for (auto& c : v) c = f->random_code(rng);
    return v;
}

}  // namespace

SfvLockTrace sfv_lock_traced(const SpreadCodePtr& code, const SfvKey& key,
                             const std::vector<Vec>& features, SfvMode mode, std::size_t r,
                             Rng& rng) {
    const auto& field = code->field();
    const std::uint32_t k = code->block_dim();
    const std::size_t n = code->ambient();
    const std::uint64_t qk = pow_u64(field->size(), k);
    const std::size_t t = features.size();

    if (key.space.ambient() != n || !key.space.field()->same_as(*field)) {
        throw std::invalid_argument("key does not belong to this code");
    }
    validate_features(code, features);
    if (t == 0) throw std::invalid_argument("need at least one feature");

    // hashed vaults follow the strict feature rules whenever they fit
    const bool strict_rules =
        mode == SfvMode::Strict ||
        (mode == SfvMode::Hashed && t == k && rank(Matrix(field, features)) == k);

    if (strict_rules) {
        if (t != k) throw std::invalid_argument("strict mode needs exactly k features");
        if (rank(Matrix(field, features)) != k) {
            throw std::invalid_argument("strict-mode features must be linearly independent");
        }
        if (r != 0 && r != qk) {
            throw std::invalid_argument("strict-mode vault holds exactly q^k points");
        }
        r = qk;
    } else {
        if (r == 0) r = qk;
        if (r <= t) throw std::invalid_argument("vault size must exceed the feature count");
        if (r > qk) throw std::invalid_argument("not enough distinct first coordinates available");
    }
    if (n == code->block_dim()) {
        throw std::invalid_argument("chaff domain is empty when the code fills its ambient space");
    }

    Rng kappa_rng = rng.derive("sfv.kappa");
    Rng chaff_rng = rng.derive("sfv.chaff");
    Rng shuffle_rng = rng.derive("sfv.shuffle");

    // secret basis of the key subspace, uniform over all of them
    const Matrix T = random_invertible(k, field, kappa_rng);
    const Matrix kappa = T * key.space.basis();

    SfvVault vault;
    vault.code = code;
    vault.mode = mode;
    vault.t = t;
    vault.r = r;

    for (const auto& x : features) vault.points.push_back({x, {}, row_times(x, kappa)});

    // chaff first coordinates
    std::set<std::uint64_t> used;
    for (const auto& x : features) used.insert(encode_feature(x, field->size()));
    std::vector<Vec> chaff_x;
    if (strict_rules) {
        for (std::uint64_t idx = 0; idx < qk; ++idx) {
            if (!used.count(idx)) chaff_x.push_back(decode_feature(idx, k, field->size()));
        }
    } else {
        std::vector<std::uint64_t> pool;
        for (std::uint64_t idx = 0; idx < qk; ++idx) {
            if (!used.count(idx)) pool.push_back(idx);
        }
        chaff_rng.shuffle(pool);
        pool.resize(r - t);
        for (auto idx : pool) chaff_x.push_back(decode_feature(idx, k, field->size()));
    }

    if (strict_rules) {
        // Chaff cosets modulo the key subspace follow x -> x * kappa', an
        // injective linear map; see the header notes. The zero feature gets
        // a coset outside that image where the ambient leaves room.
        Matrix kp(field, k, n);
        while (true) {
            kp = random_matrix(k, n, field, kappa_rng);
            if (rank(stack_rows(kappa, kp)) == 2 * k) break;
        }
        const Subspace wide = Subspace::from_rows(stack_rows(kappa, kp));
        for (const auto& x : chaff_x) {
            Vec y;
            if (vec_is_zero(x)) {
                const bool room = n > 2 * static_cast<std::size_t>(k);
                do {
                    y = random_vec(field, n, chaff_rng);
                } while (room ? wide.contains(y) : key.space.contains(y));
            } else {
                const Vec noise = random_vec(field, k, chaff_rng);
                y = vec_add(field, row_times(x, kp), row_times(noise, kappa));
            }
            vault.points.push_back({x, {}, std::move(y)});
        }
    } else {
        for (const auto& x : chaff_x) {
            Vec y;
            do {
                y = random_vec(field, n, chaff_rng);
            } while (key.space.contains(y));
            vault.points.push_back({x, {}, std::move(y)});
        }
    }

    shuffle_rng.shuffle(vault.points);

    if (mode == SfvMode::Hashed) {
        for (auto& pt : vault.points) {
            pt.digest = hex_encode(feature_hash(field, pt.x));
            pt.x.clear();
        }
    }

    return SfvLockTrace{std::move(vault), key, kappa, features};
}

SfvVault sfv_lock(const SpreadCodePtr& code, const SfvKey& key, const std::vector<Vec>& features,
                  SfvMode mode, std::size_t r, Rng& rng) {
    return sfv_lock_traced(code, key, features, mode, r, rng).vault;
}

namespace {

WitnessSpan match_witness(const SfvVault& vault, const std::vector<Vec>& witness) {
    const auto& code = vault.code;
    const auto& field = code->field();
    validate_features(code, witness);

    std::vector<Vec> matched_ys;
    if (vault.hashed()) {
        std::set<std::string> wanted;
        for (const auto& w : witness) wanted.insert(hex_encode(feature_hash(field, w)));
        for (const auto& pt : vault.points) {
            if (wanted.count(pt.digest)) matched_ys.push_back(pt.y);
        }
    } else {
        std::set<std::uint64_t> wanted;
        for (const auto& w : witness) wanted.insert(encode_feature(w, field->size()));
        for (const auto& pt : vault.points) {
            if (wanted.count(encode_feature(pt.x, field->size()))) matched_ys.push_back(pt.y);
        }
    }
    if (matched_ys.empty()) {
        return WitnessSpan{Subspace::zero(field, code->ambient()), 0};
    }
    return WitnessSpan{Subspace::from_rows(Matrix(field, matched_ys)), matched_ys.size()};
}

}  // namespace

WitnessSpan build_witness_subspace(const SfvVault& vault, const std::vector<Vec>& witness) {
    WitnessSpan span = match_witness(vault, witness);
    if (span.matched == 0) throw std::invalid_argument("no vault point matches the witness");
    return span;
}

SfvUnlockResult sfv_unlock(const SfvVault& vault, const std::vector<Vec>& witness) {
    const auto& code = vault.code;
    if (vault.mode == SfvMode::Strict) {
        if (witness.size() > code->block_dim()) {
            throw std::invalid_argument("strict-mode witness may hold at most k features");
        }
        if (!witness.empty() &&
            rank(Matrix(code->field(), witness)) != witness.size()) {
            throw std::invalid_argument("strict-mode witness must be linearly independent");
        }
    }
    if (witness.empty()) throw std::invalid_argument("empty witness");

    const WitnessSpan span = build_witness_subspace(vault, witness);
    SfvUnlockResult res;
    res.matched = span.matched;
    res.witness_dim = span.space.dim();
    res.dim_deficit = span.space.dim() < witness.size();
    if (span.space.dim() > 0) {
        if (auto cw = code->decode(span.space, DecodeAlgorithm::Vote)) res.key = std::move(*cw);
    }
    return res;
}

DistanceReport sfv_distance_report(const SfvLockTrace& trace, const std::vector<Vec>& witness) {
    const auto& vault = trace.vault;
    const auto& field = vault.code->field();
    const std::uint32_t k = vault.code->block_dim();
    const std::uint64_t q = field->size();

    std::set<std::uint64_t> aset, wset;
    for (const auto& x : trace.features) aset.insert(encode_feature(x, q));
    for (const auto& x : witness) wset.insert(encode_feature(x, q));

    std::size_t shared = 0;
    for (auto x : wset) shared += aset.count(x);
    const std::size_t d_delta = (aset.size() - shared) + (wset.size() - shared);

    // a witness matching nothing spans the zero subspace here (unlock errors)
    const WitnessSpan span = match_witness(vault, witness);
    const std::size_t d_s = subspace_distance(span.space, trace.key.space);

    std::vector<Vec> shared_vecs;
    for (const auto& x : witness) {
        if (aset.count(encode_feature(x, q))) shared_vecs.push_back(x);
    }
    const std::size_t shared_rank =
        shared_vecs.empty() ? 0 : rank(Matrix(field, shared_vecs));

    DistanceReport rep;
    rep.d_delta = d_delta;
    rep.d_s = d_s;
    rep.t_minus_k = static_cast<long>(vault.t) - static_cast<long>(k);
    rep.x_slack = witness.size() - span.space.dim();
    rep.y_slack = shared - shared_rank;
    rep.lower = static_cast<long>(d_delta) - rep.t_minus_k - static_cast<long>(rep.x_slack);
    rep.upper = static_cast<long>(d_delta) - rep.t_minus_k + 2 * static_cast<long>(rep.y_slack);
    rep.within = rep.lower <= static_cast<long>(d_s) && static_cast<long>(d_s) <= rep.upper;
    rep.lower_clamped = rep.lower < 0;
    return rep;
}

}  // namespace sfv
