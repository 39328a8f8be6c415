#include "sfv/linalg.hpp"

#include "sfv/rng.hpp"
#include "support.hpp"

#include <doctest.h>

#include <map>
#include <set>

using namespace sfv;

namespace {

Subspace random_subspace(const FieldPtr& f, std::size_t ambient, std::size_t dim, Rng& rng) {
    return Subspace::from_rows(random_matrix(dim, ambient, f, rng));
}

}  // namespace

TEST_CASE("rref: hand-checked cases") {
    auto f2 = Field::prime(2);

    const Matrix id = Matrix::identity(f2, 4);
    auto rid = rref(id);
    CHECK(rid.mat == id);
    CHECK(rid.rank == 4);

    const Matrix m(f2, {{1, 0, 0, 1}, {1, 1, 1, 0}});
    auto rm = rref(m);
    CHECK(rm.rank == 2);
    CHECK(rm.mat == Matrix(f2, {{1, 0, 0, 1}, {0, 1, 1, 1}}));
    // row spaces agree: every combination of original rows lies in the span
    auto span = testsupport::span_of(rm.mat);
    std::set<Vec> span_set(span.begin(), span.end());
    for (const auto& v : testsupport::span_of(m)) CHECK(span_set.count(v));

    const Matrix zero(f2, 3, 4);
    auto rz = rref(zero);
    CHECK(rz.rank == 0);
    CHECK(rz.mat == zero);
}

TEST_CASE("rref is idempotent") {
    Rng rng(11);
    for (auto field : {Field::prime(2), Field::prime(5), Field::make(2, 2)}) {
        for (int i = 0; i < 50; ++i) {
            const Matrix m = random_matrix(3, 5, field, rng);
            const Matrix r = rref(m).mat;
            CHECK(rref(r).mat == r);
        }
    }
}

TEST_CASE("subspace construction from rows") {
    auto f2 = Field::prime(2);

    const auto full = Subspace::from_rows(Matrix::identity(f2, 3));
    CHECK(full.dim() == 3);

    const Matrix dup(f2, {{1, 0, 1}, {1, 0, 1}, {0, 1, 0}});
    const Matrix dedup(f2, {{1, 0, 1}, {0, 1, 0}});
    CHECK(Subspace::from_rows(dup) == Subspace::from_rows(dedup));

    const auto u = Subspace::from_rows(Matrix(f2, {{1, 0, 0, 1}, {0, 1, 1, 1}}));
    CHECK(u.dim() == 2);
    const auto span = testsupport::span_of(u.basis());
    CHECK(span.size() == 4);
    for (const auto& v : span) CHECK(u.contains(v));
}

TEST_CASE("row space is invariant under invertible row operations") {
    Rng rng(13);
    for (auto field : {Field::prime(2), Field::prime(3)}) {
        for (int i = 0; i < 30; ++i) {
            const Matrix m = random_matrix(3, 6, field, rng);
            const Matrix t = random_invertible(3, field, rng);
            CHECK(Subspace::from_rows(m) == Subspace::from_rows(t * m));
        }
    }
}

TEST_CASE("subspace distance: hand-computed cases") {
    auto f2 = Field::prime(2);
    const auto u = Subspace::from_rows(Matrix(f2, {{1, 0, 0, 1}, {0, 1, 1, 1}}));
    CHECK(subspace_distance(u, u) == 0);

    // two disjoint 2-dim subspaces of F_2^4 (codewords of a (2,4)-spread)
    const auto c1 = Subspace::from_rows(Matrix(f2, {{1, 0, 0, 0}, {0, 1, 0, 0}}));
    const auto c2 = Subspace::from_rows(Matrix(f2, {{0, 0, 1, 0}, {0, 0, 0, 1}}));
    CHECK(subspace_distance(c1, c2) == 4);
    CHECK(rank(stack_rows(c1.basis(), c2.basis())) == 4);

    const auto line = Subspace::from_rows(Matrix(f2, {{1, 0, 0, 1}}));
    CHECK(subspace_distance(line, u) == 1);

    const auto other_ambient = Subspace::from_rows(Matrix(f2, {{1, 0}}));
    CHECK_THROWS_AS(subspace_distance(u, other_ambient), AmbientMismatchError);
}

TEST_CASE("subspace distance is a metric on G_2(6, .)") {
    auto f2 = Field::prime(2);
    Rng rng(17);
    std::vector<Subspace> spaces;
    for (int i = 0; i < 40; ++i) {
        spaces.push_back(random_subspace(f2, 6, 1 + rng.uniform_below(5), rng));
    }
    for (const auto& a : spaces) {
        for (const auto& b : spaces) {
            const auto d = subspace_distance(a, b);
            CHECK(d == subspace_distance(b, a));
            CHECK((d == 0) == (a == b));
        }
    }
    for (int i = 0; i < 1000; ++i) {
        const auto& a = spaces[rng.uniform_below(spaces.size())];
        const auto& b = spaces[rng.uniform_below(spaces.size())];
        const auto& c = spaces[rng.uniform_below(spaces.size())];
        CHECK(subspace_distance(a, c) <=
              subspace_distance(a, b) + subspace_distance(b, c));
    }
}

TEST_CASE("explicit intersection agrees with the dimension formula") {
    Rng rng(19);
    for (auto field : {Field::prime(2), Field::prime(3)}) {
        for (int i = 0; i < 60; ++i) {
            const auto u = random_subspace(field, 6, 1 + rng.uniform_below(4), rng);
            const auto v = random_subspace(field, 6, 1 + rng.uniform_below(4), rng);
            const auto meet = intersection(u, v);
            CHECK(meet.dim() == u.dim() + v.dim() - sum_dim(u, v));
            for_each_span_vector(meet.basis(), [&](const Vec& x) {
                CHECK(u.contains(x));
                CHECK(v.contains(x));
            });
        }
    }
}

TEST_CASE("span membership") {
    auto f2 = Field::prime(2);
    const auto u = Subspace::from_rows(Matrix(f2, {{1, 0, 0, 1}, {0, 1, 1, 1}}));
    CHECK(u.contains({0, 0, 0, 0}));
    CHECK(u.contains({1, 0, 0, 1}));
    CHECK(u.contains({1, 1, 1, 0}));
    CHECK_FALSE(u.contains({1, 0, 0, 0}));
    CHECK_THROWS(u.contains({1, 0, 0}));

    // oracle: membership matches exhaustive span enumeration
    std::set<Vec> span;
    for (const auto& v : testsupport::span_of(u.basis())) span.insert(v);
    for (const auto& v : testsupport::all_vectors(f2, 4)) {
        CHECK(u.contains(v) == (span.count(v) > 0));
    }
}

TEST_CASE("random full-rank sampling") {
    auto f2 = Field::prime(2);
    Rng rng(23);
    CHECK(random_full_rank(1, 1, f2, rng) == Matrix(f2, {{1}}));
    CHECK_THROWS(random_full_rank(3, 2, f2, rng));

    Rng a(42), b(42);
    CHECK(random_full_rank(2, 4, f2, a) == random_full_rank(2, 4, f2, b));

    // every rank-2 2x4 binary matrix appears with frequency 1/210 within 5 sigma
    std::map<std::vector<std::uint32_t>, int> counts;
    Rng stat(1);
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        counts[random_full_rank(2, 4, f2, stat).data()]++;
    }
    CHECK(counts.size() == 210);
    const double expect = draws / 210.0;
    const double sigma = std::sqrt(draws * (1.0 / 210) * (1 - 1.0 / 210));
    for (const auto& [m, c] : counts) {
        CHECK(c > expect - 5 * sigma);
        CHECK(c < expect + 5 * sigma);
    }
}

TEST_CASE("companion matrices: pinned layouts") {
    auto f2 = Field::prime(2);
    const Poly p = make_poly(f2, {1, 1, 1});
    const Matrix P = companion_matrix(p);
    CHECK(P == Matrix(f2, {{0, 1}, {1, 1}}));
    // P^2 = P + I
    const Matrix P2 = P * P;
    Matrix PI = P;
    PI.at(0, 0) = f2->add(PI.at(0, 0), 1);
    PI.at(1, 1) = f2->add(PI.at(1, 1), 1);
    CHECK(P2 == PI);

    auto f7 = Field::prime(7);
    CHECK(companion_matrix(make_poly(f7, {f7->neg(3), 1})) == Matrix(f7, {{3}}));

    const Matrix C3 = companion_matrix(make_poly(f2, {1, 1, 0, 1}));
    CHECK(C3 == Matrix(f2, {{0, 1, 0}, {0, 0, 1}, {1, 1, 0}}));
    CHECK_THROWS(companion_matrix(make_poly(f7, {1, 2})));  // not monic

    // characteristic polynomial equals the input (brute-force determinant)
    for (const auto& poly : {make_poly(f2, {1, 1, 1}), make_poly(f2, {1, 1, 0, 1}),
                             make_poly(Field::prime(3), {2, 1, 0, 1})}) {
        CHECK(testsupport::char_poly_by_det(companion_matrix(poly)) == poly);
    }
}

TEST_CASE("extension embedding is a ring isomorphism onto F_q[P]") {
    auto f2 = Field::prime(2);

    // hand-checked cases over F_4
    auto f4 = Field::make(2, 2, {1, 1, 1});
    const Matrix P = companion_matrix(make_poly(f2, {1, 1, 1}));
    CHECK(ext_embed(f4->zero(), P) == Matrix(f2, 2, 2));
    CHECK(ext_embed(f4->one(), P) == Matrix::identity(f2, 2));
    CHECK(ext_embed(f4->from_coeffs({0, 1}), P) == P);

    // structure preservation and injectivity wherever q^k <= 64
    struct Config {
        std::uint32_t p, k;
    };
    for (auto [pp, k] : {Config{2, 2}, Config{2, 3}, Config{2, 6}, Config{3, 2}, Config{3, 3},
                         Config{5, 2}, Config{7, 2}}) {
        auto base = Field::prime(pp);
        auto ext = Field::make(pp, k);
        const Matrix comp = companion_matrix(Poly(base, ext->modulus()));
        std::set<std::vector<std::uint32_t>> images;
        const auto q_k = static_cast<std::uint32_t>(ext->size());
        for (std::uint32_t a = 0; a < q_k; ++a) {
            images.insert(ext_embed(ext->elem(a), comp).data());
            for (std::uint32_t b = 0; b < q_k; ++b) {
                const Matrix ea = ext_embed(ext->elem(a), comp);
                const Matrix eb = ext_embed(ext->elem(b), comp);
                CHECK(ext_embed(ext->elem(ext->mul(a, b)), comp) == ea * eb);
                Matrix sum = ea;
                for (std::uint32_t i = 0; i < k; ++i) {
                    for (std::uint32_t j = 0; j < k; ++j) {
                        sum.at(i, j) = base->add(sum.at(i, j), eb.at(i, j));
                    }
                }
                CHECK(ext_embed(ext->elem(ext->add(a, b)), comp) == sum);
            }
        }
        CHECK(images.size() == q_k);
    }

    // element built from a different construction polynomial is rejected
    auto f8_other = Field::make(2, 3, {1, 0, 1, 1});
    const Matrix P3 = companion_matrix(make_poly(f2, {1, 1, 0, 1}));
    CHECK_THROWS(ext_embed(f8_other->elem(3), P3));
}
