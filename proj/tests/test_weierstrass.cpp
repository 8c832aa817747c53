#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "genusone/localfibers.hpp"

using namespace genusone;

namespace {

Poly P(const Field& K, std::vector<long long> c) { return Poly::from_ints(K, c); }

Poly random_poly(const Field& K, int deg, std::mt19937_64& rng)
{
    std::vector<Elem> c;
    for (int i = 0; i <= deg; ++i) {
        if (K.is_rationals())
            c.push_back(K.from_rational(mpq_class(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 5))));
        else
            c.push_back(K.random(rng));
    }
    return Poly(K, c);
}

WeierstrassModel random_model(const Field& K, std::mt19937_64& rng)
{
    return WeierstrassModel(random_poly(K, 1, rng), random_poly(K, 2, rng), random_poly(K, 3, rng),
                            random_poly(K, 4, rng), random_poly(K, 6, rng));
}

Field field_for(unsigned p) { return p ? Field::prime(p) : Field::rationals(); }

} // namespace

TEST_CASE("invariants of y^2 = x^3 + t over Q")
{
    Field Q = Field::rationals();
    auto m = WeierstrassModel::from_ints(Q, {}, {}, {}, {}, {0, 1});
    auto I = compute_invariants(m);
    CHECK(I.c4.is_zero());
    CHECK(I.c6 == P(Q, {0, -864}));
    CHECK(I.disc == P(Q, {0, 0, -432}));
    REQUIRE(I.j.has_value());
    CHECK(I.j->first.is_zero());
}

TEST_CASE("cuspidal cubic")
{
    auto I = compute_invariants(WeierstrassModel::from_ints(Field::rationals(), {}, {}, {}, {}, {}));
    CHECK(I.disc.is_zero());
    CHECK(I.c4.is_zero());
    CHECK_FALSE(I.j.has_value());
}

TEST_CASE("y^2 + txy - y = x^3 over F_7")
{
    Field F7 = Field::prime(7);
    auto I = compute_invariants(WeierstrassModel::from_ints(F7, {0, 1}, {}, {-1}, {}, {}));
    CHECK(I.disc == P(F7, {-27, 0, 0, -1}));
    CHECK(I.b8.is_zero());
}

TEST_CASE("property: universal identities in every characteristic")
{
    std::mt19937_64 rng(77);
    for (unsigned p : {0u, 2u, 3u, 5u, 7u}) {
        Field K = field_for(p);
        auto c = [&](long long n) { return Poly::constant(K.from_int(n)); };
        for (int i = 0; i < 100; ++i) {
            auto I = compute_invariants(random_model(K, rng));
            CHECK(c(1728) * I.disc == I.c4 * I.c4 * I.c4 - I.c6 * I.c6);
            CHECK(c(4) * I.b8 == I.b2 * I.b6 - I.b4 * I.b4);
        }
    }
}

TEST_CASE("transform")
{
    Field F7 = Field::prime(7);
    auto m = WeierstrassModel::from_ints(F7, {1}, {0, 2}, {3}, {1, 0, 1}, {0, 1});
    Poly one = P(F7, {1}), zero(F7);
    CHECK(transform(m, one, zero, zero, zero) == m);
    CHECK_THROWS_AS(transform(m, zero, zero, zero, zero), DomainError);
    CHECK_THROWS_AS(transform(m, P(F7, {1, 1}), zero, zero, zero), DomainError);

    // clearing the pole of y^2 = x^3 + 1/s at s = 0
    auto inf = model_at_infinity(WeierstrassModel::from_ints(F7, {}, {}, {}, {}, {0, 1}));
    CHECK(inf == WeierstrassModel::from_ints(F7, {}, {}, {}, {}, {0, 0, 0, 0, 0, 1}));
}

TEST_CASE("property: discriminant scales by u^-12 and transform is a group action")
{
    std::mt19937_64 rng(3);
    for (unsigned p : {0u, 2u, 3u, 5u, 7u}) {
        Field K = field_for(p);
        for (int i = 0; i < 40; ++i) {
            WeierstrassModel m = random_model(K, rng);
            auto rnd_unit = [&]() {
                Elem u;
                do
                    u = p ? K.random(rng) : K.from_int(static_cast<long long>(rng() % 7) - 3);
                while (u.is_zero());
                return Poly::constant(u);
            };
            AdmissibleChange g{rnd_unit(), random_poly(K, 2, rng), random_poly(K, 1, rng), random_poly(K, 3, rng)};
            AdmissibleChange h{rnd_unit(), random_poly(K, 2, rng), random_poly(K, 1, rng), random_poly(K, 3, rng)};
            WeierstrassModel mg = transform(m, g);
            Elem u12 = g.u.coeff(0).pow(12);
            CHECK(compute_invariants(mg).disc * u12 == compute_invariants(m).disc);
            CHECK(transform(mg, h) == transform(m, g.then(h)));
        }
    }
}

TEST_CASE("generic fiber kind")
{
    Field Q = Field::rationals();
    CHECK(generic_fiber_kind(WeierstrassModel::from_ints(Q, {}, {}, {}, {1}, {0, 1})) == GenericFiberKind::Elliptic);
    CHECK(generic_fiber_kind(WeierstrassModel::from_ints(Field::prime(3), {}, {}, {}, {}, {0, 1})) ==
          GenericFiberKind::QuasiElliptic);
    CHECK(generic_fiber_kind(WeierstrassModel::from_ints(Q, {}, {}, {}, {}, {})) == GenericFiberKind::Invalid);
    // y^2 = x^3 + t^3 in char 3 has the rational cusp (-t, 0)
    CHECK(generic_fiber_kind(WeierstrassModel::from_ints(Field::prime(3), {}, {}, {}, {}, {0, 0, 0, 1})) ==
          GenericFiberKind::Invalid);
    // y^2 = x^3 + t x in char 2: x0 = sqrt(t) is not rational
    CHECK(generic_fiber_kind(WeierstrassModel::from_ints(Field::prime(2), {}, {}, {}, {0, 1}, {})) ==
          GenericFiberKind::QuasiElliptic);
    CHECK(generic_fiber_kind(WeierstrassModel::from_ints(Field::prime(2), {}, {}, {}, {0, 0, 1}, {0, 0, 1})) ==
          GenericFiberKind::Invalid);
}

TEST_CASE("supersingular fibers by point counting")
{
    Field F2 = Field::prime(2);
    Place t0 = Place::finite(P(F2, {0, 1}));
    // y^2 + y = x^3 + 1 has 3 points over F_2
    auto ss = WeierstrassModel::from_ints(F2, {}, {}, {1}, {}, {1});
    CHECK(count_points(F2.zero(), F2.zero(), F2.one(), F2.zero(), F2.one()) == 3);
    CHECK(is_supersingular(ss, t0));
    // y^2 + xy = x^3 + 1 is ordinary
    CHECK_FALSE(is_supersingular(WeierstrassModel::from_ints(F2, {1}, {}, {}, {}, {1}), t0));

    Field F5 = Field::prime(5);
    auto m = WeierstrassModel::from_ints(F5, {}, {}, {}, {1}, {1});
    CHECK(count_points(F5.zero(), F5.zero(), F5.zero(), F5.one(), F5.one()) == 9);
    CHECK_FALSE(is_supersingular(m, Place::finite(P(F5, {0, 1}))));
    // y^2 = x^3 + 1 over F_5 is supersingular (p = 2 mod 3)
    CHECK(is_supersingular(WeierstrassModel::from_ints(F5, {}, {}, {}, {}, {1, 1}), Place::finite(P(F5, {0, 1}))));

    Field Q = Field::rationals();
    CHECK_THROWS_AS(is_supersingular(WeierstrassModel::from_ints(Q, {}, {}, {}, {1}, {1}), Place::finite(P(Q, {0, 1}))),
                    Unsupported);
    CHECK_THROWS_AS(is_supersingular(WeierstrassModel::from_ints(Field::prime(7), {}, {}, {}, {}, {0, 1}),
                                     Place::finite(P(Field::prime(7), {0, 1}))),
                    DomainError);
}

TEST_CASE("point counts agree with brute force over F_4 and F_9")
{
    std::mt19937_64 rng(8);
    for (auto K : {Field::of_order(2, 2), Field::of_order(3, 2), Field::prime(11)}) {
        for (int i = 0; i < 20; ++i) {
            Elem a[5];
            for (auto& x : a)
                x = K.random(rng);
            long long brute = 1;
            for (std::uint64_t xi = 0; xi < K.size(); ++xi)
                for (std::uint64_t yi = 0; yi < K.size(); ++yi) {
                    Elem x = K.element(xi), y = K.element(yi);
                    if (y * y + a[0] * x * y + a[2] * y == x * x * x + a[1] * x * x + a[3] * x + a[4])
                        ++brute;
                }
            CHECK(count_points(a[0], a[1], a[2], a[3], a[4]) == brute);
        }
    }
}
