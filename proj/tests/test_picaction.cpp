#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "genusone/picaction.hpp"

#include <random>

using namespace genusone;

namespace {

DivisorClass cls(std::array<long long, 10> c)
{
    DivisorClass d;
    d.c = c;
    return d;
}

DivisorClass random_class(std::mt19937_64& rng, int bound = 6)
{
    DivisorClass d;
    for (auto& x : d.c)
        x = static_cast<long long>(rng() % (2 * bound + 1)) - bound;
    return d;
}

// A root of K^perp: a random Weyl image of a simple root.
DivisorClass random_root(std::mt19937_64& rng)
{
    auto simple = e9_simple_roots();
    DivisorClass a = simple[rng() % simple.size()];
    int steps = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < steps; ++i)
        a = reflection(simple[rng() % simple.size()])(a);
    return a;
}

DivisorClass random_in_root_span(std::mt19937_64& rng)
{
    DivisorClass a;
    int n = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i)
        a = a + (static_cast<long long>(rng() % 5) - 2) * random_root(rng);
    return a;
}

} // namespace

TEST_CASE("fiber class")
{
    DivisorClass F0 = fiber_class(1), K = canonical_class();
    CHECK(dot(F0, F0) == 0);
    CHECK(dot(F0, K) == 0);
    CHECK(dot(K, K) == 0);
    CHECK(dot(F0, DivisorClass::e(9)) == 1);
    CHECK(fiber_class(3) == 3 * F0);
    CHECK(F0 == -K);
    CHECK_THROWS_AS(fiber_class(0), DomainError);
}

TEST_CASE("translation formula examples")
{
    DivisorClass F0 = fiber_class(1);
    DivisorClass A = DivisorClass::e(1) - DivisorClass::e(2);
    auto r = tau(A, 1, DivisorClass::e(0));
    CHECK(r == cls({10, 0, -6, -3, -3, -3, -3, -3, -3, -3}));
    CHECK(dot(r, r) == 1);
    CHECK(dot(r, canonical_class()) == dot(DivisorClass::e(0), canonical_class()));
    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) {
        DivisorClass D = random_class(rng);
        CHECK(tau(DivisorClass{}, 3, D) == D);
    }
    CHECK(tau(A, 4, F0) == F0);
    CHECK_THROWS_AS(tau(DivisorClass::e(9), 1, DivisorClass::e(0)), DomainError);
    CHECK_THROWS_AS(tau(A, 0, DivisorClass::e(0)), DomainError);
}

TEST_CASE("reflections")
{
    DivisorClass a = DivisorClass::e(1) - DivisorClass::e(2);
    auto s = reflection(a);
    CHECK(s(a) == -a);
    CHECK(s * s == PicIsometry::identity());
    CHECK(s.preserves_form());
    CHECK_THROWS_AS(reflection(DivisorClass::e(1)), DomainError);
    CHECK_FALSE(acts_trivially_on_e8_quotient(s));
    CHECK(acts_trivially_on_e8_quotient(PicIsometry::identity()));
    CHECK_THROWS_AS(acts_trivially_on_e8_quotient(reflection(DivisorClass::e(0) - DivisorClass::e(1) - DivisorClass::e(2))),
                    DomainError);
}

TEST_CASE("Eichler transvections")
{
    CHECK(eichler(DivisorClass{}) == PicIsometry::identity());
    CHECK_THROWS_AS(eichler(DivisorClass::e(1)), DomainError);
    std::mt19937_64 rng(2);
    DivisorClass F0 = fiber_class(1);
    for (int i = 0; i < 200; ++i) {
        DivisorClass v = random_in_root_span(rng);
        auto g = eichler(v);
        CHECK(g.preserves_form());
        CHECK(g.fixes(canonical_class()));
        CHECK(acts_trivially_on_e8_quotient(g));
        DivisorClass x = random_in_root_span(rng);
        // on K^perp: x -> x - <x, v> F0
        CHECK(g(x) - x == (-dot(x, v)) * F0);
    }
}

TEST_CASE("splitting basis spans K^perp")
{
    auto B = e8_splitting_basis();
    REQUIRE(B.size() == 9);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) {
            long long expect = i == j ? -2 : 0;
            long long d = dot(B[i], B[j]);
            if (i != j)
                CHECK((d == 0 || d == 1));
            else
                CHECK(d == expect);
        }
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        DivisorClass x = random_in_root_span(rng) + (static_cast<long long>(rng() % 7) - 3) * fiber_class(1);
        auto c = splitting_coordinates(x);
        DivisorClass back;
        for (int k = 0; k < 9; ++k)
            back = back + c[k] * B[k];
        CHECK(back == x);
    }
    CHECK_THROWS_AS(splitting_coordinates(DivisorClass::e(0)), DomainError);
}

TEST_CASE("property: translations")
{
    std::mt19937_64 rng(2025);
    DivisorClass F0 = fiber_class(1), K = canonical_class();
    for (int trial = 0; trial < 1000; ++trial) {
        DivisorClass A = random_in_root_span(rng), B = random_in_root_span(rng);
        long long m = 1 + static_cast<long long>(rng() % 4);
        auto T = tau_matrix(A, m);
        CHECK(T.preserves_form());
        CHECK(T.fixes(K));
        // well defined on the class of A modulo F0
        long long k = static_cast<long long>(rng() % 11) - 5;
        CHECK(tau_matrix(A + k * F0, m) == T);
        // homomorphism
        CHECK(tau_matrix(A, m) * tau_matrix(B, m) == tau_matrix(A + B, m));
        // on K^perp only a multiple of F0 is added; with the sign of the full formula it is -m <A, x>
        DivisorClass x = random_in_root_span(rng);
        CHECK(T(x) == x - (m * dot(A, x)) * F0);
        CHECK(acts_trivially_on_e8_quotient(T));
        CHECK(congruent_to_identity(T, m));
    }
}

TEST_CASE("property: reflection products give translations")
{
    std::mt19937_64 rng(11);
    DivisorClass F0 = fiber_class(1);
    for (int trial = 0; trial < 20; ++trial) {
        DivisorClass a = random_root(rng);
        REQUIRE(dot(a, a) == -2);
        REQUIRE(dot(a, F0) == 0);
        DivisorClass a2 = -F0 - a;
        // s_a first, then s_a'
        PicIsometry prod = reflection(a2) * reflection(a);
        for (long long m = 1; m <= 3; ++m)
            CHECK(prod.pow(static_cast<int>(m)) == tau_matrix(a, m));
        for (int i = 0; i < 20; ++i) {
            DivisorClass D = random_class(rng);
            CHECK(prod(D) == tau(a, 1, D));
        }
    }
}

TEST_CASE("multiples of a translation act trivially on the quotient")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        DivisorClass A = random_in_root_span(rng);
        for (long long d : {1, 2, 3})
            CHECK(acts_trivially_on_e8_quotient(tau_matrix(d * A, 2)));
    }
}
