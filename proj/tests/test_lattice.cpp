#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "genusone/lattice.hpp"

#include <random>
#include <set>

using namespace genusone;

namespace {

// Independent model: E8 inside (1/2 Z)^8 with the standard simple roots.  Vectors are doubled.
using Half = std::array<int, 8>;

std::vector<Half> half_integer_roots()
{
    std::vector<Half> out;
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            for (int si : {-2, 2})
                for (int sj : {-2, 2}) {
                    Half v{};
                    v[i] = si;
                    v[j] = sj;
                    out.push_back(v);
                }
    for (int mask = 0; mask < 256; ++mask) {
        if (__builtin_popcount(mask) % 2)
            continue;
        Half v;
        for (int i = 0; i < 8; ++i)
            v[i] = (mask >> i & 1) ? -1 : 1;
        out.push_back(v);
    }
    return out;
}

// Bourbaki simple roots, doubled
std::vector<Half> half_simple_roots()
{
    std::vector<Half> s(8, Half{});
    s[0] = {1, -1, -1, -1, -1, -1, -1, 1};
    s[1] = {2, 2, 0, 0, 0, 0, 0, 0};
    for (int k = 2; k < 8; ++k) {
        s[k][k - 1] = 2;
        s[k][k - 2] = -2;
    }
    return s;
}

ZMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c)
{
    ZMatrix m(r, std::vector<mpz_class>(c));
    for (auto& row : m)
        for (auto& x : row)
            x = static_cast<long>(rng() % 21) - 10;
    return m;
}

bool is_unimodular(const ZMatrix& m)
{
    auto s = smith_normal_form(m);
    for (auto& d : s.diag)
        if (d != 1)
            return false;
    return true;
}

std::vector<FiberType> fibers(std::initializer_list<const char*> labels)
{
    std::vector<FiberType> out;
    for (auto* l : labels)
        out.push_back(FiberType::parse(l));
    return out;
}

} // namespace

TEST_CASE("discriminant groups of ADE lattices")
{
    for (int n = 1; n <= 8; ++n)
        CHECK(discriminant_group(RootConfiguration({{'A', n}})) == std::vector<long>{n + 1});
    for (int n = 4; n <= 8; ++n) {
        auto expect = n % 2 ? std::vector<long>{4} : std::vector<long>{2, 2};
        CHECK(discriminant_group(RootConfiguration({{'D', n}})) == expect);
    }
    CHECK(discriminant_group(RootConfiguration({{'E', 6}})) == std::vector<long>{3});
    CHECK(discriminant_group(RootConfiguration({{'E', 7}})) == std::vector<long>{2});
    CHECK(discriminant_group(RootConfiguration({{'E', 8}})).empty());
    CHECK(discriminant_group(RootConfiguration::parse("D4+D4")) == std::vector<long>{2, 2, 2, 2});
    CHECK(discriminant_group(RootConfiguration::parse("A7+A1")) == std::vector<long>{2, 8});
    CHECK_THROWS_AS(discriminant_group(GramLattice({{1, 1}, {1, 1}})), DomainError);
    CHECK_THROWS_AS(GramLattice({{1, 2}, {0, 1}}), DomainError);
}

TEST_CASE("fiber discriminant groups agree with the root lattices")
{
    for (auto& t : FiberType::all_singular(8))
        CHECK(discriminant_group(RootConfiguration::from_fibers({t})) == normalize_group(t.disc()));
}

TEST_CASE("property: Smith normal form")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        ZMatrix A = random_matrix(rng, r, c);
        if (trial % 5 == 0)
            for (auto& x : A.back())
                x = 0;
        auto s = smith_normal_form(A);
        CHECK(z_mul(z_mul(s.U, A), s.V) == s.D);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (i != j)
                    CHECK(s.D[i][j] == 0);
        for (std::size_t k = 0; k + 1 < s.diag.size(); ++k) {
            CHECK(s.diag[k] >= 0);
            if (s.diag[k] != 0)
                CHECK(s.diag[k + 1] % s.diag[k] == 0);
            else
                CHECK(s.diag[k + 1] == 0);
        }
        CHECK(is_unimodular(s.U));
        CHECK(is_unimodular(s.V));
    }
}

TEST_CASE("group embeddings")
{
    CHECK(group_embeds({3}, {9}));
    CHECK_FALSE(group_embeds({3, 3}, {9}));
    CHECK(group_embeds({2, 2}, {2, 2, 2, 2}));
    CHECK_FALSE(group_embeds({4}, {2, 2}));
    CHECK(group_embeds({2, 4}, {2, 8}));
    CHECK_FALSE(group_embeds({4, 4}, {2, 8}));
    CHECK(group_embeds({}, {}));
    CHECK(normalize_group({2, 3}) == std::vector<long>{6});
    CHECK(normalize_group({4, 2, 1}) == std::vector<long>{2, 4});
}

TEST_CASE("parsing root configurations")
{
    auto c = RootConfiguration::parse("2A1+E6");
    CHECK(c.str() == "E6+A1+A1");
    CHECK(c.rank() == 8);
    CHECK(RootConfiguration::parse("A1 + A7") == RootConfiguration::parse("A7+A1"));
    CHECK(RootConfiguration::parse("0").rank() == 0);
    CHECK_THROWS_AS(RootConfiguration::parse("D3"), DomainError);
    CHECK_THROWS_AS(RootConfiguration::parse("E9"), DomainError);
    CHECK_THROWS_AS(RootConfiguration::parse("B2"), DomainError);
    CHECK(RootConfiguration::from_fibers(fibers({"E~8", "A~0**"})).str() == "E8");
    CHECK(RootConfiguration::from_fibers(fibers({"A~7", "A~1", "A~0*", "A~0*"})).str() == "A7+A1");
    CHECK(RootConfiguration::from_fibers(fibers({"E~7", "A~1*"})).str() == "E7+A1");
}

TEST_CASE("E8 roots against the half-integer model")
{
    const auto& R = e8_roots();
    REQUIRE(R.size() == 240);
    std::set<E8Vector> set(R.begin(), R.end());
    CHECK(set.size() == 240);
    for (auto& r : R) {
        CHECK(e8_dot(r, r) == -2);
        E8Vector neg;
        for (int i = 0; i < 8; ++i)
            neg[i] = -r[i];
        CHECK(set.count(neg) == 1);
    }

    auto half = half_integer_roots();
    REQUIRE(half.size() == 240);
    auto simple = half_simple_roots();
    // Gram of the simple roots in the model, negated
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            int s = 0;
            for (int k = 0; k < 8; ++k)
                s += simple[i][k] * simple[j][k];
            CHECK(-s / 4 == e8_gram()[i][j]);
        }
    // map each root to the model and check it lands on a root
    std::set<Half> hs(half.begin(), half.end());
    std::set<Half> image;
    for (auto& r : R) {
        Half v{};
        for (int i = 0; i < 8; ++i)
            for (int k = 0; k < 8; ++k)
                v[k] += r[i] * simple[i][k];
        CHECK(hs.count(v) == 1);
        image.insert(v);
    }
    CHECK(image.size() == 240);
}

TEST_CASE("subsystem search")
{
    auto a8 = find_subsystem(RootConfiguration::parse("A8"));
    REQUIRE(a8.has_value());
    auto g = RootConfiguration::parse("A8").gram();
    auto v = a8->vectors();
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            CHECK(e8_dot(v[i], v[j]) == g[i][j]);

    auto e8 = find_subsystem(RootConfiguration::parse("E8"));
    REQUIRE(e8.has_value());
    CHECK(quotient(*e8).torsion.empty());

    auto none = find_embeddings(RootConfiguration::parse("9A1"), 10);
    CHECK(none.found.empty());
    CHECK(none.reason.find("rank 9") != std::string::npos);

    // D7 + A1 has no embedding: the complement of D7 has no roots
    auto d7a1 = find_embeddings(RootConfiguration::parse("D7+A1"), 100);
    CHECK(d7a1.found.empty());
    CHECK(d7a1.exhaustive);
    CHECK_FALSE(find_subsystem(RootConfiguration::parse("A8+A1")).has_value());
    // the complement of E6 is A2, which has no two orthogonal roots
    CHECK_FALSE(find_subsystem(RootConfiguration::parse("E6+A1+A1")).has_value());
}

TEST_CASE("property: every embedding found reproduces the Cartan matrix")
{
    for (const char* s : {"A7+A1", "D4+D4", "E6+A2", "D6+A1+A1", "4A2", "A4+A4", "E7+A1", "8A1"}) {
        auto cfg = RootConfiguration::parse(s);
        auto g = cfg.gram();
        auto res = find_embeddings(cfg, 300);
        REQUIRE_FALSE(res.found.empty());
        for (auto& e : res.found) {
            auto v = e.vectors();
            for (std::size_t i = 0; i < v.size(); ++i)
                for (std::size_t j = 0; j < v.size(); ++j)
                    CHECK(e8_dot(v[i], v[j]) == g[i][j]);
        }
    }
}

TEST_CASE("Mordell-Weil groups from configurations")
{
    auto a8 = mw_from_config(RootConfiguration::parse("A8"), 2000);
    REQUIRE(a8.embeddable);
    REQUIRE(a8.types.size() == 1);
    CHECK(a8.types[0] == MWData{0, {3}});
    CHECK(a8.order_identity);
    CHECK(a8.mw_in_disc);
    CHECK_FALSE(a8.double_mw_in_disc); // Z/3 + Z/3 is not inside Z/9

    auto d4 = mw_from_config(RootConfiguration::parse("D4+D4"), 2000);
    REQUIRE(d4.types.size() == 1);
    CHECK(d4.types[0] == MWData{0, {2, 2}});
    CHECK(d4.double_mw_in_disc);

    auto e8 = mw_from_config(RootConfiguration::parse("E8"));
    CHECK(e8.types[0] == MWData{0, {}});

    auto e6 = mw_from_config(RootConfiguration::parse("E6"), 500);
    CHECK(e6.types[0].rank == 2);
    CHECK(e6.types[0].torsion.empty());

    auto no = mw_from_config(RootConfiguration::parse("D7+A1"));
    CHECK_FALSE(no.embeddable);
    CHECK_FALSE(no.reason.empty());
}

TEST_CASE("property: rank-8 configurations satisfy |MW|^2 = |Disc|")
{
    for (const char* s : {"E8", "D8", "A8", "E7+A1", "A7+A1", "E6+A2", "D6+A1+A1", "D4+D4", "A4+A4", "D5+A3",
                          "2A3+2A1", "4A2", "A5+A2+A1", "8A1"}) {
        auto rep = mw_from_config(RootConfiguration::parse(s), 500);
        REQUIRE(rep.embeddable);
        for (auto& t : rep.types) {
            CHECK(t.rank == 0);
            long o = group_order(t.torsion);
            CHECK(o * o == group_order(rep.disc));
            // torsion is killed by the exponent of Disc(T)
            CHECK(group_exponent(rep.disc) % group_exponent(t.torsion) == 0);
        }
        CHECK(rep.order_identity);
        CHECK(rep.mw_in_disc);
    }
}

TEST_CASE("compute_d")
{
    CHECK(compute_d(fibers({"E~8"})) == 1);
    CHECK(compute_d(fibers({"A~8", "A~0*", "A~0*", "A~0*"})) == 9);
    CHECK(compute_d(fibers({"D~4", "D~4"})) == 2);
    CHECK(compute_d(fibers({"E~6", "A~1"})) == 6);
    CHECK(compute_d(fibers({"D~5"})) == 4);
}

TEST_CASE("local contributions")
{
    CHECK(local_contribution(FiberType::parse("A~7"), 4) == 2);
    CHECK(local_contribution(FiberType::parse("D~8"), 2) == 2);
    CHECK(local_contribution(FiberType::parse("D~8"), 1) == 1);
    CHECK(local_contribution(FiberType::parse("E~6"), 1) == mpq_class(4, 3));
    CHECK(local_contribution(FiberType::parse("E~7"), 1) == mpq_class(3, 2));
    CHECK(local_contribution(FiberType::parse("A~1*"), 1) == mpq_class(1, 2));
    CHECK(local_contribution(FiberType::parse("A~2*"), 2) == mpq_class(2, 3));
    for (auto& t : FiberType::all_singular(8))
        CHECK(local_contribution(t, 0) == 0);
    CHECK_THROWS_AS(local_contribution(FiberType::parse("E~8"), 1), DomainError);
    CHECK_THROWS_AS(local_contribution(FiberType::parse("A~3"), 4), DomainError);
    CHECK(component_order(FiberType::parse("A~8"), 3) == 3);
    CHECK(component_order(FiberType::parse("D~5"), 2) == 4);
    CHECK(component_order(FiberType::parse("D~5"), 1) == 2);
}

TEST_CASE("property: A-series contributions are symmetric and maximal in the middle")
{
    for (int n = 2; n <= 9; ++n) {
        FiberType t = FiberType::I(n);
        for (int i = 1; i < n; ++i) {
            CHECK(local_contribution(t, i) == local_contribution(t, n - i));
            CHECK(local_contribution(t, i) <= local_contribution(t, n / 2));
            CHECK(local_contribution(t, i) > 0);
        }
    }
}

TEST_CASE("torsion fiber scan, one special fiber")
{
    auto s = torsion_fiber_scan(1);
    std::set<std::pair<std::string, int>> got;
    for (auto& e : s)
        got.insert({e.fibers[0].dynkin(), e.order});
    CHECK(got == std::set<std::pair<std::string, int>>{{"A~7", 2}, {"A~8", 3}, {"D~8", 2}});
    CHECK(s.size() == 3);
    for (auto& e : s)
        CHECK(e.fibers[0].dynkin() != "E~8");
}

TEST_CASE("torsion fiber scan, two special fibers")
{
    auto s = torsion_fiber_scan(2);
    std::set<std::string> additive, other;
    for (auto& e : s)
        (e.additive ? additive : other).insert(e.fibers[0].dynkin() + "," + e.fibers[1].dynkin());
    CHECK(additive == std::set<std::string>{"D~4,D~4", "D~6,A~1*", "E~7,A~1*", "D~8,A~0**"});
    CHECK(other == std::set<std::string>{"D~8,A~0"});
    for (auto& e : s)
        CHECK(e.order == 2);
    CHECK_THROWS_AS(torsion_fiber_scan(3), DomainError);
}
