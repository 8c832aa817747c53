#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "genusone/commands.hpp"

using namespace genusone;

namespace {

void round_trip(const Report& r)
{
    std::string a = r.to_json();
    Report back = Report::from_json(a);
    CHECK(back == r);
    CHECK(back.to_json() == a);
}

} // namespace

TEST_CASE("model files")
{
    auto f = ModelFile::parse(R"({"p": 5, "a2": [-2, 0, 2], "a4": ["-lambda"], "params": {"lambda": 3}})");
    CHECK(f.model() == instantiate_case(22, 5, {{"lambda", 3}}));
    CHECK(ModelFile::parse(f.to_json()).model() == f.model());

    auto q = ModelFile::parse(R"({"p": 0, "a4": ["-1/3"], "a6": [0, 1]})");
    CHECK(q.model().a4.coeff(0) == Field::rationals().from_rational(mpq_class(-1, 3)));

    CHECK_THROWS_AS(ModelFile::parse(R"({"p": 7, "a5": [1]})"), DomainError);
    CHECK_THROWS_AS(ModelFile::parse(R"({"p": 8, "a6": [0, 1]})"), DomainError);
    CHECK_THROWS_AS(ModelFile::parse(R"({"a6": [0, 1]})"), DomainError);
    CHECK_THROWS_AS(ModelFile::parse(R"({"p": 7, "a6": [1.5]})"), DomainError);
    CHECK_THROWS_AS(ModelFile::parse(R"({"p": 7, "a6": ["1/7"]})"), DomainError);
    CHECK_THROWS_AS(ModelFile::parse(R"({"p": 7, "a6": ["t"]})"), DomainError);
    CHECK_THROWS_AS(ModelFile::parse(R"({"p": 7})"), DomainError); // y^2 = x^3 is singular
    CHECK_THROWS_AS(ModelFile::parse("{"), DomainError);
}

TEST_CASE("reports round-trip")
{
    auto model = ModelFile::parse(R"({"p": 7, "a6": [0, 0, 0, 0, 0, 0, 0, 1]})");
    Report c = run_classify(model, 3);
    CHECK(c.status == "pass");
    CHECK(c.euler_sum == 12);
    // non-minimal at t: reported, not an error
    REQUIRE_FALSE(c.notes.empty());
    CHECK(c.notes[0].find("minimalized at t") != std::string::npos);
    round_trip(c);

    round_trip(run_invariants(model, 0));
    round_trip(run_mw_fibers("E~8,A~0*,A~0*", 1));
    round_trip(run_verify_nonjacobian(std::string("4''"), 0));
    round_trip(run_enumerate_extremal(3, 0));
    round_trip(run_torsion_scan(2, 0));
    round_trip(run_enriques("D", 0));
    CaseSweep s;
    s.id = 21;
    s.p = 7;
    Report v = run_verify_case(s, 9);
    CHECK(v.status == "fail");
    CHECK(v.exit_code() == 1);
    round_trip(v);

    CHECK_THROWS(Report::from_json(R"({"version": 1, "command": "act", "seed": "0", "status": "pass", "x": 1})"));
    CHECK_THROWS(Report::from_json(R"({"version": 1, "command": "act", "seed": "0", "status": "maybe"})"));
}

TEST_CASE("command outcomes")
{
    CaseSweep s;
    s.id = 1;
    s.p = 7;
    CHECK(run_verify_case(s, 0).exit_code() == 0);
    s.id = 2;
    s.p = 0;
    CHECK(run_verify_case(s, 0).exit_code() == 2);
    s.p = 2;
    CHECK_THROWS_AS(run_verify_case(s, 0), ConstraintError);

    Report a = run_act(1, {0, 1, -1, 0, 0, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0, 0, 0, 0, 0}, 0);
    CHECK(a.items.at(0).attrs.at("class") == "10,0,-6,-3,-3,-3,-3,-3,-3,-3");
    CHECK_THROWS_AS(run_act(1, {0, 1}, {1}, 0), DomainError);
    CHECK_THROWS_AS(run_act(1, {0, 0, 0, 0, 0, 0, 0, 0, 0, 1}, {1, 0, 0, 0, 0, 0, 0, 0, 0, 0}, 0), DomainError);

    CHECK(run_mw_fibers("D4+D4", 0).status == "pass");
    CHECK(run_mw_fibers("A~8", 0).status == "fail"); // the literal MW + MW check
    CHECK(run_mw_fibers("E~8,E~8", 0).status == "fail");

    // the seed only drives factorization; results do not depend on it
    auto model = ModelFile::parse(R"({"p": 13, "a1": [0, 1], "a3": [-1]})");
    Report r1 = run_classify(model, 1), r2 = run_classify(model, 987654321);
    r2.seed = 1;
    CHECK(r1 == r2);
}
