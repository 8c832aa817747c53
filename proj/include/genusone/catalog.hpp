#pragma once

#include "genusone/lattice.hpp"
#include "genusone/localfibers.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace genusone {

struct ConstraintError : DomainError {
    using DomainError::DomainError;
};

// Allowed characteristics: an empty constraint admits every p (0 included).
struct CharConstraint {
    std::vector<unsigned> eq;  // p must be one of these
    std::vector<unsigned> neq; // p must avoid these
    bool admits(unsigned p) const;
    std::string str() const; // "any", "= 3", "!= 2,3"
};

// Symbolic group descriptor: Z/n, products "A x B", Q8, mu_n, G_a, G_m, Aff,
// "G_a : Z/5" (semidirect), "(Z/2)^2 . G_a" (opaque extension), id.
struct GroupDesc {
    enum Kind { Trivial, Cyclic, Mu, Q8, Ga, Gm, Aff, Product, Semidirect, Opaque };
    Kind kind = Trivial;
    long n = 1; // Cyclic, Mu
    std::vector<GroupDesc> factors; // Product, Semidirect (normal part first), Opaque (sub, quotient)
    std::string label;

    static GroupDesc parse(const std::string& s);
    bool finite() const;
    // Order of a finite group (for mu_n: the order of the group scheme).
    std::optional<long> order() const;
    // Exponent, when finite.
    std::optional<long> exponent() const;
    std::string str() const { return label; }
};

// H is a subgroup (scheme) of G in characteristic p.  Decided for the vocabulary above;
// opaque extensions only accept p-groups whose exponent divides the declared one.
bool group_contains(const GroupDesc& G, const GroupDesc& H, unsigned p);

struct CaseErrata {
    std::map<std::string, std::string> eq; // replaces the listed coefficients
    std::optional<std::vector<long>> exclude;
    std::string note;
};

struct CatalogCase {
    int id = 0;
    std::vector<std::string> fibers;
    std::string kind; // "e", "qe", "e/qe"
    std::vector<unsigned> qe_primes; // for "e/qe": where the model is quasi-elliptic
    std::map<std::string, std::string> eq; // a1..a6 as expressions in t and the parameters
    std::vector<std::string> params;
    std::vector<long> exclude; // forbidden parameter values
    std::string aut_dagger, aut;
    int moduli = 0;
    CharConstraint p;
    std::optional<CaseErrata> errata;

    bool quasi_elliptic_at(unsigned p) const;
    int rank() const; // sum of (b - 1) over the listed fibers
    bool extremal() const { return rank() == 8; }
};

struct AutSpec {
    std::vector<int> cases;
    std::string t, x, y;
    std::map<int, long> i_by_case; // value of the exponent i, when used
    std::string at_infinity;
    bool uses(const std::string& name) const;
};

struct MultipleFiber {
    std::string m; // "2", "3", "p" or "m" (any m prime to p)
    bool coprime = false;
    FiberType type;
    std::string str() const;
};

struct NonJacobianRow {
    std::string id;
    int parent = 0;
    std::vector<std::string> fibers;
    MultipleFiber multiple;
    std::string kind;
    std::string aut_dagger, aut;
    int moduli = 0;
    CharConstraint p;
    bool mw_translations = false;
};

struct Table1Row {
    CharConstraint p;
    std::vector<std::vector<std::string>> options;
};

struct Table1Entry {
    std::string fiber;
    std::vector<Table1Row> rows;
};

struct EnriquesEdge {
    int a = 0, b = 0, weight = 1;
};

struct EnriquesConfig {
    std::string label;
    std::vector<std::pair<int, int>> vertices; // diagram coordinates
    std::vector<EnriquesEdge> edges;
    std::string aut_nt, aut_ct;
    std::vector<std::string> double_fibers;
    int moduli = 0;
    std::vector<std::string> named;
};

struct Catalog {
    int version = 0;
    std::vector<Table1Entry> table1;
    std::vector<CatalogCase> table2;
    std::vector<AutSpec> table3;
    std::vector<NonJacobianRow> table4;
    std::vector<EnriquesConfig> enriques;
    std::vector<std::string> enriques_allowed;

    static Catalog parse(const std::string& json_text);
    static const Catalog& builtin();

    const CatalogCase& case_by_id(int id) const;
    const NonJacobianRow& nonjacobian(const std::string& id) const;
    const EnriquesConfig& enriques_config(const std::string& label) const;
    std::vector<const AutSpec*> automorphisms_of(int id) const;
};

using Params = std::map<std::string, long>;

// Throws ConstraintError naming the violated clause.
WeierstrassModel instantiate_case(int id, unsigned p, const Params& params = {}, bool errata = false);
WeierstrassModel instantiate_case(const CatalogCase& c, const Field& K, const Params& params, bool errata = false);
// Parameter values allowed by the row (or its erratum), for a sweep over F_p.
std::vector<long> admissible_values(const CatalogCase& c, unsigned p, bool errata = false);

enum class CheckStatus { Pass, Fail, Inconclusive, Skipped };
std::string to_string(CheckStatus s);
CheckStatus check_status_from_string(const std::string& s);

struct Check {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string detail;
};

struct Verdict {
    std::string subject; // "case 12", "row 4''"
    unsigned p = 0;
    Params params;
    bool errata = false;
    std::vector<std::string> fibers; // observed, when classified
    std::vector<Check> checks;
    CheckStatus overall() const;
    const Check* find(const std::string& name) const;
};

struct VerifyOptions {
    bool errata = false;
    bool automorphisms = true;
    std::uint64_t seed = 0;
};

Verdict verify_case(int id, unsigned p, const Params& params = {}, const VerifyOptions& opt = {});

struct AutCheck {
    bool preserved = false;
    Elem factor; // F(t', x', y') = factor * F
    long base_order = 0;
    std::string detail;
};

// Substitution of an AutSpec into the row's equation over K with the given constants.
AutCheck apply_automorphism(const AutSpec& a, const CatalogCase& c, const Field& K, const Params& params,
                            const std::map<std::string, Elem>& constants, bool errata = false);
// Runs the Table 3 checks for one row over F_p (or F_{p^2} when a constant is missing).
std::vector<Check> check_automorphisms(const CatalogCase& c, unsigned p, const Params& params, bool errata = false);

Verdict verify_nonjacobian_row(const NonJacobianRow& row);
Verdict verify_nonjacobian_row(const std::string& id);

struct ExtremalCandidate {
    std::vector<FiberType> fibers; // sorted, largest first
    bool quasi_elliptic = false;
    int euler = 0; // sum of e_t; 12 - euler is left for wild terms
    std::string big_fiber; // fiber that puts it under the Table 1 rule, if any
    bool in_table1 = false;
    std::string str() const;
};

struct ExtremalEnumeration {
    unsigned p = 0;
    std::vector<ExtremalCandidate> candidates; // every multiset passing rank, Euler and E8 tests
    std::vector<ExtremalCandidate> output;     // after intersecting with Table 1
    std::vector<std::string> table1_missing;   // extremal Table 1 rows not generated
};

ExtremalEnumeration enumerate_extremal(unsigned p);

struct AffineSubdiagram {
    std::string type; // "E~8", "A~1" (double edge), ...
    std::vector<int> vertices;
};

// Connected induced subgraphs of affine ADE type.
std::vector<AffineSubdiagram> affine_subdiagrams(int n, const std::vector<EnriquesEdge>& edges);
std::vector<AffineSubdiagram> enriques_subdiagram_scan(const EnriquesConfig& cfg);

struct EnriquesReport {
    std::string label;
    std::vector<AffineSubdiagram> found;
    std::vector<std::string> missing_named;  // named types not found
    std::vector<std::string> contradicting;  // types with >= 5 vertices outside the allowed list
    std::vector<std::string> unnamed;        // allowed types found but not named
};

EnriquesReport enriques_report(const std::string& label);

} // namespace genusone
