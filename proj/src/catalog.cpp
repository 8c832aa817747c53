#include "genusone/catalog.hpp"
#include "genusone/expr.hpp"

#include "json.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace genusone {

extern const char* const kCatalogJson;

using json = nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& v, const std::string& sep)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? sep : "") + v[i];
    return s;
}

template <class T>
std::string join_nums(const std::vector<T>& v)
{
    std::vector<std::string> s;
    for (auto x : v)
        s.push_back(std::to_string(x));
    return join(s, ",");
}

std::string trim(const std::string& s)
{
    std::size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<std::string> sorted(std::vector<std::string> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

// v_l(n)
int valuation(long n, long l)
{
    int k = 0;
    while (n % l == 0) {
        n /= l;
        ++k;
    }
    return k;
}

std::vector<long> prime_divisors(long n)
{
    std::vector<long> out;
    for (long q = 2; q * q <= n; ++q)
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0)
                n /= q;
        }
    if (n > 1)
        out.push_back(n);
    return out;
}

} // namespace

// ------------------------------------------------------------------ characteristic

bool CharConstraint::admits(unsigned p) const
{
    if (!eq.empty() && std::find(eq.begin(), eq.end(), p) == eq.end())
        return false;
    return std::find(neq.begin(), neq.end(), p) == neq.end();
}

std::string CharConstraint::str() const
{
    if (!eq.empty())
        return "= " + join_nums(eq);
    if (!neq.empty())
        return "!= " + join_nums(neq);
    return "any";
}

// ------------------------------------------------------------------ groups

namespace {

std::vector<std::string> split_top(const std::string& s, const std::string& sep)
{
    std::vector<std::string> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(')
            ++depth;
        else if (s[i] == ')')
            --depth;
        else if (depth == 0 && s.compare(i, sep.size(), sep) == 0) {
            parts.push_back(trim(s.substr(start, i - start)));
            start = i + sep.size();
            i = start - 1;
        }
    }
    parts.push_back(trim(s.substr(start)));
    return parts;
}

long parse_count(const std::string& s, const std::string& whole)
{
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 9)
        throw DomainError("bad group descriptor '" + whole + "'");
    return std::stol(s);
}

} // namespace

GroupDesc GroupDesc::parse(const std::string& raw)
{
    std::string s = trim(raw);
    GroupDesc g;
    g.label = s;
    if (s.empty())
        throw DomainError("empty group descriptor");
    if (auto parts = split_top(s, " x "); parts.size() > 1) {
        g.kind = Product;
        for (auto& q : parts)
            g.factors.push_back(parse(q));
        return g;
    }
    if (auto parts = split_top(s, ":"); parts.size() == 2) {
        g.kind = Semidirect;
        g.factors = {parse(parts[0]), parse(parts[1])};
        return g;
    }
    if (auto parts = split_top(s, " . "); parts.size() == 2) {
        g.kind = Opaque;
        g.factors = {parse(parts[0]), parse(parts[1])};
        return g;
    }
    if (s.front() == '(') {
        std::size_t close = s.find(')');
        if (close == std::string::npos || close + 1 >= s.size() || s[close + 1] != '^')
            throw DomainError("bad group descriptor '" + raw + "'");
        GroupDesc inner = parse(s.substr(1, close - 1));
        long k = parse_count(s.substr(close + 2), raw);
        g.kind = Product;
        for (long i = 0; i < k; ++i)
            g.factors.push_back(inner);
        return g;
    }
    if (s == "id" || s == "1" || s == "0") {
        g.kind = Trivial;
        return g;
    }
    if (s.rfind("Z/", 0) == 0) {
        g.kind = Cyclic;
        g.n = parse_count(s.substr(2), raw);
        if (g.n == 1)
            g.kind = Trivial;
        return g;
    }
    if (s.rfind("mu_", 0) == 0) {
        g.kind = Mu;
        g.n = parse_count(s.substr(3), raw);
        return g;
    }
    if (s == "Q8") {
        g.kind = Q8;
        return g;
    }
    if (s == "G_a") {
        g.kind = Ga;
        return g;
    }
    if (s == "G_m") {
        g.kind = Gm;
        return g;
    }
    if (s == "Aff") {
        g.kind = Aff;
        return g;
    }
    throw DomainError("unknown group descriptor '" + raw + "'");
}

bool GroupDesc::finite() const { return order().has_value(); }

std::optional<long> GroupDesc::order() const
{
    switch (kind) {
    case Trivial: return 1;
    case Cyclic:
    case Mu: return n;
    case Q8: return 8;
    case Ga:
    case Gm:
    case Aff: return std::nullopt;
    case Product:
    case Semidirect:
    case Opaque: {
        long o = 1;
        for (auto& f : factors) {
            auto fo = f.order();
            if (!fo)
                return std::nullopt;
            o *= *fo;
        }
        return o;
    }
    }
    return std::nullopt;
}

std::optional<long> GroupDesc::exponent() const
{
    switch (kind) {
    case Trivial: return 1;
    case Cyclic:
    case Mu: return n;
    case Q8: return 4;
    case Product: {
        long e = 1;
        for (auto& f : factors) {
            auto fe = f.exponent();
            if (!fe)
                return std::nullopt;
            e = std::lcm(e, *fe);
        }
        return e;
    }
    default: return std::nullopt;
    }
}

namespace {

// A finite subgroup scheme to be placed: etale abelian part, infinitesimal mu_{p^k}, Q8 flag.
struct FiniteShape {
    std::vector<long> etale;
    long mu_inf = 1;
    bool q8 = false;
    bool ok = true; // false when H is not finite
};

void add_shape(FiniteShape& s, const GroupDesc& h, unsigned p)
{
    switch (h.kind) {
    case GroupDesc::Trivial: return;
    case GroupDesc::Cyclic: s.etale.push_back(h.n); return;
    case GroupDesc::Mu: {
        long n = h.n, pk = 1;
        while (p > 1 && n % p == 0) {
            n /= p;
            pk *= p;
        }
        if (n > 1)
            s.etale.push_back(n);
        s.mu_inf *= pk;
        return;
    }
    case GroupDesc::Q8: s.q8 = true; return;
    case GroupDesc::Product:
        for (auto& f : h.factors)
            add_shape(s, f, p);
        return;
    default: s.ok = false;
    }
}

bool abelian_factor(const GroupDesc& g)
{
    switch (g.kind) {
    case GroupDesc::Trivial:
    case GroupDesc::Cyclic:
    case GroupDesc::Mu:
    case GroupDesc::Ga:
    case GroupDesc::Gm: return true;
    case GroupDesc::Product:
        return std::all_of(g.factors.begin(), g.factors.end(), abelian_factor);
    default: return false;
    }
}

void flatten(const GroupDesc& g, std::vector<GroupDesc>& out)
{
    if (g.kind == GroupDesc::Product)
        for (auto& f : g.factors)
            flatten(f, out);
    else
        out.push_back(g);
}

constexpr int kUnbounded = 1 << 20;

// Does a direct product of cyclic / mu / G_a / G_m factors contain the etale abelian group H?
bool slots_contain(const std::vector<GroupDesc>& G, const std::vector<long>& H, unsigned p)
{
    long order = 1;
    for (long h : H)
        order *= h;
    for (long l : prime_divisors(order)) {
        std::vector<int> need;
        for (long h : H)
            if (int v = valuation(h, l); v > 0)
                need.push_back(v);
        std::sort(need.rbegin(), need.rend());
        std::vector<int> have;
        bool many_ones = false;
        for (auto& g : G) {
            switch (g.kind) {
            case GroupDesc::Cyclic:
                if (int v = valuation(g.n, l); v > 0)
                    have.push_back(v);
                break;
            case GroupDesc::Mu:
                if (static_cast<long>(p) != l)
                    if (int v = valuation(g.n, l); v > 0)
                        have.push_back(v);
                break;
            case GroupDesc::Gm:
                if (static_cast<long>(p) != l)
                    have.push_back(kUnbounded);
                break;
            case GroupDesc::Ga:
                if (static_cast<long>(p) == l)
                    many_ones = true;
                break;
            default: break;
            }
        }
        std::sort(have.rbegin(), have.rend());
        for (std::size_t i = 0; i < need.size(); ++i) {
            int slot = i < have.size() ? have[i] : (many_ones ? 1 : 0);
            if (need[i] > slot)
                return false;
        }
    }
    return true;
}

bool infinitesimal_fits(const std::vector<GroupDesc>& G, long mu_inf, unsigned p)
{
    if (mu_inf == 1)
        return true;
    for (auto& g : G) {
        if (g.kind == GroupDesc::Gm)
            return true;
        if (g.kind == GroupDesc::Mu && valuation(g.n, p) >= valuation(mu_inf, p))
            return true;
    }
    return false;
}

bool positive_dimensional_in(const GroupDesc& G, const GroupDesc& H)
{
    if (G.label == H.label)
        return true;
    switch (G.kind) {
    case GroupDesc::Aff: return H.kind == GroupDesc::Ga || H.kind == GroupDesc::Gm;
    case GroupDesc::Product:
    case GroupDesc::Semidirect:
        return std::any_of(G.factors.begin(), G.factors.end(),
                           [&](const GroupDesc& f) { return positive_dimensional_in(f, H); });
    case GroupDesc::Opaque: return positive_dimensional_in(G.factors[1], H);
    default: return false;
    }
}

} // namespace

bool group_contains(const GroupDesc& G, const GroupDesc& H, unsigned p)
{
    if (H.kind == GroupDesc::Trivial || G.label == H.label)
        return true;
    FiniteShape h;
    add_shape(h, H, p);
    if (!h.ok)
        return (H.kind == GroupDesc::Ga || H.kind == GroupDesc::Gm) && positive_dimensional_in(G, H);

    switch (G.kind) {
    case GroupDesc::Trivial: return false;
    case GroupDesc::Q8: {
        if (h.mu_inf != 1)
            return false;
        if (h.q8)
            return h.etale.empty();
        auto e = normalize_group(h.etale);
        return e.size() <= 1 && (e.empty() || 4 % e[0] == 0);
    }
    case GroupDesc::Aff:
        return group_contains(GroupDesc::parse("G_m"), H, p) || group_contains(GroupDesc::parse("G_a"), H, p);
    case GroupDesc::Semidirect:
        return group_contains(G.factors[0], H, p) || group_contains(G.factors[1], H, p);
    case GroupDesc::Opaque: {
        // only order and exponent are known
        auto ho = H.order(), he = H.exponent();
        if (!ho || !he || p == 0 || h.mu_inf != 1)
            return false;
        auto se = G.factors[0].exponent();
        long qe = G.factors[1].kind == GroupDesc::Ga ? static_cast<long>(p) : G.factors[1].exponent().value_or(0);
        if (!se || qe == 0)
            return false;
        long bound = *se * qe;
        for (long q : prime_divisors(*ho))
            if (q != static_cast<long>(p) && (*G.factors[0].order()) % q != 0)
                return false;
        return bound % *he == 0;
    }
    default: break;
    }

    std::vector<GroupDesc> fs;
    flatten(G, fs);
    if (!abelian_factor(G)) {
        // mixed product: H must sit inside a single factor
        return std::any_of(fs.begin(), fs.end(), [&](const GroupDesc& f) { return group_contains(f, H, p); });
    }
    if (h.q8)
        return false;
    if (p == 0 && h.mu_inf != 1)
        return false;
    return slots_contain(fs, h.etale, p) && infinitesimal_fits(fs, h.mu_inf, p);
}

// ------------------------------------------------------------------ catalog data

bool CatalogCase::quasi_elliptic_at(unsigned q) const
{
    if (kind == "qe")
        return true;
    return std::find(qe_primes.begin(), qe_primes.end(), q) != qe_primes.end();
}

int CatalogCase::rank() const
{
    int r = 0;
    for (auto& f : fibers)
        r += FiberType::parse(f).rank();
    return r;
}

bool AutSpec::uses(const std::string& name) const
{
    for (const std::string* s : {&t, &x, &y}) {
        std::size_t pos = 0;
        while ((pos = s->find(name, pos)) != std::string::npos) {
            bool left = pos == 0 || !std::isalnum(static_cast<unsigned char>((*s)[pos - 1]));
            std::size_t end = pos + name.size();
            bool right = end >= s->size() || !std::isalnum(static_cast<unsigned char>((*s)[end]));
            if (left && right)
                return true;
            pos = end;
        }
    }
    return false;
}

std::string MultipleFiber::str() const
{
    std::string s = m + type.dynkin();
    if (coprime)
        s += ", (m,p) = 1";
    return s;
}

namespace {

CharConstraint char_from(const json& j)
{
    CharConstraint c;
    if (j.contains("eq"))
        c.eq = j.at("eq").get<std::vector<unsigned>>();
    if (j.contains("neq"))
        c.neq = j.at("neq").get<std::vector<unsigned>>();
    return c;
}

std::map<std::string, std::string> eq_from(const json& j)
{
    std::map<std::string, std::string> eq;
    for (auto& [k, v] : j.items()) {
        if (k != "a1" && k != "a2" && k != "a3" && k != "a4" && k != "a6")
            throw DomainError("catalog: unknown coefficient " + k);
        eq[k] = v.get<std::string>();
    }
    return eq;
}

int parent_of(const std::string& id)
{
    std::size_t k = 0;
    while (k < id.size() && std::isdigit(static_cast<unsigned char>(id[k])))
        ++k;
    if (k == 0)
        throw DomainError("catalog: row id '" + id + "' has no number");
    return std::stoi(id.substr(0, k));
}

} // namespace

Catalog Catalog::parse(const std::string& text)
{
    json j = json::parse(text);
    Catalog c;
    c.version = j.at("version").get<int>();
    for (auto& e : j.at("table1")) {
        Table1Entry t;
        t.fiber = e.at("fiber").get<std::string>();
        for (auto& r : e.at("rows"))
            t.rows.push_back({char_from(r.at("p")), r.at("options").get<std::vector<std::vector<std::string>>>()});
        c.table1.push_back(std::move(t));
    }
    for (auto& e : j.at("table2")) {
        CatalogCase k;
        k.id = e.at("id").get<int>();
        k.fibers = e.at("fibers").get<std::vector<std::string>>();
        k.kind = e.at("kind").get<std::string>();
        k.qe_primes = e.value("qe_primes", std::vector<unsigned>{});
        k.eq = eq_from(e.at("eq"));
        k.params = e.value("params", std::vector<std::string>{});
        k.exclude = e.value("exclude", std::vector<long>{});
        k.aut_dagger = e.at("aut_dagger").get<std::string>();
        k.aut = e.at("aut").get<std::string>();
        k.moduli = e.at("moduli").get<int>();
        k.p = char_from(e.at("p"));
        if (e.contains("errata")) {
            auto& er = e.at("errata");
            CaseErrata ce;
            ce.eq = eq_from(er.at("eq"));
            if (er.contains("exclude"))
                ce.exclude = er.at("exclude").get<std::vector<long>>();
            ce.note = er.value("note", "");
            k.errata = ce;
        }
        for (auto& f : k.fibers)
            FiberType::parse(f);
        c.table2.push_back(std::move(k));
    }
    for (auto& e : j.at("table3")) {
        AutSpec a;
        a.cases = e.at("cases").get<std::vector<int>>();
        a.t = e.at("t").get<std::string>();
        a.x = e.at("x").get<std::string>();
        a.y = e.at("y").get<std::string>();
        if (e.contains("i"))
            for (auto& [k, v] : e.at("i").items())
                a.i_by_case[std::stoi(k)] = v.get<long>();
        a.at_infinity = e.value("at_infinity", "");
        c.table3.push_back(std::move(a));
    }
    for (auto& e : j.at("table4")) {
        NonJacobianRow r;
        r.id = e.at("id").get<std::string>();
        r.parent = e.value("parent", parent_of(r.id));
        r.fibers = e.at("fibers").get<std::vector<std::string>>();
        auto& m = e.at("multiple");
        r.multiple.m = m.at("m").is_string() ? m.at("m").get<std::string>() : std::to_string(m.at("m").get<int>());
        r.multiple.coprime = m.value("coprime", false);
        r.multiple.type = FiberType::parse(m.at("type").get<std::string>());
        r.kind = e.at("kind").get<std::string>();
        r.aut_dagger = e.at("aut_dagger").get<std::string>();
        r.aut = e.at("aut").get<std::string>();
        r.moduli = e.at("moduli").get<int>();
        r.p = char_from(e.at("p"));
        r.mw_translations = e.value("mw_translations", false);
        c.table4.push_back(std::move(r));
    }
    for (auto& e : j.at("enriques")) {
        EnriquesConfig g;
        g.label = e.at("label").get<std::string>();
        for (auto& v : e.at("vertices"))
            g.vertices.emplace_back(v.at(0).get<int>(), v.at(1).get<int>());
        for (auto& ed : e.at("edges"))
            g.edges.push_back({ed.at(0).get<int>(), ed.at(1).get<int>(), ed.at(2).get<int>()});
        g.aut_nt = e.at("aut_nt").get<std::string>();
        g.aut_ct = e.at("aut_ct").get<std::string>();
        g.double_fibers = e.at("double_fibers").get<std::vector<std::string>>();
        g.moduli = e.at("moduli").get<int>();
        g.named = e.at("named").get<std::vector<std::string>>();
        c.enriques.push_back(std::move(g));
    }
    c.enriques_allowed = j.at("enriques_allowed").get<std::vector<std::string>>();
    return c;
}

const Catalog& Catalog::builtin()
{
    static const Catalog c = parse(kCatalogJson);
    return c;
}

const CatalogCase& Catalog::case_by_id(int id) const
{
    for (auto& c : table2)
        if (c.id == id)
            return c;
    throw ConstraintError("no case " + std::to_string(id) + " in the catalog");
}

const NonJacobianRow& Catalog::nonjacobian(const std::string& id) const
{
    for (auto& r : table4)
        if (r.id == id)
            return r;
    throw ConstraintError("no non-jacobian row '" + id + "' in the catalog");
}

const EnriquesConfig& Catalog::enriques_config(const std::string& label) const
{
    for (auto& g : enriques)
        if (g.label == label)
            return g;
    throw ConstraintError("no Enriques configuration '" + label + "'");
}

std::vector<const AutSpec*> Catalog::automorphisms_of(int id) const
{
    std::vector<const AutSpec*> out;
    for (auto& a : table3)
        if (std::find(a.cases.begin(), a.cases.end(), id) != a.cases.end())
            out.push_back(&a);
    return out;
}

// ------------------------------------------------------------------ instantiation

namespace {

const std::vector<long>& excluded_values(const CatalogCase& c, bool errata)
{
    if (errata && c.errata && c.errata->exclude)
        return *c.errata->exclude;
    return c.exclude;
}

const std::map<std::string, std::string>& equation_of(const CatalogCase& c, bool errata)
{
    return errata && c.errata ? c.errata->eq : c.eq;
}

Field prime_field(unsigned p) { return p == 0 ? Field::rationals() : Field::prime(p); }

} // namespace

WeierstrassModel instantiate_case(const CatalogCase& c, const Field& K, const Params& params, bool errata)
{
    unsigned p = K.characteristic();
    std::string who = "case " + std::to_string(c.id);
    if (!c.p.admits(p))
        throw ConstraintError(who + " requires p " + c.p.str() + " (got p = " + std::to_string(p) + ")");
    for (auto& [k, v] : params)
        if (std::find(c.params.begin(), c.params.end(), k) == c.params.end())
            throw ConstraintError(who + " has no parameter '" + k + "'");
    Expr::Env env;
    for (auto& name : c.params) {
        auto it = params.find(name);
        if (it == params.end())
            throw ConstraintError(who + " needs parameter " + name);
        Elem v = K.from_int(it->second);
        for (long e : excluded_values(c, errata))
            if (v == K.from_int(e))
                throw ConstraintError(who + " requires " + name + " != " + join_nums(excluded_values(c, errata)) +
                                      " (got " + name + " = " + std::to_string(it->second) +
                                      (p ? " mod " + std::to_string(p) : "") + ")");
        env.values[name] = v;
    }
    auto coeff = [&](const char* key) {
        auto& eq = equation_of(c, errata);
        auto it = eq.find(key);
        if (it == eq.end())
            return Poly(K);
        return Expr::parse(it->second).eval(K, env).to_poly_t();
    };
    return WeierstrassModel(coeff("a1"), coeff("a2"), coeff("a3"), coeff("a4"), coeff("a6"));
}

WeierstrassModel instantiate_case(int id, unsigned p, const Params& params, bool errata)
{
    if (p != 0 && !is_prime(p))
        throw ConstraintError("p = " + std::to_string(p) + " is neither 0 nor a prime");
    return instantiate_case(Catalog::builtin().case_by_id(id), prime_field(p), params, errata);
}

std::vector<long> admissible_values(const CatalogCase& c, unsigned p, bool errata)
{
    std::vector<long> out;
    if (c.params.empty())
        return out;
    const auto& ex = excluded_values(c, errata);
    if (p == 0) {
        for (long v = -3; v <= 5; ++v)
            if (std::find(ex.begin(), ex.end(), v) == ex.end())
                out.push_back(v);
        return out;
    }
    for (long v = 0; v < static_cast<long>(p); ++v) {
        bool bad = false;
        for (long e : ex)
            if (((e - v) % static_cast<long>(p)) == 0)
                bad = true;
        if (!bad)
            out.push_back(v);
    }
    return out;
}

// ------------------------------------------------------------------ verdicts

std::string to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inconclusive: return "inconclusive";
    case CheckStatus::Skipped: return "skipped";
    }
    return "?";
}

CheckStatus check_status_from_string(const std::string& s)
{
    if (s == "pass")
        return CheckStatus::Pass;
    if (s == "fail")
        return CheckStatus::Fail;
    if (s == "inconclusive")
        return CheckStatus::Inconclusive;
    if (s == "skipped")
        return CheckStatus::Skipped;
    throw DomainError("unknown check status '" + s + "'");
}

CheckStatus Verdict::overall() const
{
    bool inconclusive = false;
    for (auto& c : checks) {
        if (c.status == CheckStatus::Fail)
            return CheckStatus::Fail;
        if (c.status == CheckStatus::Inconclusive)
            inconclusive = true;
    }
    return inconclusive ? CheckStatus::Inconclusive : CheckStatus::Pass;
}

const Check* Verdict::find(const std::string& name) const
{
    for (auto& c : checks)
        if (c.name == name)
            return &c;
    return nullptr;
}

namespace {

Check make_check(std::string name, bool ok, std::string detail)
{
    return {std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(detail)};
}

const MWReport& cached_mw(const RootConfiguration& cfg)
{
    static std::map<std::string, MWReport> cache;
    auto key = cfg.str();
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, mw_from_config(cfg)).first;
    return it->second;
}

bool cached_embeds(const RootConfiguration& cfg)
{
    static std::map<std::string, bool> cache;
    auto key = cfg.str();
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, find_subsystem(cfg).has_value()).first;
    return it->second;
}

std::vector<FiberType> parse_fibers(const std::vector<std::string>& labels)
{
    std::vector<FiberType> out;
    for (auto& l : labels)
        out.push_back(FiberType::parse(l));
    return out;
}

std::string group_str(const std::vector<long>& g)
{
    if (g.empty())
        return "0";
    std::vector<std::string> s;
    for (long d : g)
        s.push_back("Z/" + std::to_string(d));
    return join(s, " x ");
}

void mw_checks(const std::vector<FiberType>& fibers, std::vector<Check>& out)
{
    auto cfg = RootConfiguration::from_fibers(fibers);
    const MWReport& mw = cached_mw(cfg);
    if (!mw.embeddable) {
        out.push_back(make_check("mw", false, cfg.str() + ": " + mw.reason));
        return;
    }
    std::vector<std::string> types;
    for (auto& t : mw.types)
        types.push_back(t.str());
    std::string what = "MW(" + cfg.str() + ") = " + join(types, " | ") + ", Disc(T) = " + group_str(mw.disc);
    out.push_back(make_check("mw: |MW|^2 = |Disc(T)|", mw.order_identity, what));
    out.push_back(make_check("mw: MW embeds in Disc(T)", mw.mw_in_disc, what));
    out.push_back(make_check("mw: MW + MW embeds in Disc(T)", mw.double_mw_in_disc, what));
}

} // namespace

Verdict verify_case(int id, unsigned p, const Params& params, const VerifyOptions& opt)
{
    const CatalogCase& c = Catalog::builtin().case_by_id(id);
    WeierstrassModel m = instantiate_case(id, p, params, opt.errata);
    Verdict v;
    v.subject = "case " + std::to_string(id);
    v.p = p;
    v.params = params;
    v.errata = opt.errata;
    bool qe = c.quasi_elliptic_at(p);
    auto claimed = parse_fibers(c.fibers);

    GenericFiberKind kind = generic_fiber_kind(m);
    GenericFiberKind want = qe ? GenericFiberKind::QuasiElliptic : GenericFiberKind::Elliptic;
    v.checks.push_back(make_check("generic fiber", kind == want, "model " + m.str() + " is " + to_string(kind) +
                                                                     ", expected " + to_string(want)));
    if (kind == GenericFiberKind::Invalid)
        return v;

    if (qe) {
        int r = c.rank();
        v.checks.push_back(make_check("qe identity", r == 8, "sum (b_t - 1) over listed fibers = " + std::to_string(r)));
        auto cfg = RootConfiguration::from_fibers(claimed);
        bool emb = cached_embeds(cfg);
        v.checks.push_back(make_check("E8 embedding", emb, cfg.str() + (emb ? " embeds in E8" : " does not embed")));
        if (r == 8)
            mw_checks(claimed, v.checks);
    } else {
        GlobalReport r = classify_places(m, opt.seed);
        std::string where;
        for (auto& f : r.fibers)
            if (!f.classified)
                where += (where.empty() ? "" : ", ") + f.place.str();
        if (!r.conclusive) {
            v.checks.push_back({"fibers", CheckStatus::Inconclusive, "inconclusive at place " + where});
        } else {
            v.fibers = fiber_multiset(r);
            bool same = sorted(v.fibers) == sorted(c.fibers);
            v.checks.push_back(make_check("fibers", same, "observed " + join(v.fibers, ", ") + "; listed " +
                                                              join(c.fibers, ", ")));
            bool tame = true;
            for (auto& f : r.fibers)
                if (f.delta != 0 && p != 2 && p != 3)
                    tame = false;
            v.checks.push_back(make_check("euler", r.euler_sum == 12 && tame,
                                          "sum (e_t + delta_t) deg = " + std::to_string(r.euler_sum) +
                                              (tame ? "" : "; wild term outside p = 2, 3")));
            v.checks.push_back(make_check("extremal", r.extremal == c.extremal(),
                                          std::string("observed ") + (r.extremal ? "extremal" : "not extremal") +
                                              ", listed rank " + std::to_string(c.rank())));
        }
        if (c.extremal())
            mw_checks(claimed, v.checks);
    }
    if (opt.automorphisms) {
        auto a = check_automorphisms(c, p, params, opt.errata);
        v.checks.insert(v.checks.end(), a.begin(), a.end());
    }
    return v;
}

// ------------------------------------------------------------------ Table 3 substitutions

namespace {

MPoly equation_poly(const WeierstrassModel& m)
{
    const Field& K = m.base;
    MPoly t = MPoly::var(K, 0), x = MPoly::var(K, 1), y = MPoly::var(K, 2);
    (void)t;
    auto A = [](const Poly& f) { return MPoly::from_poly_t(f); };
    return y * y + A(m.a1) * x * y + A(m.a3) * y - x.pow(3) - A(m.a2) * x * x - A(m.a4) * x - A(m.a6);
}

// Order of t -> alpha t + beta; 0 when infinite.
long affine_order(const Elem& alpha, const Elem& beta)
{
    const Field& K = alpha.field();
    if (alpha.is_one())
        return beta.is_zero() ? 1 : static_cast<long>(K.characteristic());
    if (K.is_finite()) {
        Elem a = alpha;
        for (long k = 1; k <= static_cast<long>(K.size()); ++k, a = a * alpha)
            if (a.is_one())
                return k;
        return 0;
    }
    if (alpha == -K.one())
        return 2;
    return 0;
}

Expr::Env env_for(const AutSpec& a, const CatalogCase& c, const Field& K, const Params& params,
                  const std::map<std::string, Elem>& constants)
{
    Expr::Env env;
    env.values = constants;
    for (auto& [k, v] : params)
        env.values[k] = K.from_int(v);
    env.ints["p"] = static_cast<long>(K.characteristic());
    if (auto it = a.i_by_case.find(c.id); it != a.i_by_case.end())
        env.ints["i"] = it->second;
    return env;
}

std::optional<Elem> find_element(const Field& K, const std::function<bool(const Elem&)>& pred)
{
    if (!K.is_finite())
        return std::nullopt;
    for (std::uint64_t i = 0; i < K.size(); ++i)
        if (Elem e = K.element(i); pred(e))
            return e;
    return std::nullopt;
}

} // namespace

AutCheck apply_automorphism(const AutSpec& a, const CatalogCase& c, const Field& K, const Params& params,
                            const std::map<std::string, Elem>& constants, bool errata)
{
    AutCheck r;
    WeierstrassModel m = instantiate_case(c, K, params, errata);
    Expr::Env env = env_for(a, c, K, params, constants);
    std::array<MPoly, 3> s = {Expr::parse(a.t).eval(K, env), Expr::parse(a.x).eval(K, env),
                              Expr::parse(a.y).eval(K, env)};
    MPoly F = equation_poly(m);
    MPoly G = F.subst(s);
    auto it = G.terms().find({0, 0, 2});
    r.factor = it == G.terms().end() ? K.zero() : it->second;
    r.preserved = !r.factor.is_zero() && G == F.scale(r.factor);
    if (!r.preserved)
        r.detail = "F(t',x',y') = " + G.str() + " is not a multiple of F = " + F.str();
    const MPoly& tp = s[0];
    bool affine = tp.univariate_t() && tp.to_poly_t().degree() <= 1 && !tp.to_poly_t().coeff(1).is_zero();
    if (!affine) {
        r.base_order = 0;
        r.detail += (r.detail.empty() ? "" : "; ") + std::string("base map t' = ") + tp.str() + " is not affine";
        r.preserved = false;
        return r;
    }
    Poly tl = tp.to_poly_t();
    r.base_order = affine_order(tl.coeff(1), tl.coeff(0));
    return r;
}

std::vector<Check> check_automorphisms(const CatalogCase& c, unsigned p, const Params& params, bool errata)
{
    std::vector<Check> out;
    for (const AutSpec* a : Catalog::builtin().automorphisms_of(c.id)) {
        std::string name = "aut (" + a->t + ", " + a->x + ", " + a->y + ")";
        bool need_z = a->uses("zeta3"), need_i = a->uses("sqrtm1");
        bool need_a = a->uses("a"), need_b = a->uses("b");
        if (p == 0 && (need_z || need_i)) {
            out.push_back({name, CheckStatus::Skipped, "constant not in Q"});
            continue;
        }
        Field K = prime_field(p);
        auto cube = [](const Elem& e) { return !e.is_one() && e.pow(3).is_one(); };
        auto isqrt = [](const Elem& e) { return (e * e + e.field().one()).is_zero(); };
        if (p != 0 && ((need_z && p != 3 && !find_element(K, cube)) || (need_i && !find_element(K, isqrt))))
            K = Field::of_order(p, 2);
        std::map<std::string, Elem> consts;
        if (need_z)
            consts["zeta3"] = p == 3 ? K.one() : *find_element(K, cube);
        if (need_i)
            consts["sqrtm1"] = *find_element(K, isqrt);

        // parameter samples (a, b)
        std::vector<std::pair<Elem, Elem>> samples;
        if (need_a || need_b) {
            std::vector<Elem> as, bs;
            if (K.is_finite()) {
                std::uint64_t q = K.size(), step = std::max<std::uint64_t>(1, (q - 1) / 6);
                for (std::uint64_t i = 1; i < q && as.size() < 6; i += step)
                    as.push_back(K.element(i));
                for (std::uint64_t i = 0; i < q && bs.size() < 4; i += std::max<std::uint64_t>(1, q / 4))
                    bs.push_back(K.element(i));
            } else {
                for (long v : {1, 2, -1, 3})
                    as.push_back(K.from_int(v));
                for (long v : {0, 1, -2})
                    bs.push_back(K.from_int(v));
            }
            for (auto& x : as)
                if (!x.is_zero())
                    for (auto& y : bs)
                        samples.emplace_back(x, need_b ? y : K.zero());
            if (!need_b) {
                std::vector<std::pair<Elem, Elem>> u;
                for (auto& s : samples)
                    if (std::find(u.begin(), u.end(), s) == u.end())
                        u.push_back(s);
                samples = u;
            }
        } else {
            samples.emplace_back(K.one(), K.zero());
        }

        bool ok = true;
        std::string bad;
        std::set<long> orders;
        Elem factor = K.one();
        for (auto& [av, bv] : samples) {
            auto cs = consts;
            if (need_a)
                cs["a"] = av;
            if (need_b)
                cs["b"] = bv;
            AutCheck r = apply_automorphism(*a, c, K, params, cs, errata);
            factor = r.factor;
            orders.insert(r.base_order);
            if (!r.preserved) {
                ok = false;
                bad = r.detail;
                break;
            }
        }
        std::string field = K.name();
        out.push_back(make_check(name + ": equation preserved", ok,
                                 ok ? "exact over " + field + " for " + std::to_string(samples.size()) +
                                          " parameter choice(s)" +
                                          (need_a || need_b ? "" : ", factor " + factor.str())
                                    : bad));

        auto gd = GroupDesc::parse(c.aut_dagger), g = GroupDesc::parse(c.aut);
        if (!(need_a || need_b)) {
            long got = *orders.begin();
            auto od = gd.order(), og = g.order();
            if (od && og && *og % *od == 0) {
                long want = *og / *od;
                out.push_back(make_check(name + ": base order", got == want,
                                         "t -> " + a->t + " has order " + std::to_string(got) +
                                             "; |Aut| / |Aut dagger| = " + std::to_string(want)));
            } else {
                out.push_back({name + ": base order", CheckStatus::Skipped,
                               "order " + std::to_string(got) + "; group " + c.aut + " is not finite"});
            }
            continue;
        }
        // kernel of the base action inside the family, counted over K
        if (!K.is_finite()) {
            out.push_back({name + ": base kernel", CheckStatus::Skipped, "family over Q is not enumerable"});
            continue;
        }
        // largest count over small extensions F_{p^k}
        Expr tx = Expr::parse(a->t);
        long kernel = 0;
        std::string kfield = field;
        for (unsigned k = 1; k <= 4; ++k) {
            Field L = consts.empty() ? Field::of_order(p, k) : K;
            std::uint64_t q = L.size();
            if (k > 1 && (!consts.empty() || (need_a && need_b ? q * q : q) > 20000))
                break;
            long count = 0;
            for (std::uint64_t i = 0; i < (need_a ? q : 1); ++i) {
                Elem av = L.element(i);
                if (need_a && av.is_zero())
                    continue;
                for (std::uint64_t j = 0; j < (need_b ? q : 1); ++j) {
                    auto cs = consts;
                    if (need_a)
                        cs["a"] = av;
                    if (need_b)
                        cs["b"] = L.element(j);
                    Poly tl = tx.eval(L, env_for(*a, c, L, params, cs)).to_poly_t();
                    if (tl.coeff(1).is_one() && tl.coeff(0).is_zero())
                        ++count;
                }
            }
            if (count > kernel) {
                kernel = count;
                kfield = L.name();
            }
        }
        auto od = gd.order();
        bool ok2 = od && *od % kernel == 0;
        out.push_back(make_check(name + ": base kernel", ok2,
                                 std::to_string(kernel) + " parameter values over " + kfield +
                                     " fix the base; |Aut dagger| = " + (od ? std::to_string(*od) : "inf")));
    }
    return out;
}

// ------------------------------------------------------------------ Table 4

namespace {

std::vector<unsigned> sample_primes() { return {0, 2, 3, 5, 7, 11, 13}; }

// An ordinary smooth fiber of the parent model over some F_{p^k}, k <= 4.
std::optional<std::string> ordinary_smooth_fiber(const CatalogCase& parent, unsigned p)
{
    Params params;
    for (auto& name : parent.params) {
        auto vals = admissible_values(parent, p);
        if (vals.empty())
            return std::nullopt;
        params[name] = vals.front();
    }
    for (unsigned k = 1; k <= 4; ++k) {
        Field K = Field::of_order(p, k);
        WeierstrassModel m = instantiate_case(parent, K, params);
        Poly disc = compute_invariants(m).disc;
        for (std::uint64_t i = 0; i < K.size(); ++i) {
            Elem e = K.element(i);
            if (disc.eval(e).is_zero())
                continue;
            Place pl = Place::finite(Poly(K, {-e, K.one()}));
            if (!is_supersingular(m, pl))
                return "ordinary smooth fiber at t = " + e.str() + " over " + K.name();
        }
    }
    return std::nullopt;
}

} // namespace

Verdict verify_nonjacobian_row(const NonJacobianRow& row)
{
    const Catalog& cat = Catalog::builtin();
    Verdict v;
    v.subject = "row " + row.id;
    const CatalogCase* parent = nullptr;
    for (auto& c : cat.table2)
        if (c.id == row.parent)
            parent = &c;
    if (!parent) {
        v.checks.push_back(make_check("parent", false, "no case " + std::to_string(row.parent)));
        return v;
    }
    bool same = sorted(parent->fibers) == sorted(row.fibers);
    v.checks.push_back(make_check("parent", same, "case " + std::to_string(parent->id) + " lists " +
                                                      join(parent->fibers, ", ") + "; row lists " +
                                                      join(row.fibers, ", ")));

    std::vector<unsigned> ps;
    for (unsigned q : sample_primes())
        if (row.p.admits(q))
            ps.push_back(q);
    std::vector<std::string> outside;
    for (unsigned q : ps)
        if (!parent->p.admits(q))
            outside.push_back(std::to_string(q));
    v.checks.push_back(make_check("characteristic", outside.empty() && !ps.empty(),
                                  "row p " + row.p.str() + ", parent p " + parent->p.str() +
                                      (outside.empty() ? "" : "; not allowed for the parent: " + join(outside, ","))));

    std::vector<std::string> kind_bad;
    for (unsigned q : ps) {
        bool parent_qe = parent->quasi_elliptic_at(q);
        if ((row.kind == "e" && parent_qe) || (row.kind == "qe" && !parent_qe))
            kind_bad.push_back(std::to_string(q));
    }
    v.checks.push_back(make_check("kind", kind_bad.empty(),
                                  "row " + row.kind + ", parent " + parent->kind +
                                      (kind_bad.empty() ? "" : "; mismatch at p = " + join(kind_bad, ","))));

    // multiplicity against the type of the multiple fiber
    const MultipleFiber& mf = row.multiple;
    std::vector<std::string> notes;
    bool ok = true;
    for (unsigned q : ps) {
        std::string at = "p = " + std::to_string(q) + ": ";
        if (mf.m == "m") {
            if (mf.type.additive()) {
                ok = false;
                notes.push_back(at + "additive fiber needs m = p, not a free m");
            } else if (!mf.coprime) {
                ok = false;
                notes.push_back(at + "free m without (m,p) = 1");
            }
            continue;
        }
        bool m_is_p = mf.m == "p";
        long m = m_is_p ? static_cast<long>(q) : std::stol(mf.m);
        if (m < 2) {
            ok = false;
            notes.push_back(at + "m = " + std::to_string(m) + " is not a multiplicity");
            continue;
        }
        bool divides = q != 0 && m % static_cast<long>(q) == 0;
        if (mf.type.additive()) {
            if (m != static_cast<long>(q)) {
                ok = false;
                notes.push_back(at + "additive " + mf.type.dynkin() + " needs m = p, got m = " + std::to_string(m));
            }
        } else if (mf.type.multiplicative()) {
            if (divides) {
                ok = false;
                notes.push_back(at + "multiplicative fiber needs p not dividing m");
            }
        } else if (divides) {
            // smooth with p | m: the fiber must be ordinary
            auto ord = parent->quasi_elliptic_at(q) ? std::nullopt : ordinary_smooth_fiber(*parent, q);
            if (!ord) {
                ok = false;
                notes.push_back(at + "smooth fiber with p | m but no ordinary smooth fiber found");
            } else {
                notes.push_back(at + *ord);
            }
        }
    }
    v.checks.push_back(make_check("multiplicity", ok, mf.str() + (notes.empty() ? "" : "; " + join(notes, "; "))));

    GroupDesc gd = GroupDesc::parse(row.aut_dagger), g = GroupDesc::parse(row.aut);
    std::vector<std::string> gbad;
    for (unsigned q : ps)
        if (!group_contains(g, gd, q))
            gbad.push_back(std::to_string(q));
    v.checks.push_back(make_check("groups", gbad.empty(),
                                  row.aut_dagger + " in " + row.aut +
                                      (gbad.empty() ? "" : "; fails at p = " + join(gbad, ","))));

    if (row.mw_translations) {
        long order = 0;
        for (auto& e : torsion_fiber_scan(1))
            if (e.fibers.front() == mf.type)
                order = e.order;
        bool fits = order > 0;
        std::vector<std::string> tbad;
        if (fits)
            for (unsigned q : ps)
                if (!group_contains(gd, GroupDesc::parse("Z/" + std::to_string(order)), q))
                    tbad.push_back(std::to_string(q));
        v.checks.push_back(make_check("translations", fits && tbad.empty(),
                                      mf.type.dynkin() +
                                          (fits ? " carries a torsion section of order " + std::to_string(order)
                                                : " is not A~7, A~8 or D~8") +
                                          (tbad.empty() ? "" : "; not inside " + row.aut_dagger)));
    } else {
        v.checks.push_back({"translations", CheckStatus::Skipped, "no translation claimed"});
    }
    return v;
}

Verdict verify_nonjacobian_row(const std::string& id)
{
    return verify_nonjacobian_row(Catalog::builtin().nonjacobian(id));
}

} // namespace genusone
