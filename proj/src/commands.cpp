#include "genusone/commands.hpp"
#include "genusone/picaction.hpp"

#include <algorithm>
#include <sstream>

namespace genusone {

namespace {

std::string join(const std::vector<std::string>& v, const std::string& sep)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? sep : "") + v[i];
    return s;
}

std::string group_text(const std::vector<long>& g)
{
    if (g.empty())
        return "0";
    std::vector<std::string> s;
    for (long d : g)
        s.push_back("Z/" + std::to_string(d));
    return join(s, " x ");
}

Report start(const std::string& command, std::uint64_t seed)
{
    Report r;
    r.command = command;
    r.seed = seed;
    return r;
}

VerdictRecord mw_verdict(const MWReport& m)
{
    VerdictRecord v;
    v.subject = "mw " + m.cfg.str();
    auto add = [&](const std::string& name, bool ok, const std::string& detail) {
        v.checks.push_back({name, ok ? "pass" : "fail", detail});
    };
    add("embeds in E8", m.embeddable, m.embeddable ? m.cfg.str() + " embeds" : m.reason);
    if (m.embeddable && m.cfg.rank() == 8) {
        std::vector<std::string> types;
        for (auto& t : m.types)
            types.push_back(t.str());
        std::string what = "MW = " + join(types, " | ") + ", Disc(T) = " + group_text(m.disc);
        add("|MW|^2 = |Disc(T)|", m.order_identity, what);
        add("MW embeds in Disc(T)", m.mw_in_disc, what);
        add("MW + MW embeds in Disc(T)", m.double_mw_in_disc, what);
    }
    v.status = "pass";
    for (auto& c : v.checks)
        v.status = combine_status(v.status, c.status);
    return v;
}

Report mw_report(const RootConfiguration& cfg, std::uint64_t seed, const std::string& command)
{
    Report r = start(command, seed);
    MWReport m = mw_from_config(cfg);
    r.mw = mw_record(m);
    r.verdicts.push_back(mw_verdict(m));
    r.status = r.verdicts.back().status;
    return r;
}

std::vector<FiberType> fibers_of(const GlobalReport& g)
{
    std::vector<FiberType> out;
    for (auto& f : g.fibers)
        if (f.classified && !f.type.smooth())
            for (int i = 0; i < f.place.degree(); ++i)
                out.push_back(f.type);
    return out;
}

} // namespace

std::vector<unsigned> primes_up_to(unsigned n)
{
    std::vector<unsigned> out;
    for (unsigned q = 2; q <= n; ++q)
        if (is_prime(q))
            out.push_back(q);
    return out;
}

Report run_invariants(const ModelFile& f, std::uint64_t seed)
{
    WeierstrassModel m = f.model();
    Report r = start("invariants", seed);
    r.model = m.str();
    StandardInvariants I = compute_invariants(m);
    std::pair<const char*, const Poly*> rows[] = {{"b2", &I.b2}, {"b4", &I.b4}, {"b6", &I.b6}, {"b8", &I.b8},
                                                  {"c4", &I.c4}, {"c6", &I.c6}, {"disc", &I.disc}};
    for (auto& [name, poly] : rows)
        r.items.push_back({name, {{"value", poly->str()}}});
    if (I.j)
        r.items.push_back({"j", {{"num", I.j->first.str()}, {"den", I.j->second.str()}}});
    else
        r.items.push_back({"j", {{"value", "undefined"}}});
    r.items.push_back({"generic fiber", {{"kind", to_string(generic_fiber_kind(m))}}});
    return r;
}

Report run_classify(const ModelFile& f, std::uint64_t seed)
{
    WeierstrassModel m = f.model();
    Report r = start("classify", seed);
    r.model = m.str();
    if (generic_fiber_kind(m) != GenericFiberKind::Elliptic) {
        r.notes.push_back("quasi-elliptic generic fiber: fibers are not classified from the equation");
        r.status = "inconclusive";
        return r;
    }
    GlobalReport g = classify_places(m, seed);
    for (auto& d : g.fibers)
        r.places.push_back(place_record(d));
    r.euler_sum = g.euler_sum;
    r.extremal = g.extremal;
    r.notes = g.notes;
    if (!g.conclusive) {
        r.status = "inconclusive";
    } else if (g.euler_sum != 12) {
        r.notes.push_back("Euler sum " + std::to_string(g.euler_sum) + " != 12: not a rational elliptic surface");
        r.status = "fail";
    }
    return r;
}

Report run_mw_fibers(const std::string& list, std::uint64_t seed)
{
    RootConfiguration cfg;
    std::vector<FiberType> fibers;
    bool as_fibers = true;
    std::stringstream ss(list);
    for (std::string item; std::getline(ss, item, ',');) {
        item.erase(0, item.find_first_not_of(' '));
        item.erase(item.find_last_not_of(' ') + 1);
        if (item.empty())
            continue;
        try {
            fibers.push_back(FiberType::parse(item));
        } catch (const DomainError&) {
            as_fibers = false;
            break;
        }
    }
    cfg = as_fibers && !fibers.empty() ? RootConfiguration::from_fibers(fibers) : RootConfiguration::parse(list);
    return mw_report(cfg, seed, "mw");
}

Report run_mw_model(const ModelFile& f, std::uint64_t seed)
{
    Report c = run_classify(f, seed);
    if (c.status != "pass")
        return c;
    WeierstrassModel m = f.model();
    GlobalReport g = classify_places(m, seed);
    Report r = mw_report(RootConfiguration::from_fibers(fibers_of(g)), seed, "mw");
    r.model = m.str();
    r.places = c.places;
    r.euler_sum = c.euler_sum;
    r.extremal = c.extremal;
    return r;
}

Report run_verify_case(const CaseSweep& s, std::uint64_t seed)
{
    Report r = start("verify-case", seed);
    const Catalog& cat = Catalog::builtin();
    std::vector<const CatalogCase*> rows;
    if (s.id)
        rows.push_back(&cat.case_by_id(*s.id));
    else
        for (auto& c : cat.table2)
            rows.push_back(&c);
    VerifyOptions opt;
    opt.errata = s.errata;
    opt.automorphisms = s.automorphisms;
    opt.seed = seed;
    for (const CatalogCase* c : rows) {
        std::vector<unsigned> ps;
        if (s.p)
            ps.push_back(*s.p);
        else
            for (unsigned q : primes_up_to(s.max_p))
                if (c->p.admits(q))
                    ps.push_back(q);
        if (s.id && s.p && !c->p.admits(*s.p))
            throw ConstraintError("case " + std::to_string(c->id) + " requires p " + c->p.str() +
                                  " (got p = " + std::to_string(*s.p) + ")");
        for (unsigned p : ps) {
            if (!c->p.admits(p))
                continue;
            std::vector<Params> plist;
            if (s.id && (!s.params.empty() || c->params.empty()))
                plist.push_back(s.params);
            else if (c->params.empty())
                plist.push_back({});
            else
                for (long v : admissible_values(*c, p, s.errata))
                    plist.push_back({{c->params.front(), v}});
            for (auto& params : plist) {
                VerdictRecord v = verdict_record(verify_case(c->id, p, params, opt));
                r.status = combine_status(r.status, v.status);
                r.verdicts.push_back(std::move(v));
            }
        }
    }
    return r;
}

Report run_verify_nonjacobian(const std::optional<std::string>& id, std::uint64_t seed)
{
    Report r = start("verify-nonjacobian", seed);
    const Catalog& cat = Catalog::builtin();
    std::vector<const NonJacobianRow*> rows;
    if (id)
        rows.push_back(&cat.nonjacobian(*id));
    else
        for (auto& x : cat.table4)
            rows.push_back(&x);
    for (auto* row : rows) {
        VerdictRecord v = verdict_record(verify_nonjacobian_row(*row));
        r.status = combine_status(r.status, v.status);
        r.verdicts.push_back(std::move(v));
    }
    return r;
}

Report run_enumerate_extremal(unsigned p, std::uint64_t seed)
{
    Report r = start("enumerate-extremal", seed);
    ExtremalEnumeration e = enumerate_extremal(p);
    for (auto& c : e.output) {
        Item it{c.str(), {{"euler", std::to_string(c.euler)}, {"kind", c.quasi_elliptic ? "qe" : "e"}}};
        if (!c.big_fiber.empty())
            it.attrs["table1"] = c.big_fiber;
        r.items.push_back(it);
    }
    int dropped = 0;
    for (auto& c : e.candidates)
        dropped += !c.big_fiber.empty() && !c.in_table1;
    r.notes.push_back("p = " + std::to_string(p) + ": " + std::to_string(e.candidates.size()) + " candidates, " +
                      std::to_string(dropped) + " removed by Table 1");
    for (auto& m : e.table1_missing) {
        r.notes.push_back("Table 1 configuration not generated: " + m);
        r.status = "fail";
    }
    return r;
}

Report run_act(long long m, const std::vector<long long>& A, const std::vector<long long>& D, std::uint64_t seed)
{
    if (A.size() != 10 || D.size() != 10)
        throw DomainError("act: --A and --D take 10 integers each");
    if (m < 1)
        throw DomainError("act: m must be positive");
    DivisorClass a, d;
    for (int i = 0; i < 10; ++i) {
        a[i] = A[i];
        d[i] = D[i];
    }
    Report r = start("act", seed);
    DivisorClass F0 = fiber_class(1);
    if (dot(a, F0) != 0)
        throw DomainError("act: A must be orthogonal to F0 (A.F0 = " + std::to_string(dot(a, F0)) + ")");
    DivisorClass img = tau(a, m, d);
    std::string s;
    for (int i = 0; i < 10; ++i)
        s += (i ? "," : "") + std::to_string(img[i]);
    r.items.push_back({"image", {{"class", s}, {"self-intersection", std::to_string(dot(img, img))}}});
    return r;
}

Report run_torsion_scan(int fibers, std::uint64_t seed)
{
    Report r = start("torsion-scan", seed);
    for (auto& e : torsion_fiber_scan(fibers)) {
        std::vector<std::string> ts, cs;
        for (auto& f : e.fibers)
            ts.push_back(f.dynkin());
        for (int c : e.components)
            cs.push_back(std::to_string(c));
        r.items.push_back({join(ts, " + "),
                           {{"order", std::to_string(e.order)},
                            {"components", join(cs, ",")},
                            {"contribution", e.contribution.get_str()},
                            {"additive", e.additive ? "yes" : "no"}}});
    }
    return r;
}

Report run_enriques(const std::string& label, std::uint64_t seed)
{
    Report r = start("enriques", seed);
    EnriquesReport e = enriques_report(label);
    for (auto& s : e.found) {
        std::vector<std::string> vs;
        for (int v : s.vertices)
            vs.push_back(std::to_string(v));
        r.items.push_back({s.type, {{"vertices", join(vs, ",")}}});
    }
    VerdictRecord v;
    v.subject = "configuration " + label;
    v.checks.push_back({"named fibrations", e.missing_named.empty() ? "pass" : "fail",
                        e.missing_named.empty() ? "all found" : "missing " + join(e.missing_named, ", ")});
    v.checks.push_back({"no contradicting diagrams", e.contradicting.empty() ? "pass" : "fail",
                        e.contradicting.empty() ? "none" : join(e.contradicting, ", ")});
    if (!e.unnamed.empty())
        r.notes.push_back("allowed but not named: " + join(e.unnamed, ", "));
    v.status = "pass";
    for (auto& c : v.checks)
        v.status = combine_status(v.status, c.status);
    r.status = v.status;
    r.verdicts.push_back(v);
    return r;
}

} // namespace genusone
