#include "genusone/report.hpp"
#include "genusone/expr.hpp"

#include "json.hpp"

#include <regex>
#include <sstream>

namespace genusone {

using json = nlohmann::json;

namespace {

const char* const kCoeffKeys[] = {"a1", "a2", "a3", "a4", "a6"};

Elem parse_number(const Field& K, const std::string& s, const std::map<std::string, long>& params)
{
    static const std::regex rational(R"(\s*(-?\d+)\s*(/\s*(\d+))?\s*)");
    std::smatch m;
    if (std::regex_match(s, m, rational)) {
        mpz_class num(m[1].str()), den(m[3].matched ? m[3].str() : "1");
        if (den == 0)
            throw DomainError("zero denominator in '" + s + "'");
        if (K.is_finite() && den % K.characteristic() == 0)
            throw DomainError("denominator of '" + s + "' vanishes mod " + std::to_string(K.characteristic()));
        return K.from_mpz(num) / K.from_mpz(den);
    }
    Expr::Env env;
    for (auto& [k, v] : params)
        env.values[k] = K.from_int(v);
    MPoly e = Expr::parse(s).eval(K, env);
    if (!e.is_constant())
        throw DomainError("coefficient entry '" + s + "' is not a constant");
    return e.constant_term();
}

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

template <class T>
void opt_get(const json& j, const char* key, std::optional<T>& out)
{
    if (j.contains(key))
        out = j.at(key).get<T>();
}

void reject_unknown(const json& j, const std::vector<std::string>& allowed, const std::string& what)
{
    if (!j.is_object())
        throw DomainError(what + " must be a JSON object");
    for (auto& [k, v] : j.items())
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            throw DomainError(what + ": unknown key '" + k + "'");
}

} // namespace

// ------------------------------------------------------------------ model files

ModelFile ModelFile::parse(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("model file is not valid JSON: ") + e.what());
    }
    reject_unknown(j, {"p", "a1", "a2", "a3", "a4", "a6", "params"}, "model file");
    ModelFile f;
    if (!j.contains("p") || !j.at("p").is_number_unsigned())
        throw DomainError("model file: 'p' must be 0 or a prime");
    f.p = j.at("p").get<unsigned>();
    if (f.p != 0 && !is_prime(f.p))
        throw DomainError("model file: p = " + std::to_string(f.p) + " is neither 0 nor a prime");
    for (const char* k : kCoeffKeys) {
        if (!j.contains(k))
            continue;
        if (!j.at(k).is_array())
            throw DomainError(std::string("model file: '") + k + "' must be an array");
        for (auto& e : j.at(k)) {
            if (e.is_number_integer())
                f.coeffs[k].push_back(std::to_string(e.get<long long>()));
            else if (e.is_string())
                f.coeffs[k].push_back(e.get<std::string>());
            else
                throw DomainError(std::string("model file: entries of '") + k + "' are integers or strings");
        }
    }
    if (j.contains("params")) {
        if (!j.at("params").is_object())
            throw DomainError("model file: 'params' must be an object");
        for (auto& [k, v] : j.at("params").items()) {
            if (!v.is_number_integer())
                throw DomainError("model file: parameter '" + k + "' must be an integer");
            f.params[k] = v.get<long>();
        }
    }
    f.model(); // validate
    return f;
}

std::string ModelFile::to_json() const
{
    json j;
    j["p"] = p;
    for (auto& [k, v] : coeffs)
        j[k] = v;
    if (!params.empty())
        j["params"] = params;
    return j.dump(2) + "\n";
}

WeierstrassModel ModelFile::model() const
{
    Field K = p == 0 ? Field::rationals() : Field::prime(p);
    auto poly = [&](const char* key) {
        std::vector<Elem> c;
        if (auto it = coeffs.find(key); it != coeffs.end())
            for (auto& s : it->second)
                c.push_back(parse_number(K, s, params));
        return Poly(K, c);
    };
    WeierstrassModel m(poly("a1"), poly("a2"), poly("a3"), poly("a4"), poly("a6"));
    if (generic_fiber_kind(m) == GenericFiberKind::Invalid)
        throw DomainError("model " + m.str() + " has a singular generic fiber that is not quasi-elliptic");
    return m;
}

// ------------------------------------------------------------------ records

PlaceRecord place_record(const LocalFiberData& d)
{
    PlaceRecord r;
    r.place = d.place.str();
    r.degree = d.place.degree();
    r.classified = d.classified;
    r.reason = d.reason;
    if (d.classified) {
        r.kodaira = d.type.kodaira();
        r.dynkin = d.type.dynkin();
        r.vdisc = d.vdisc;
        r.b = d.b;
        r.e = d.e;
        r.delta = d.delta;
        r.disc = d.disc;
    }
    return r;
}

MWRecord mw_record(const MWReport& m)
{
    MWRecord r;
    r.config = m.cfg.str();
    r.embeddable = m.embeddable;
    r.reason = m.reason;
    for (auto& t : m.types)
        r.types.push_back(t.str());
    r.disc = m.disc;
    r.embeddings = static_cast<long>(m.embeddings_examined);
    r.exhaustive = m.exhaustive;
    return r;
}

VerdictRecord verdict_record(const Verdict& v)
{
    VerdictRecord r;
    r.subject = v.subject;
    r.p = v.p;
    r.params = v.params;
    r.errata = v.errata;
    r.fibers = v.fibers;
    for (auto& c : v.checks)
        r.checks.push_back({c.name, to_string(c.status), c.detail});
    r.status = to_string(v.overall());
    return r;
}

std::string combine_status(const std::string& a, const std::string& b)
{
    if (a == "fail" || b == "fail")
        return "fail";
    if (a == "inconclusive" || b == "inconclusive")
        return "inconclusive";
    return "pass";
}

// ------------------------------------------------------------------ json

namespace {

json place_json(const PlaceRecord& r)
{
    json j{{"place", r.place}, {"degree", r.degree}, {"classified", r.classified}};
    if (!r.classified) {
        j["reason"] = r.reason;
        return j;
    }
    j["kodaira"] = r.kodaira;
    j["dynkin"] = r.dynkin;
    j["vdisc"] = r.vdisc;
    j["b"] = r.b;
    j["e"] = r.e;
    j["delta"] = r.delta;
    j["disc"] = r.disc;
    return j;
}

PlaceRecord place_from(const json& j)
{
    PlaceRecord r;
    r.place = j.at("place").get<std::string>();
    r.degree = j.at("degree").get<int>();
    r.classified = j.at("classified").get<bool>();
    if (!r.classified) {
        r.reason = j.at("reason").get<std::string>();
        return r;
    }
    r.kodaira = j.at("kodaira").get<std::string>();
    r.dynkin = j.at("dynkin").get<std::string>();
    r.vdisc = j.at("vdisc").get<int>();
    r.b = j.at("b").get<int>();
    r.e = j.at("e").get<int>();
    r.delta = j.at("delta").get<int>();
    r.disc = j.at("disc").get<std::vector<long>>();
    return r;
}

json mw_json(const MWRecord& r)
{
    json j{{"config", r.config}, {"embeddable", r.embeddable}, {"types", r.types}, {"disc", r.disc},
           {"embeddings", r.embeddings}, {"exhaustive", r.exhaustive}};
    if (!r.reason.empty())
        j["reason"] = r.reason;
    return j;
}

MWRecord mw_from(const json& j)
{
    MWRecord r;
    r.config = j.at("config").get<std::string>();
    r.embeddable = j.at("embeddable").get<bool>();
    r.reason = j.value("reason", "");
    r.types = j.at("types").get<std::vector<std::string>>();
    r.disc = j.at("disc").get<std::vector<long>>();
    r.embeddings = j.at("embeddings").get<long>();
    r.exhaustive = j.at("exhaustive").get<bool>();
    return r;
}

json verdict_json(const VerdictRecord& v)
{
    json checks = json::array();
    for (auto& c : v.checks)
        checks.push_back({{"name", c.name}, {"status", c.status}, {"detail", c.detail}});
    json j{{"subject", v.subject}, {"p", v.p}, {"errata", v.errata}, {"checks", checks}, {"status", v.status}};
    j["params"] = json::object();
    for (auto& [k, x] : v.params)
        j["params"][k] = x;
    j["fibers"] = v.fibers;
    return j;
}

VerdictRecord verdict_from(const json& j)
{
    VerdictRecord v;
    v.subject = j.at("subject").get<std::string>();
    v.p = j.at("p").get<unsigned>();
    v.errata = j.at("errata").get<bool>();
    v.params = j.at("params").get<std::map<std::string, long>>();
    v.fibers = j.at("fibers").get<std::vector<std::string>>();
    for (auto& c : j.at("checks"))
        v.checks.push_back(
            {c.at("name").get<std::string>(), c.at("status").get<std::string>(), c.at("detail").get<std::string>()});
    v.status = j.at("status").get<std::string>();
    return v;
}

} // namespace

std::string Report::to_json() const
{
    json j;
    j["version"] = version;
    j["command"] = command;
    j["seed"] = std::to_string(seed);
    if (model)
        j["model"] = *model;
    if (!places.empty()) {
        j["places"] = json::array();
        for (auto& p : places)
            j["places"].push_back(place_json(p));
    }
    if (euler_sum)
        j["euler_sum"] = *euler_sum;
    if (extremal)
        j["extremal"] = *extremal;
    if (!notes.empty())
        j["notes"] = notes;
    if (mw)
        j["mw"] = mw_json(*mw);
    if (!verdicts.empty()) {
        j["verdicts"] = json::array();
        for (auto& v : verdicts)
            j["verdicts"].push_back(verdict_json(v));
    }
    if (!items.empty()) {
        j["items"] = json::array();
        for (auto& it : items)
            j["items"].push_back({{"label", it.label}, {"attrs", it.attrs}});
    }
    j["status"] = status;
    return j.dump(2) + "\n";
}

Report Report::from_json(const std::string& text)
{
    json j = json::parse(text);
    reject_unknown(j,
                   {"version", "command", "seed", "model", "places", "euler_sum", "extremal", "notes", "mw",
                    "verdicts", "items", "status"},
                   "report");
    Report r;
    r.version = j.at("version").get<int>();
    r.command = j.at("command").get<std::string>();
    r.seed = std::stoull(j.at("seed").get<std::string>());
    opt_get(j, "model", r.model);
    if (j.contains("places"))
        for (auto& p : j.at("places"))
            r.places.push_back(place_from(p));
    opt_get(j, "euler_sum", r.euler_sum);
    opt_get(j, "extremal", r.extremal);
    r.notes = j.value("notes", std::vector<std::string>{});
    if (j.contains("mw"))
        r.mw = mw_from(j.at("mw"));
    if (j.contains("verdicts"))
        for (auto& v : j.at("verdicts"))
            r.verdicts.push_back(verdict_from(v));
    if (j.contains("items"))
        for (auto& it : j.at("items"))
            r.items.push_back(
                {it.at("label").get<std::string>(), it.at("attrs").get<std::map<std::string, std::string>>()});
    r.status = j.at("status").get<std::string>();
    if (r.status != "pass" && r.status != "fail" && r.status != "inconclusive")
        throw DomainError("report: bad status '" + r.status + "'");
    return r;
}

std::string Report::to_text() const
{
    std::ostringstream os;
    os << command << "\n";
    if (model)
        os << "model: " << *model << "\n";
    for (auto& p : places) {
        os << "  " << p.place << ": ";
        if (!p.classified)
            os << "unclassified (" << p.reason << ")\n";
        else
            os << p.kodaira << " = " << p.dynkin << "  v(disc)=" << p.vdisc << " b=" << p.b << " e=" << p.e
               << " delta=" << p.delta << " disc=" << group_text(p.disc) << "\n";
    }
    if (euler_sum)
        os << "euler sum: " << *euler_sum << "\n";
    if (extremal)
        os << "extremal: " << (*extremal ? "yes" : "no") << "\n";
    for (auto& n : notes)
        os << "note: " << n << "\n";
    if (mw) {
        os << "MW(" << mw->config << "): ";
        if (!mw->embeddable)
            os << "not embeddable (" << mw->reason << ")\n";
        else
            os << join(mw->types, " | ") << "; Disc(T) = " << group_text(mw->disc) << "; " << mw->embeddings
               << " embeddings" << (mw->exhaustive ? "" : " (capped)") << "\n";
    }
    for (auto& v : verdicts) {
        os << v.subject;
        if (v.subject.rfind("case", 0) == 0)
            os << " p=" << v.p;
        for (auto& [k, x] : v.params)
            os << " " << k << "=" << x;
        if (v.errata)
            os << " (errata)";
        os << ": " << v.status << "\n";
        for (auto& c : v.checks)
            os << "  [" << c.status << "] " << c.name << ": " << c.detail << "\n";
    }
    for (auto& it : items) {
        os << it.label;
        for (auto& [k, x] : it.attrs)
            os << "  " << k << "=" << x;
        os << "\n";
    }
    os << "status: " << status << "\n";
    return os.str();
}

int Report::exit_code() const
{
    if (status == "fail")
        return 1;
    if (status == "inconclusive")
        return 2;
    return 0;
}

} // namespace genusone
