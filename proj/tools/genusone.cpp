// genusone: command-line front end.
#include "genusone/commands.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace genusone;

namespace {

ModelFile read_model(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw DomainError("cannot read model file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ModelFile::parse(ss.str());
}

std::uint64_t env_seed()
{
    const char* s = std::getenv("GENUSONE_SEED");
    if (!s || !*s)
        return 0;
    try {
        std::size_t used = 0;
        auto v = std::stoull(s, &used);
        if (used == std::string(s).size())
            return v;
    } catch (const std::exception&) {
    }
    throw DomainError(std::string("GENUSONE_SEED is not an unsigned integer: '") + s + "'");
}

// "lambda=3", "λ=3", "l=3"
std::pair<std::string, long> parse_param(const std::string& s)
{
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
        throw DomainError("bad --param '" + s + "', expected name=value");
    std::string name = s.substr(0, eq);
    if (name == "\xce\xbb" || name == "l")
        name = "lambda";
    try {
        std::size_t used = 0;
        long v = std::stol(s.substr(eq + 1), &used);
        if (used == s.size() - eq - 1)
            return {name, v};
    } catch (const std::exception&) {
    }
    throw DomainError("bad --param '" + s + "', value must be an integer");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"genusone: rational genus one fibrations, exact computations"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "text";
    std::optional<std::uint64_t> seed_flag;
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", seed_flag, "seed for the factorization PRNG (default: $GENUSONE_SEED or 0)");

    std::string model_path, fibers_list, id_str, config;
    unsigned p = 0;
    std::optional<unsigned> p_opt;
    unsigned max_p = 13;
    std::vector<std::string> params;
    bool all = false, errata = false, no_aut = false;
    long long m = 1;
    std::vector<long long> A, D;
    int scan_fibers = 1;

    auto* inv = app.add_subcommand("invariants", "b2..b8, c4, c6, discriminant and j");
    inv->add_option("model", model_path, "model file (JSON)")->required();
    auto* cls = app.add_subcommand("classify", "singular fibers at every place");
    cls->add_option("model", model_path, "model file (JSON)")->required();
    auto* mw = app.add_subcommand("mw", "Mordell-Weil groups from the fiber configuration");
    mw->add_option("model", model_path, "model file (JSON)");
    mw->add_option("--fibers", fibers_list, "fiber list, e.g. \"E~8,A~0*\" or \"D4+D4\"");
    auto* vc = app.add_subcommand("verify-case", "check a catalog row of jacobian fibrations");
    vc->add_option("--id", id_str, "row number");
    vc->add_option("--p", p_opt, "characteristic (0 or a prime)");
    vc->add_option("--param", params, "parameter binding, e.g. lambda=3");
    vc->add_option("--max-p", max_p, "largest prime in sweeps");
    vc->add_flag("--all", all, "sweep every row over admissible primes and parameters");
    vc->add_flag("--errata", errata, "use the corrected equations where a row has one");
    vc->add_flag("--no-aut", no_aut, "skip the automorphism substitutions");
    auto* vn = app.add_subcommand("verify-nonjacobian", "check a row of the non-jacobian table");
    vn->add_option("--id", id_str, "row id, e.g. 12' or 4''");
    vn->add_flag("--all", all, "every row");
    auto* ee = app.add_subcommand("enumerate-extremal", "extremal fiber configurations");
    ee->add_option("--p", p, "characteristic (0 or a prime)");
    auto* act = app.add_subcommand("act", "image of a class under the translation tau_A");
    act->add_option("--m", m, "index m")->required();
    act->add_option("--A", A, "class A, 10 integers")->delimiter(',')->required();
    act->add_option("--D", D, "class D, 10 integers")->delimiter(',')->required();
    auto* ts = app.add_subcommand("torsion-scan", "fibers carrying a torsion section disjoint from zero");
    ts->add_option("--fibers", scan_fibers, "1 or 2 special fibers")->check(CLI::IsMember({1, 2}));
    auto* en = app.add_subcommand("enriques", "affine subdiagrams of a configuration");
    en->add_option("--config", config, "A, B, C or D")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        std::uint64_t seed = seed_flag ? *seed_flag : env_seed();
        Report r;
        if (*inv) {
            r = run_invariants(read_model(model_path), seed);
        } else if (*cls) {
            r = run_classify(read_model(model_path), seed);
        } else if (*mw) {
            if (model_path.empty() == fibers_list.empty())
                throw DomainError("mw: give either a model file or --fibers");
            r = fibers_list.empty() ? run_mw_model(read_model(model_path), seed) : run_mw_fibers(fibers_list, seed);
        } else if (*vc) {
            CaseSweep s;
            if (all == !id_str.empty())
                throw DomainError("verify-case: give --id or --all");
            if (!all) {
                try {
                    s.id = std::stoi(id_str);
                } catch (const std::exception&) {
                    throw DomainError("verify-case: --id must be a row number");
                }
                if (!p_opt)
                    throw DomainError("verify-case: --p is required with --id");
            }
            s.p = p_opt;
            s.max_p = max_p;
            for (auto& q : params)
                s.params.insert(parse_param(q));
            s.errata = errata;
            s.automorphisms = !no_aut;
            r = run_verify_case(s, seed);
        } else if (*vn) {
            if (all == !id_str.empty())
                throw DomainError("verify-nonjacobian: give --id or --all");
            r = run_verify_nonjacobian(all ? std::nullopt : std::optional<std::string>(id_str), seed);
        } else if (*ee) {
            r = run_enumerate_extremal(p, seed);
        } else if (*act) {
            r = run_act(m, A, D, seed);
        } else if (*ts) {
            r = run_torsion_scan(scan_fibers, seed);
        } else if (*en) {
            r = run_enriques(config, seed);
        }
        std::cout << (format == "json" ? r.to_json() : r.to_text());
        return r.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
