#pragma once

#include "genusone/report.hpp"

#include <optional>

namespace genusone {

// One function per CLI subcommand.  Input problems throw DomainError (exit 3 in the CLI).

Report run_invariants(const ModelFile& f, std::uint64_t seed);
Report run_classify(const ModelFile& f, std::uint64_t seed);
// "E~8,A~0*", "I9,I1", or a root configuration such as "D4+D4".
Report run_mw_fibers(const std::string& list, std::uint64_t seed);
Report run_mw_model(const ModelFile& f, std::uint64_t seed);

struct CaseSweep {
    std::optional<int> id;      // all rows when empty
    std::optional<unsigned> p;  // every admissible prime <= max_p when empty
    unsigned max_p = 13;
    Params params;              // used only with a fixed id
    bool errata = false;
    bool automorphisms = true;
};
Report run_verify_case(const CaseSweep& s, std::uint64_t seed);
Report run_verify_nonjacobian(const std::optional<std::string>& id, std::uint64_t seed);
Report run_enumerate_extremal(unsigned p, std::uint64_t seed);
Report run_act(long long m, const std::vector<long long>& A, const std::vector<long long>& D, std::uint64_t seed);
Report run_torsion_scan(int fibers, std::uint64_t seed);
Report run_enriques(const std::string& label, std::uint64_t seed);

std::vector<unsigned> primes_up_to(unsigned n);

} // namespace genusone
