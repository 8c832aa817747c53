#pragma once

#include "genusone/localfibers.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace genusone {

using IntMatrix = std::vector<std::vector<long long>>;
using ZMatrix = std::vector<std::vector<mpz_class>>;

ZMatrix to_z(const IntMatrix& m);
ZMatrix z_identity(std::size_t n);
ZMatrix z_mul(const ZMatrix& a, const ZMatrix& b);

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ...
struct SmithForm {
    ZMatrix U, D, V;
    std::vector<mpz_class> diag; // min(rows, cols) entries, non-negative
};
SmithForm smith_normal_form(const ZMatrix& A);

struct GramLattice {
    IntMatrix gram;
    explicit GramLattice(IntMatrix g);
    std::size_t rank() const { return gram.size(); }
};

// Invariant factors > 1 of coker(Gram).  Throws DomainError for a degenerate form.
std::vector<long> discriminant_group(const GramLattice& L);

// A finite abelian group given by invariant factors embeds into another one.
bool group_embeds(const std::vector<long>& sub, const std::vector<long>& group);
long group_order(const std::vector<long>& g);
long group_exponent(const std::vector<long>& g);
// Canonical invariant factors (drop 1s, d_1 | d_2 | ...).
std::vector<long> normalize_group(const std::vector<long>& g);

struct RootComponent {
    char series = 'A'; // 'A', 'D', 'E'
    int n = 1;
    bool operator==(const RootComponent& o) const { return series == o.series && n == o.n; }
    bool operator<(const RootComponent& o) const;
    std::string label() const { return std::string(1, series) + std::to_string(n); }
};

struct RootConfiguration {
    std::vector<RootComponent> parts; // sorted by decreasing rank

    RootConfiguration() = default;
    explicit RootConfiguration(std::vector<RootComponent> p);
    // "A8", "D4+D4", "2A1+E6"; an empty string or "0" is the zero lattice.
    static RootConfiguration parse(const std::string& s);
    static RootConfiguration from_fibers(const std::vector<FiberType>& fibers);

    int rank() const;
    // Negative definite: -2 on the diagonal, 1 for joined simple roots.
    IntMatrix gram() const;
    std::string str() const;
    bool operator==(const RootConfiguration& o) const { return parts == o.parts; }
    bool operator<(const RootConfiguration& o) const { return parts < o.parts; }
};

IntMatrix cartan_gram(const RootComponent& c);
std::vector<long> discriminant_group(const RootConfiguration& cfg);

using E8Vector = std::array<int, 8>; // coordinates in the simple-root basis

// Gram matrix of E8 in its simple-root basis (negative definite).
const IntMatrix& e8_gram();
// All 240 roots, ordered: simple roots first, then by reflection-closure order.
const std::vector<E8Vector>& e8_roots();
int e8_dot(const E8Vector& a, const E8Vector& b);

struct Embedding {
    RootConfiguration cfg;
    std::vector<int> images; // indices into e8_roots(), one per simple root of cfg.gram()
    std::vector<E8Vector> vectors() const;
};

struct SubsystemSearch {
    std::vector<Embedding> found;
    bool exhaustive = true; // false when the leaf cap was hit
    std::string reason;     // why nothing was found, if applicable
};

std::optional<Embedding> find_subsystem(const RootConfiguration& cfg);
// Enumerates embeddings with the first simple root fixed (the Weyl group is transitive on roots).
SubsystemSearch find_embeddings(const RootConfiguration& cfg, std::size_t max_leaves);

struct MWData {
    int rank = 0;
    std::vector<long> torsion;
    bool operator==(const MWData& o) const { return rank == o.rank && torsion == o.torsion; }
    bool operator<(const MWData& o) const;
    std::string str() const;
};

// E8 / span(images) computed by SNF.
MWData quotient(const Embedding& e);

struct MWReport {
    RootConfiguration cfg;
    bool embeddable = false;
    std::string reason;
    std::vector<MWData> types; // distinct quotients seen, sorted
    std::size_t embeddings_examined = 0;
    bool exhaustive = false;
    std::vector<long> disc; // Disc(T)
    // Only meaningful when rank(T) = 8.
    bool order_identity = true;    // |MW|^2 == |Disc(T)|
    bool mw_in_disc = true;        // MW embeds in Disc(T)
    bool double_mw_in_disc = true; // MW + MW embeds in Disc(T)
};

MWReport mw_from_config(const RootConfiguration& cfg, std::size_t max_leaves = 20000);

// lcm of the exponents of the component groups.
long compute_d(const std::vector<FiberType>& fibers);

// Simple components are indexed by the component group; 0 is the identity component.
int simple_component_count(const FiberType& t);
mpq_class local_contribution(const FiberType& t, int component);
int component_order(const FiberType& t, int component);

struct ScanEntry {
    std::vector<FiberType> fibers; // one or two fibers
    std::vector<int> components;
    mpq_class contribution;
    int order = 1;
    bool additive = true;
    std::string str() const;
};

// Fibers (one special fiber, or a pair for the Enriques variant) that can carry a torsion section
// disjoint from the zero section: height 0 = 2 - sum of contributions.
std::vector<ScanEntry> torsion_fiber_scan(int num_special_fibers);

} // namespace genusone
