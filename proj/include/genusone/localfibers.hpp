#pragma once

#include "genusone/weierstrass.hpp"

#include <string>
#include <vector>

namespace genusone {

enum class Kodaira { I0, In, II, III, IV, InStar, IVStar, IIIStar, IIStar };

// Kodaira symbol with its index: n for I_n (n >= 1) and for I_n^* (n >= 0).
struct FiberType {
    Kodaira kind = Kodaira::I0;
    int n = 0;

    bool operator==(const FiberType& o) const { return kind == o.kind && n == o.n; }
    bool operator<(const FiberType& o) const;

    bool smooth() const { return kind == Kodaira::I0; }
    bool multiplicative() const { return kind == Kodaira::In; }
    bool additive() const { return !smooth() && !multiplicative(); }
    int components() const;
    // Euler contribution e_t (tame part).
    int euler() const;
    // Rank of the root lattice spanned by non-identity components.
    int rank() const { return components() - 1; }
    // Discriminant group of that root lattice (invariant factors).
    std::vector<long> disc() const;

    std::string kodaira() const;
    // Affine Dynkin label in ASCII, e.g. "A~8", "D~4", "E~8", "A~0*", "A~0**", smooth "A~0".
    std::string dynkin() const;

    static FiberType I(int n);
    static FiberType Istar(int n);
    static FiberType of(Kodaira k);
    // Inverse of dynkin(); also accepts Kodaira symbols and the tilde-free forms "A8", "D4~".
    static FiberType parse(const std::string& label);
    // Every type whose root lattice has rank <= max_rank (smooth excluded).
    static std::vector<FiberType> all_singular(int max_rank = 8);
};

struct LocalFiberData {
    Place place;
    bool classified = true;
    std::string reason; // why unclassified
    FiberType type;
    int vdisc = 0;
    int b = 1;
    int e = 0;
    int delta = 0;
    std::vector<long> disc;
    // Only for multiplicative fibers: whether the tangent slopes are rational.
    bool split = true;
    // Total scaling exponent k of u = pi^k applied to reach a minimal model.
    int u_power = 0;
};

struct LocalModel {
    Field residue;
    // Coefficients are polynomials in the local parameter (t - alpha, or s = 1/t).
    WeierstrassModel model;
};

LocalModel local_model(const WeierstrassModel& m, const Place& place);
WeierstrassModel minimalize_at(const WeierstrassModel& m, const Place& place);
LocalFiberData tate_at(const WeierstrassModel& m, const Place& place);

struct NotRationalElliptic : DomainError {
    using DomainError::DomainError;
};

struct GlobalReport {
    std::vector<LocalFiberData> fibers; // zeros of the discriminant and infinity
    int euler_sum = 0;                  // over classified places, degree-weighted
    int rank_sum = 0;                   // sum of (b_t - 1) deg
    bool extremal = false;
    bool conclusive = true;
    std::vector<std::string> notes;
};

// Throws NotRationalElliptic when the degree-weighted Euler sum differs from 12.
GlobalReport classify_all(const WeierstrassModel& m, std::uint64_t seed = 0);
// Same computation without the Euler check (callers inspect euler_sum themselves).
GlobalReport classify_places(const WeierstrassModel& m, std::uint64_t seed = 0);

// Degree-weighted multiset of the singular fiber labels, sorted.
std::vector<std::string> fiber_multiset(const GlobalReport& r);

} // namespace genusone
