#pragma once

#include "genusone/exactalg.hpp"

#include <optional>
#include <string>

namespace genusone {

struct WeierstrassModel {
    Field base;
    Poly a1, a2, a3, a4, a6;

    WeierstrassModel() = default;
    WeierstrassModel(Poly a1_, Poly a2_, Poly a3_, Poly a4_, Poly a6_);
    static WeierstrassModel from_ints(const Field& K, const std::vector<long long>& a1,
                                      const std::vector<long long>& a2, const std::vector<long long>& a3,
                                      const std::vector<long long>& a4, const std::vector<long long>& a6);

    const Poly& a(int i) const;
    bool operator==(const WeierstrassModel& o) const;
    std::string str(const std::string& var = "t") const;
    // Largest ceil(deg a_i / i); the weight needed to clear denominators at infinity.
    int weight() const;
};

struct StandardInvariants {
    Poly b2, b4, b6, b8, c4, c6, disc;
    // j = c4^3 / disc in lowest terms; absent when disc = 0.
    std::optional<std::pair<Poly, Poly>> j;
};

StandardInvariants compute_invariants(const WeierstrassModel& m);

// x -> u^2 x + r, y -> u^3 y + s u^2 x + w.  u is a nonzero constant or c*t^k.
struct AdmissibleChange {
    Poly u, r, s, w;
    static AdmissibleChange identity(const Field& K);
    // Apply *this first, then h.
    AdmissibleChange then(const AdmissibleChange& h) const;
};

WeierstrassModel transform(const WeierstrassModel& m, const Poly& u, const Poly& r, const Poly& s,
                           const Poly& w);
inline WeierstrassModel transform(const WeierstrassModel& m, const AdmissibleChange& g)
{
    return transform(m, g.u, g.r, g.s, g.w);
}

enum class GenericFiberKind { Elliptic, QuasiElliptic, Invalid };
std::string to_string(GenericFiberKind k);

GenericFiberKind generic_fiber_kind(const WeierstrassModel& m);

// Model in the variable s = 1/t, scaled by s^{k i} on a_i, k = max(1, weight()).
WeierstrassModel model_at_infinity(const WeierstrassModel& m);

bool is_supersingular(const WeierstrassModel& m, const Place& place);

// #E(F_q) + trace for y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with constant coefficients.
long long count_points(const Elem& a1, const Elem& a2, const Elem& a3, const Elem& a4, const Elem& a6);

} // namespace genusone
