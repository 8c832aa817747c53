#include "genusone/localfibers.hpp"

#include <algorithm>
#include <climits>
#include <map>

namespace genusone {

// ---------------------------------------------------------------- fiber types

bool FiberType::operator<(const FiberType& o) const
{
    if (kind != o.kind)
        return static_cast<int>(kind) < static_cast<int>(o.kind);
    return n < o.n;
}

int FiberType::components() const
{
    switch (kind) {
    case Kodaira::I0: return 1;
    case Kodaira::In: return n;
    case Kodaira::II: return 1;
    case Kodaira::III: return 2;
    case Kodaira::IV: return 3;
    case Kodaira::InStar: return n + 5;
    case Kodaira::IVStar: return 7;
    case Kodaira::IIIStar: return 8;
    case Kodaira::IIStar: return 9;
    }
    return 1;
}

int FiberType::euler() const
{
    if (smooth())
        return 0;
    if (multiplicative())
        return n;
    return components() + 1;
}

std::vector<long> FiberType::disc() const
{
    switch (kind) {
    case Kodaira::I0:
    case Kodaira::II: return {};
    case Kodaira::In: return n == 1 ? std::vector<long>{} : std::vector<long>{n};
    case Kodaira::III: return {2};
    case Kodaira::IV: return {3};
    case Kodaira::InStar: return (n % 2) ? std::vector<long>{4} : std::vector<long>{2, 2};
    case Kodaira::IVStar: return {3};
    case Kodaira::IIIStar: return {2};
    case Kodaira::IIStar: return {};
    }
    return {};
}

std::string FiberType::kodaira() const
{
    switch (kind) {
    case Kodaira::I0: return "I0";
    case Kodaira::In: return "I" + std::to_string(n);
    case Kodaira::II: return "II";
    case Kodaira::III: return "III";
    case Kodaira::IV: return "IV";
    case Kodaira::InStar: return "I" + std::to_string(n) + "*";
    case Kodaira::IVStar: return "IV*";
    case Kodaira::IIIStar: return "III*";
    case Kodaira::IIStar: return "II*";
    }
    return "?";
}

std::string FiberType::dynkin() const
{
    switch (kind) {
    case Kodaira::I0: return "A~0";
    case Kodaira::In: return n == 1 ? "A~0*" : "A~" + std::to_string(n - 1);
    case Kodaira::II: return "A~0**";
    case Kodaira::III: return "A~1*";
    case Kodaira::IV: return "A~2*";
    case Kodaira::InStar: return "D~" + std::to_string(n + 4);
    case Kodaira::IVStar: return "E~6";
    case Kodaira::IIIStar: return "E~7";
    case Kodaira::IIStar: return "E~8";
    }
    return "?";
}

FiberType FiberType::I(int n)
{
    if (n < 0)
        throw DomainError("I_n needs n >= 0");
    return n == 0 ? FiberType{} : FiberType{Kodaira::In, n};
}

FiberType FiberType::Istar(int n)
{
    if (n < 0)
        throw DomainError("I_n^* needs n >= 0");
    return {Kodaira::InStar, n};
}

FiberType FiberType::of(Kodaira k) { return {k, 0}; }

FiberType FiberType::parse(const std::string& raw)
{
    std::string s;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(raw[i]);
        if (c == 0xC3 && i + 1 < raw.size() && static_cast<unsigned char>(raw[i + 1]) == 0x83) {
            s += 'A'; // precomposed A with tilde
            ++i;
        } else if (c == 0xCC && i + 1 < raw.size() && static_cast<unsigned char>(raw[i + 1]) == 0x83) {
            ++i; // combining tilde
        } else if (c == '~' || c == ' ' || c == '_') {
        } else
            s += static_cast<char>(c);
    }
    auto fail = [&]() -> FiberType { throw DomainError("unknown fiber label '" + raw + "'"); };
    if (s.empty())
        return fail();
    static const std::map<std::string, FiberType> fixed = {
        {"I0", FiberType{}},
        {"II", of(Kodaira::II)},
        {"III", of(Kodaira::III)},
        {"IV", of(Kodaira::IV)},
        {"IV*", of(Kodaira::IVStar)},
        {"III*", of(Kodaira::IIIStar)},
        {"II*", of(Kodaira::IIStar)},
        {"A0", FiberType{}},
        {"A0*", I(1)},
        {"A0**", of(Kodaira::II)},
        {"A1*", of(Kodaira::III)},
        {"A2*", of(Kodaira::IV)},
        {"E6", of(Kodaira::IVStar)},
        {"E7", of(Kodaira::IIIStar)},
        {"E8", of(Kodaira::IIStar)},
    };
    if (auto it = fixed.find(s); it != fixed.end())
        return it->second;
    auto number = [&](std::size_t from, std::size_t to) -> int {
        if (from >= to)
            fail();
        int v = 0;
        for (std::size_t i = from; i < to; ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                fail();
            v = v * 10 + (s[i] - '0');
            if (v > 1000)
                fail();
        }
        return v;
    };
    if (s[0] == 'I') {
        if (s.back() == '*')
            return Istar(number(1, s.size() - 1));
        return I(number(1, s.size()));
    }
    if (s[0] == 'A') {
        int k = number(1, s.size());
        return I(k + 1);
    }
    if (s[0] == 'D') {
        int k = number(1, s.size());
        if (k < 4)
            fail();
        return Istar(k - 4);
    }
    return fail();
}

std::vector<FiberType> FiberType::all_singular(int max_rank)
{
    std::vector<FiberType> out{I(1), of(Kodaira::II)};
    if (max_rank >= 1)
        out.push_back(of(Kodaira::III));
    if (max_rank >= 2)
        out.push_back(of(Kodaira::IV));
    for (int n = 2; n - 1 <= max_rank; ++n)
        out.push_back(I(n));
    for (int n = 0; n + 4 <= max_rank; ++n)
        out.push_back(Istar(n));
    if (max_rank >= 6)
        out.push_back(of(Kodaira::IVStar));
    if (max_rank >= 7)
        out.push_back(of(Kodaira::IIIStar));
    if (max_rank >= 8)
        out.push_back(of(Kodaira::IIStar));
    return out;
}

// ---------------------------------------------------------------- local models

LocalModel local_model(const WeierstrassModel& m, const Place& place)
{
    if (place.base() != m.base)
        throw DomainError("place and model over different fields");
    if (place.is_infinity())
        return {m.base, model_at_infinity(m)};
    Field L = residue_field_at(place);
    Elem alpha = residue_point(place, L);
    Poly shift = Poly::var(L) + Poly::constant(alpha);
    auto mv = [&](const Poly& a) { return a.change_field(L).compose(shift); };
    return {L, WeierstrassModel(mv(m.a1), mv(m.a2), mv(m.a3), mv(m.a4), mv(m.a6))};
}

namespace {

constexpr int kInf = INT_MAX / 4;

int val(const Poly& f) { return f.is_zero() ? kInf : f.valuation(); }

Elem red(const Poly& f) { return f.coeff(0); }

Poly lift(const Elem& e) { return Poly::constant(e); }

Poly tpow(const Field& L, int k) { return Poly::monomial(L.one(), k); }

Elem cube_root(const Elem& x)
{
    if (x.field().characteristic() != 3)
        throw DomainError("cube root only needed in characteristic 3");
    return x.frobenius_root();
}

Elem square_root(const Elem& x)
{
    Elem r;
    if (!x.sqrt(r))
        throw DomainError("square root missing in Tate step (residue field not perfect?)");
    return r;
}

// Does X^2 + b X + c have a root in the residue field?
bool quadratic_has_root(const Elem& b, const Elem& c)
{
    const Field& F = b.field();
    if (F.characteristic() == 2) {
        if (b.is_zero())
            return true;
        Elem v = c / (b * b);
        Elem tr = v, pw = v;
        for (unsigned j = 1; j < F.degree(); ++j) {
            pw = pw * pw;
            tr += pw;
        }
        return tr.is_zero();
    }
    Elem D = b * b - F.from_int(4) * c, r;
    return D.sqrt(r);
}

struct TateResult {
    FiberType type;
    int vdisc = 0;
    bool split = true;
    int u_power = 0;
    WeierstrassModel scaled; // model after the last rescaling (the input if none)
};

TateResult tate_local(const LocalModel& lm)
{
    const Field& L = lm.residue;
    const unsigned p = L.characteristic();
    auto K = [&](long long n) { return L.from_int(n); };
    const Poly T = Poly::var(L);
    const Poly zero(L), one = lift(L.one());

    TateResult out;
    WeierstrassModel C = lm.model;
    out.scaled = C;
    auto xf = [&](const Poly& r, const Poly& s, const Poly& t) { C = transform(C, one, r, s, t); };

    for (;;) {
        StandardInvariants I = compute_invariants(C);
        if (I.disc.is_zero())
            throw DomainError("tate: discriminant vanishes identically");
        const int n = val(I.disc);
        out.vdisc = n;
        if (n == 0) {
            out.type = FiberType{};
            return out;
        }
        Elem r, t;
        if (p == 2) {
            if (val(I.b2) > 0) {
                r = square_root(red(C.a4));
                t = square_root(((r + red(C.a2)) * r + red(C.a4)) * r + red(C.a6));
            } else {
                Elem ia1 = red(C.a1).inv();
                r = ia1 * red(C.a3);
                t = ia1 * (red(C.a4) + r * r);
            }
        } else if (p == 3) {
            if (val(I.b2) > 0)
                r = cube_root(-red(I.b6));
            else
                r = -red(I.b4) / red(I.b2);
            t = red(C.a1) * r + red(C.a3);
        } else {
            if (val(I.c4) > 0)
                r = -red(I.b2) / K(12);
            else
                r = -(red(I.c6) + red(I.b2) * red(I.c4)) / (K(12) * red(I.c4));
            t = -(red(C.a1) * r + red(C.a3)) / K(2);
        }
        xf(lift(r), zero, lift(t));
        I = compute_invariants(C);

        if (val(I.c4) == 0) {
            out.type = FiberType::I(n);
            out.split = quadratic_has_root(red(C.a1), -red(C.a2));
            return out;
        }
        if (val(C.a6) < 2) {
            out.type = FiberType::of(Kodaira::II);
            return out;
        }
        if (val(I.b8) < 3) {
            out.type = FiberType::of(Kodaira::III);
            return out;
        }
        if (val(I.b6) < 3) {
            out.type = FiberType::of(Kodaira::IV);
            return out;
        }

        // now make T | a1, a2;  T^2 | a3, a4;  T^3 | a6
        if (p == 2) {
            Poly s = lift(square_root(red(C.a2)));
            Poly w = T * lift(square_root(red(C.a6.shift_down(2))));
            xf(zero, s, w);
        } else if (p == 3) {
            xf(zero, C.a1, C.a3);
        } else {
            Elem h = K(2).inv();
            xf(zero, -(C.a1 * h), -(C.a3 * h));
        }

        Elem b = red(C.a2.shift_down(1));
        Elem c = red(C.a4.shift_down(2));
        Elem d = red(C.a6.shift_down(3));
        Elem w = K(27) * d * d - b * b * c * c + K(4) * b * b * b * d - K(18) * b * c * d + K(4) * c * c * c;
        Elem x = K(3) * c - b * b;

        if (!w.is_zero()) {
            out.type = FiberType::Istar(0);
            return out;
        }
        if (!x.is_zero()) {
            // double root: move it to 0 and walk the I_m^* chain
            Elem r0;
            if (p == 2)
                r0 = square_root(c);
            else if (p == 3)
                r0 = c / b;
            else
                r0 = (b * c - K(9) * d) / (K(2) * x);
            xf(T * lift(r0), zero, zero);
            int ix = 3, iy = 3, kx = 2, ky = 2;
            for (;;) {
                Elem a2t = red(C.a2.shift_down(1));
                Elem a3t = red(C.a3.shift_down(ky));
                Elem a6t = red(C.a6.shift_down(kx + ky));
                if (!(a3t * a3t + K(4) * a6t).is_zero())
                    break;
                Elem tt = p == 2 ? square_root(a6t) : -a3t / K(2);
                xf(zero, zero, tpow(L, ky) * lift(tt));
                ++ky;
                ++iy;
                a2t = red(C.a2.shift_down(1));
                Elem a4t = red(C.a4.shift_down(1 + kx));
                a6t = red(C.a6.shift_down(kx + ky));
                if (!(a4t * a4t - K(4) * a6t * a2t).is_zero())
                    break;
                Elem rr = p == 2 ? square_root(a6t / a2t) : -a4t / (K(2) * a2t);
                xf(tpow(L, kx) * lift(rr), zero, zero);
                ++kx;
                ++ix;
            }
            out.type = FiberType::Istar(ix + iy - 5);
            return out;
        }
        // triple root
        Elem r0;
        if (p == 2)
            r0 = b;
        else if (p == 3)
            r0 = cube_root(-d);
        else
            r0 = -b / K(3);
        xf(T * lift(r0), zero, zero);
        Elem a3t = red(C.a3.shift_down(2));
        Elem a6t = red(C.a6.shift_down(4));
        if (!(a3t * a3t + K(4) * a6t).is_zero()) {
            out.type = FiberType::of(Kodaira::IVStar);
            return out;
        }
        Elem tt = p == 2 ? -square_root(a6t) : -a3t / K(2);
        xf(zero, zero, tpow(L, 2) * lift(tt));
        if (val(C.a4) < 4) {
            out.type = FiberType::of(Kodaira::IIIStar);
            return out;
        }
        if (val(C.a6) < 6) {
            out.type = FiberType::of(Kodaira::IIStar);
            return out;
        }
        // not minimal: scale by u = T
        C = transform(C, T, zero, zero, zero);
        ++out.u_power;
        out.scaled = C;
    }
}

LocalFiberData make_data(const Place& place, const TateResult& tr)
{
    LocalFiberData d;
    d.place = place;
    d.type = tr.type;
    d.vdisc = tr.vdisc;
    d.b = tr.type.components();
    d.e = tr.type.euler();
    d.delta = tr.vdisc - d.e;
    d.disc = tr.type.disc();
    d.split = tr.split;
    d.u_power = tr.u_power;
    if (d.delta < 0)
        throw DomainError("tate: negative wild part at " + place.str());
    return d;
}

} // namespace

WeierstrassModel minimalize_at(const WeierstrassModel& m, const Place& place)
{
    if (generic_fiber_kind(m) != GenericFiberKind::Elliptic)
        throw Unsupported("minimalize_at: only elliptic models are minimalized");
    return tate_local(local_model(m, place)).scaled;
}

LocalFiberData tate_at(const WeierstrassModel& m, const Place& place)
{
    LocalModel lm;
    try {
        lm = local_model(m, place);
    } catch (const Unsupported& e) {
        LocalFiberData d;
        d.place = place;
        d.classified = false;
        d.reason = e.what();
        return d;
    }
    return make_data(place, tate_local(lm));
}

GlobalReport classify_places(const WeierstrassModel& m, std::uint64_t seed)
{
    if (generic_fiber_kind(m) != GenericFiberKind::Elliptic)
        throw Unsupported("classify: the generic fiber is not elliptic; quasi-elliptic fibers are not "
                          "classified from equations");
    GlobalReport rep;
    StandardInvariants I = compute_invariants(m);
    std::vector<Place> places;
    for (const Factor& f : factor(I.disc, seed))
        places.push_back(Place::finite(f.f));
    std::sort(places.begin(), places.end());
    places.push_back(Place::infinity(m.base));
    for (const Place& pl : places) {
        LocalFiberData d = tate_at(m, pl);
        const int deg = pl.degree();
        if (!d.classified) {
            rep.conclusive = false;
            rep.notes.push_back("unclassified place " + pl.str() + ": " + d.reason);
        } else {
            rep.euler_sum += (d.e + d.delta) * deg;
            rep.rank_sum += (d.b - 1) * deg;
            if (d.u_power > 0)
                rep.notes.push_back("minimalized at " + pl.str() + " with u = pi^" + std::to_string(d.u_power));
        }
        rep.fibers.push_back(std::move(d));
    }
    rep.extremal = rep.conclusive && rep.rank_sum == 8;
    return rep;
}

GlobalReport classify_all(const WeierstrassModel& m, std::uint64_t seed)
{
    GlobalReport rep = classify_places(m, seed);
    if (rep.conclusive && rep.euler_sum != 12)
        throw NotRationalElliptic("Euler sum " + std::to_string(rep.euler_sum) +
                                  " != 12: not a rational elliptic surface");
    return rep;
}

std::vector<std::string> fiber_multiset(const GlobalReport& r)
{
    std::vector<std::pair<int, std::string>> items;
    for (const auto& f : r.fibers) {
        if (!f.classified || f.type.smooth())
            continue;
        for (int i = 0; i < f.place.degree(); ++i)
            items.emplace_back(-f.type.rank(), f.type.dynkin());
    }
    std::sort(items.begin(), items.end());
    std::vector<std::string> out;
    for (auto& it : items)
        out.push_back(it.second);
    return out;
}

// Point counting on the minimal model at a place with finite residue field.
bool is_supersingular(const WeierstrassModel& m, const Place& place)
{
    LocalModel lm = local_model(m, place);
    if (!lm.residue.is_finite())
        throw Unsupported("is_supersingular: infinite residue field");
    if (lm.residue.size() > 2000000)
        throw Unsupported("is_supersingular: residue field too large for point counting");
    TateResult tr = tate_local(lm);
    if (!tr.type.smooth())
        throw DomainError("is_supersingular: fiber at " + place.str() + " is " + tr.type.kodaira() +
                          ", not smooth");
    const WeierstrassModel& c = tr.scaled;
    long long N = count_points(red(c.a1), red(c.a2), red(c.a3), red(c.a4), red(c.a6));
    long long q = static_cast<long long>(lm.residue.size());
    long long trace = q + 1 - N;
    long long p = lm.residue.characteristic();
    return ((trace % p) + p) % p == 0;
}

} // namespace genusone
