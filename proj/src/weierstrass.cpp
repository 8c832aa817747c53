#include "genusone/weierstrass.hpp"

#include <sstream>

namespace genusone {

WeierstrassModel::WeierstrassModel(Poly a1_, Poly a2_, Poly a3_, Poly a4_, Poly a6_)
    : base(a1_.field()), a1(std::move(a1_)), a2(std::move(a2_)), a3(std::move(a3_)), a4(std::move(a4_)),
      a6(std::move(a6_))
{
    for (const Poly* p : {&a2, &a3, &a4, &a6})
        if (p->field() != base)
            throw DomainError("Weierstrass coefficients over different fields");
}

WeierstrassModel WeierstrassModel::from_ints(const Field& K, const std::vector<long long>& a1,
                                             const std::vector<long long>& a2, const std::vector<long long>& a3,
                                             const std::vector<long long>& a4, const std::vector<long long>& a6)
{
    return WeierstrassModel(Poly::from_ints(K, a1), Poly::from_ints(K, a2), Poly::from_ints(K, a3),
                            Poly::from_ints(K, a4), Poly::from_ints(K, a6));
}

const Poly& WeierstrassModel::a(int i) const
{
    switch (i) {
    case 1: return a1;
    case 2: return a2;
    case 3: return a3;
    case 4: return a4;
    case 6: return a6;
    }
    throw DomainError("no coefficient a" + std::to_string(i));
}

bool WeierstrassModel::operator==(const WeierstrassModel& o) const
{
    return a1 == o.a1 && a2 == o.a2 && a3 == o.a3 && a4 == o.a4 && a6 == o.a6;
}

std::string WeierstrassModel::str(const std::string& var) const
{
    auto term = [&](const Poly& c, const std::string& mono) -> std::string {
        if (c.is_zero())
            return "";
        std::string cs = c.str(var);
        if (cs == "1")
            return " + " + mono;
        if (c.degree() == 0)
            return " + " + cs + "*" + mono;
        return " + (" + cs + ")*" + mono;
    };
    std::string lhs = "y^2" + term(a1, "x*y") + term(a3, "y");
    std::string rhs = "x^3" + term(a2, "x^2") + term(a4, "x");
    if (!a6.is_zero())
        rhs += a6.degree() == 0 ? " + " + a6.str(var) : " + (" + a6.str(var) + ")";
    return lhs + " = " + rhs;
}

int WeierstrassModel::weight() const
{
    int k = 0;
    for (int i : {1, 2, 3, 4, 6}) {
        int d = a(i).degree();
        if (d > 0)
            k = std::max(k, (d + i - 1) / i);
    }
    return k;
}

StandardInvariants compute_invariants(const WeierstrassModel& m)
{
    const Field& K = m.base;
    auto c = [&](long long n) { return Poly::constant(K.from_int(n)); };
    StandardInvariants I;
    const Poly &a1 = m.a1, &a2 = m.a2, &a3 = m.a3, &a4 = m.a4, &a6 = m.a6;
    I.b2 = a1 * a1 + c(4) * a2;
    I.b4 = c(2) * a4 + a1 * a3;
    I.b6 = a3 * a3 + c(4) * a6;
    I.b8 = a1 * a1 * a6 + c(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    I.c4 = I.b2 * I.b2 - c(24) * I.b4;
    I.c6 = -(I.b2 * I.b2 * I.b2) + c(36) * I.b2 * I.b4 - c(216) * I.b6;
    I.disc = -(I.b2 * I.b2 * I.b8) - c(8) * I.b4 * I.b4 * I.b4 - c(27) * I.b6 * I.b6 + c(9) * I.b2 * I.b4 * I.b6;
    if (!I.disc.is_zero()) {
        Poly num = I.c4 * I.c4 * I.c4;
        Poly g = poly_gcd(num, I.disc);
        if (num.is_zero())
            I.j = std::make_pair(num, Poly::constant(K.one()));
        else {
            Poly n = num.exact_div(g), d = I.disc.exact_div(g);
            Elem l = d.lead().inv();
            I.j = std::make_pair(n * l, d * l);
        }
    }
    return I;
}

AdmissibleChange AdmissibleChange::identity(const Field& K)
{
    return {Poly::constant(K.one()), Poly(K), Poly(K), Poly(K)};
}

AdmissibleChange AdmissibleChange::then(const AdmissibleChange& h) const
{
    AdmissibleChange c;
    c.u = u * h.u;
    c.r = r + u * u * h.r;
    c.s = s + u * h.s;
    c.w = w + u * u * u * h.w + s * u * u * h.r;
    return c;
}

namespace {

void check_unit(const Poly& u)
{
    if (u.is_zero())
        throw DomainError("transform: u = 0 is not invertible");
    for (int i = 0; i < u.degree(); ++i)
        if (!u.coeff(i).is_zero())
            throw DomainError("transform: u must be a constant or a monomial, got " + u.str());
}

} // namespace

WeierstrassModel transform(const WeierstrassModel& m, const Poly& u, const Poly& r, const Poly& s,
                           const Poly& w)
{
    check_unit(u);
    const Field& K = m.base;
    auto c = [&](long long n) { return Poly::constant(K.from_int(n)); };
    const Poly &a1 = m.a1, &a2 = m.a2, &a3 = m.a3, &a4 = m.a4, &a6 = m.a6;
    Poly n1 = a1 + c(2) * s;
    Poly n2 = a2 - s * a1 + c(3) * r - s * s;
    Poly n3 = a3 + r * a1 + c(2) * w;
    Poly n4 = a4 - s * a3 + c(2) * r * a2 - (w + r * s) * a1 + c(3) * r * r - c(2) * s * w;
    Poly n6 = a6 + r * a4 + r * r * a2 + r * r * r - w * a3 - w * w - r * w * a1;
    Poly u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    try {
        return WeierstrassModel(n1.exact_div(u), n2.exact_div(u2), n3.exact_div(u3), n4.exact_div(u4),
                                n6.exact_div(u6));
    } catch (const DomainError&) {
        throw DomainError("transform: u^i does not divide the transformed a_i (non-integral result)");
    }
}

std::string to_string(GenericFiberKind k)
{
    switch (k) {
    case GenericFiberKind::Elliptic: return "elliptic";
    case GenericFiberKind::QuasiElliptic: return "quasi-elliptic";
    case GenericFiberKind::Invalid: return "invalid";
    }
    return "?";
}

namespace {

// f in k[t] is a p-th power in k(t) iff it is one in k[t], iff only exponents divisible by p occur.
bool is_pth_power(const Poly& f, unsigned p, Poly* root)
{
    for (int i = 0; i <= f.degree(); ++i)
        if (i % static_cast<int>(p) && !f.coeff(i).is_zero())
            return false;
    if (root) {
        std::vector<Elem> c;
        for (int i = 0; i <= f.degree(); i += p)
            c.push_back(f.coeff(i).frobenius_root());
        *root = Poly(f.field(), c);
    }
    return true;
}

} // namespace

GenericFiberKind generic_fiber_kind(const WeierstrassModel& m)
{
    StandardInvariants I = compute_invariants(m);
    if (!I.disc.is_zero())
        return GenericFiberKind::Elliptic;
    const unsigned p = m.base.characteristic();
    if (p == 3) {
        // y' = y + (a1 x + a3)/2 turns the curve into y'^2 = x^3 + (b2/4)x^2 + (b4/2)x + b6/4.
        if (!I.b2.is_zero())
            return GenericFiberKind::Invalid;
        if (!I.b4.is_zero())
            return GenericFiberKind::Invalid;
        return is_pth_power(I.b6, 3, nullptr) ? GenericFiberKind::Invalid : GenericFiberKind::QuasiElliptic;
    }
    if (p == 2) {
        if (!m.a1.is_zero())
            return GenericFiberKind::Invalid;
        if (!m.a3.is_zero())
            return GenericFiberKind::Invalid;
        Poly x0;
        if (!is_pth_power(m.a4, 2, &x0))
            return GenericFiberKind::QuasiElliptic;
        Poly y2 = x0 * x0 * x0 + m.a2 * x0 * x0 + m.a4 * x0 + m.a6;
        return is_pth_power(y2, 2, nullptr) ? GenericFiberKind::Invalid : GenericFiberKind::QuasiElliptic;
    }
    return GenericFiberKind::Invalid;
}

WeierstrassModel model_at_infinity(const WeierstrassModel& m)
{
    const int k = std::max(1, m.weight());
    return WeierstrassModel(m.a1.reversed(k), m.a2.reversed(2 * k), m.a3.reversed(3 * k), m.a4.reversed(4 * k),
                            m.a6.reversed(6 * k));
}

long long count_points(const Elem& a1, const Elem& a2, const Elem& a3, const Elem& a4, const Elem& a6)
{
    const Field& F = a1.field();
    const std::uint64_t q = F.size();
    const unsigned p = F.characteristic();
    long long n = 1; // point at infinity
    mpz_class e = mpz_class(static_cast<unsigned long>(q - 1)) / 2;
    for (std::uint64_t i = 0; i < q; ++i) {
        Elem x = F.element(i);
        Elem b = a1 * x + a3;
        Elem c = ((x + a2) * x + a4) * x + a6;
        // y^2 + b y - c = 0
        if (p == 2) {
            if (b.is_zero()) {
                n += 1;
                continue;
            }
            // y = b z: z^2 + z = c / b^2, solvable iff the absolute trace vanishes
            Elem v = c / (b * b);
            Elem tr = v, pw = v;
            for (unsigned j = 1; j < F.degree(); ++j) {
                pw = pw * pw;
                tr += pw;
            }
            if (tr.is_zero())
                n += 2;
            continue;
        }
        Elem D = b * b + F.from_int(4) * c;
        if (D.is_zero())
            n += 1;
        else if (D.pow(e).is_one())
            n += 2;
    }
    return n;
}

} // namespace genusone
