#include "genusone/picaction.hpp"

#include <sstream>

namespace genusone {

DivisorClass DivisorClass::e(int i)
{
    if (i < 0 || i > 9)
        throw DomainError("basis index out of range");
    DivisorClass d;
    d.c[i] = 1;
    return d;
}

DivisorClass DivisorClass::operator+(const DivisorClass& o) const
{
    DivisorClass r;
    for (int i = 0; i < 10; ++i)
        r.c[i] = c[i] + o.c[i];
    return r;
}

DivisorClass DivisorClass::operator-(const DivisorClass& o) const { return *this + (-o); }

DivisorClass DivisorClass::operator-() const
{
    DivisorClass r;
    for (int i = 0; i < 10; ++i)
        r.c[i] = -c[i];
    return r;
}

bool DivisorClass::is_zero() const
{
    for (auto x : c)
        if (x)
            return false;
    return true;
}

std::string DivisorClass::str() const
{
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < 10; ++i)
        os << (i ? ", " : "") << c[i];
    os << ")";
    return os.str();
}

DivisorClass operator*(long long k, const DivisorClass& d)
{
    DivisorClass r;
    for (int i = 0; i < 10; ++i)
        r.c[i] = k * d.c[i];
    return r;
}

long long dot(const DivisorClass& a, const DivisorClass& b)
{
    long long s = a.c[0] * b.c[0];
    for (int i = 1; i < 10; ++i)
        s -= a.c[i] * b.c[i];
    return s;
}

DivisorClass canonical_class()
{
    DivisorClass k;
    k.c.fill(1);
    k.c[0] = -3;
    return k;
}

DivisorClass fiber_class(long long m)
{
    if (m < 1)
        throw DomainError("fiber multiplicity must be positive");
    return m * -canonical_class();
}

PicIsometry PicIsometry::identity()
{
    PicIsometry g;
    for (int i = 0; i < 10; ++i)
        g.m[i][i] = 1;
    return g;
}

DivisorClass PicIsometry::operator()(const DivisorClass& d) const
{
    DivisorClass r;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            r.c[i] += m[i][j] * d.c[j];
    return r;
}

PicIsometry PicIsometry::operator*(const PicIsometry& g) const
{
    PicIsometry r;
    for (int i = 0; i < 10; ++i)
        for (int k = 0; k < 10; ++k)
            if (m[i][k])
                for (int j = 0; j < 10; ++j)
                    r.m[i][j] += m[i][k] * g.m[k][j];
    return r;
}

PicIsometry PicIsometry::pow(int k) const
{
    if (k < 0)
        throw DomainError("negative power");
    PicIsometry r = identity();
    for (int i = 0; i < k; ++i)
        r = r * *this;
    return r;
}

bool PicIsometry::preserves_form() const
{
    for (int i = 0; i < 10; ++i)
        for (int j = i; j < 10; ++j)
            if (dot((*this)(DivisorClass::e(i)), (*this)(DivisorClass::e(j))) != dot(DivisorClass::e(i), DivisorClass::e(j)))
                return false;
    return true;
}

namespace {

PicIsometry from_map(auto f)
{
    PicIsometry g;
    for (int j = 0; j < 10; ++j) {
        DivisorClass img = f(DivisorClass::e(j));
        for (int i = 0; i < 10; ++i)
            g.m[i][j] = img.c[i];
    }
    return g;
}

} // namespace

DivisorClass tau(const DivisorClass& A, long long m, const DivisorClass& D)
{
    DivisorClass F0 = fiber_class(1);
    if (m < 1)
        throw DomainError("m must be positive");
    if (dot(A, F0) != 0)
        throw DomainError("A is not orthogonal to F0");
    long long dF = dot(D, F0);
    long long twice = m * m * dF * dot(A, A);
    if (twice % 2)
        throw DomainError("non-integral coefficient in the translation formula");
    return D + (m * dF) * A - (twice / 2 + m * dot(A, D)) * F0;
}

PicIsometry tau_matrix(const DivisorClass& A, long long m)
{
    return from_map([&](const DivisorClass& d) { return tau(A, m, d); });
}

PicIsometry reflection(const DivisorClass& alpha)
{
    if (dot(alpha, alpha) != -2)
        throw DomainError("reflection needs a class of square -2");
    return from_map([&](const DivisorClass& x) { return x + dot(x, alpha) * alpha; });
}

PicIsometry eichler(const DivisorClass& v)
{
    DivisorClass F0 = fiber_class(1);
    if (dot(v, canonical_class()) != 0)
        throw DomainError("v is not orthogonal to K");
    long long vv = dot(v, v);
    if (vv % 2)
        throw DomainError("v has odd square");
    return from_map([&](const DivisorClass& x) {
        long long xf = dot(x, F0);
        return x + xf * v - (dot(x, v) + vv / 2 * xf) * F0;
    });
}

std::vector<DivisorClass> e9_simple_roots()
{
    std::vector<DivisorClass> r;
    r.push_back(DivisorClass::e(0) - DivisorClass::e(1) - DivisorClass::e(2) - DivisorClass::e(3));
    for (int i = 1; i <= 8; ++i)
        r.push_back(DivisorClass::e(i) - DivisorClass::e(i + 1));
    return r;
}

std::vector<DivisorClass> e8_splitting_basis()
{
    auto r = e9_simple_roots();
    r.pop_back();
    r.push_back(fiber_class(1));
    return r;
}

std::array<long long, 9> splitting_coordinates(const DivisorClass& x)
{
    if (dot(x, canonical_class()) != 0)
        throw DomainError("class is not orthogonal to K");
    // x = sum c_i alpha_i + c_8 F0.  The e9 coefficient of F0 is -1 and no alpha_i (i < 8) involves e9.
    std::array<long long, 9> c{};
    c[8] = -x.c[9];
    DivisorClass rest = x - c[8] * fiber_class(1);
    // rest = c0 (e0 - e1 - e2 - e3) + sum_{i=1}^{7} c_i (e_i - e_{i+1})
    c[0] = rest.c[0];
    for (int i = 1; i <= 8; ++i) {
        long long from_a0 = (i <= 3) ? -c[0] : 0;
        long long prev = (i >= 2) ? -c[i - 1] : 0;
        if (i <= 7)
            c[i] = rest.c[i] - from_a0 - prev;
        else if (rest.c[8] != prev + from_a0 || rest.c[9] != 0)
            throw DomainError("class outside the span of the splitting basis");
    }
    return c;
}

bool acts_trivially_on_e8_quotient(const PicIsometry& g)
{
    DivisorClass K = canonical_class();
    if (!g.fixes(K))
        throw DomainError("isometry does not fix K");
    DivisorClass F0 = fiber_class(1);
    for (auto& b : e9_simple_roots()) {
        DivisorClass diff = g(b) - b;
        // diff must be a multiple of F0
        long long k = -diff.c[9];
        if (!(diff == k * F0))
            return false;
    }
    return true;
}

bool congruent_to_identity(const PicIsometry& g, long long m)
{
    if (m < 1)
        throw DomainError("m must be positive");
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            if ((g.m[i][j] - (i == j)) % m)
                return false;
    if (!g.fixes(canonical_class()))
        return false;
    for (auto& b : e8_splitting_basis()) {
        auto c = splitting_coordinates(g(b) - b);
        for (auto x : c)
            if (x % m)
                return false;
    }
    return true;
}

} // namespace genusone
