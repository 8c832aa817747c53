#pragma once

#include "genusone/exactalg.hpp"

#include <array>
#include <string>
#include <vector>

namespace genusone {

// Class in I^{1,9} written in the geometric basis e0, ..., e9.
struct DivisorClass {
    std::array<long long, 10> c{};

    static DivisorClass e(int i);
    long long& operator[](int i) { return c[i]; }
    long long operator[](int i) const { return c[i]; }
    DivisorClass operator+(const DivisorClass& o) const;
    DivisorClass operator-(const DivisorClass& o) const;
    DivisorClass operator-() const;
    bool operator==(const DivisorClass& o) const { return c == o.c; }
    bool operator<(const DivisorClass& o) const { return c < o.c; }
    bool is_zero() const;
    std::string str() const;
};

DivisorClass operator*(long long k, const DivisorClass& d);

// e0^2 = 1, ei^2 = -1, distinct basis vectors orthogonal.
long long dot(const DivisorClass& a, const DivisorClass& b);

DivisorClass canonical_class(); // -3e0 + e1 + ... + e9
DivisorClass fiber_class(long long m = 1); // m F_0 with F_0 = -K

// Column j is the image of e_j.
struct PicIsometry {
    std::array<std::array<long long, 10>, 10> m{};

    static PicIsometry identity();
    DivisorClass operator()(const DivisorClass& d) const;
    // (*this)(g(x))
    PicIsometry operator*(const PicIsometry& g) const;
    bool operator==(const PicIsometry& o) const { return m == o.m; }
    PicIsometry pow(int k) const;
    bool preserves_form() const;
    bool fixes(const DivisorClass& d) const { return (*this)(d) == d; }
};

// tau_A^*(D) = D + m(D.F0)A - (m^2 (D.F0) A^2 / 2 + m A.D) F0
DivisorClass tau(const DivisorClass& A, long long m, const DivisorClass& D);
PicIsometry tau_matrix(const DivisorClass& A, long long m);

PicIsometry reflection(const DivisorClass& alpha);
PicIsometry eichler(const DivisorClass& v);

// alpha_0 = e0 - e1 - e2 - e3, alpha_i = e_i - e_{i+1}: a basis of K^perp together with alpha_8.
std::vector<DivisorClass> e9_simple_roots();
// alpha_0, ..., alpha_7 followed by F0: a Z-basis of K^perp adapted to E8 + Z F0.
std::vector<DivisorClass> e8_splitting_basis();
// Coordinates of x in K^perp with respect to e8_splitting_basis().
std::array<long long, 9> splitting_coordinates(const DivisorClass& x);

bool acts_trivially_on_e8_quotient(const PicIsometry& g);

// Every entry of g - 1 divisible by m, in the geometric basis and in the splitting coordinates on K^perp.
bool congruent_to_identity(const PicIsometry& g, long long m);

} // namespace genusone
