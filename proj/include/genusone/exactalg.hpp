#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace genusone {

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Unsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool is_prime(std::uint64_t n);

struct FieldData {
    unsigned p = 0;                 // 0 means Q
    unsigned d = 1;                 // degree over the prime field
    std::vector<std::uint32_t> mod; // monic modulus over F_p, ascending, size d+1 (d>1 only)
};

class Elem;

// Q, F_p, or F_p[z]/(mod).  Cheap to copy.
class Field {
public:
    Field() : Field(rationals()) {}

    static Field rationals();
    static Field prime(unsigned p);
    static Field extension(unsigned p, const std::vector<std::uint32_t>& modulus);
    // First irreducible monic modulus of degree d in lexicographic order.
    static Field of_order(unsigned p, unsigned d);

    unsigned characteristic() const { return d_->p; }
    unsigned degree() const { return d_->d; }
    bool is_finite() const { return d_->p != 0; }
    bool is_rationals() const { return d_->p == 0; }
    // p^d; throws if it does not fit.
    std::uint64_t size() const;
    const std::vector<std::uint32_t>& modulus() const { return d_->mod; }

    Elem zero() const;
    Elem one() const;
    Elem from_int(long long n) const;
    Elem from_mpz(const mpz_class& n) const;
    Elem from_rational(const mpq_class& q) const;
    Elem from_coeffs(const std::vector<std::uint32_t>& c) const;
    // class of z in F_p[z]/(mod); for prime fields and Q, 1.
    Elem generator() const;
    // Enumeration of a finite field: index is the base-p digit string.
    Elem element(std::uint64_t index) const;
    Elem random(std::mt19937_64& rng) const;

    std::string name() const;

    bool operator==(const Field& o) const;
    bool operator!=(const Field& o) const { return !(*this == o); }

    const std::shared_ptr<const FieldData>& data() const { return d_; }

private:
    explicit Field(std::shared_ptr<const FieldData> d) : d_(std::move(d)) {}
    std::shared_ptr<const FieldData> d_;
    friend class Elem;
};

class Elem {
public:
    Elem() = default;

    const Field& field() const { return K_; }
    bool is_zero() const;
    bool is_one() const;

    Elem operator+(const Elem& o) const;
    Elem operator-(const Elem& o) const;
    Elem operator*(const Elem& o) const;
    Elem operator/(const Elem& o) const;
    Elem operator-() const;
    Elem& operator+=(const Elem& o) { return *this = *this + o; }
    Elem& operator-=(const Elem& o) { return *this = *this - o; }
    Elem& operator*=(const Elem& o) { return *this = *this * o; }
    Elem inv() const;
    Elem pow(const mpz_class& e) const;
    Elem pow(long long e) const { return pow(mpz_class(static_cast<long>(e))); }

    bool operator==(const Elem& o) const;
    bool operator!=(const Elem& o) const { return !(*this == o); }
    // Total order used for canonical output.
    bool operator<(const Elem& o) const;

    // p-th root in a finite field (Frobenius is bijective there).
    Elem frobenius_root() const;
    // Returns true and sets r with r*r == *this when a square root exists (finite or Q).
    bool sqrt(Elem& r) const;
    // F_q only: index in base-p digit enumeration.
    std::uint64_t index() const;

    const mpq_class& rational() const { return q_; }
    const std::vector<std::uint32_t>& coeffs() const { return v_; }

    std::string str() const;

private:
    Field K_;
    mpq_class q_;
    std::vector<std::uint32_t> v_; // length d for finite fields

    friend class Field;
};

class Poly {
public:
    Poly() = default;
    explicit Poly(Field K) : K_(std::move(K)) {}
    Poly(Field K, std::vector<Elem> c);

    static Poly constant(const Elem& c);
    static Poly monomial(const Elem& c, std::size_t n);
    static Poly var(const Field& K) { return monomial(K.one(), 1); }
    static Poly from_ints(const Field& K, const std::vector<long long>& c);

    const Field& field() const { return K_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K_.zero(); }
    const std::vector<Elem>& coeffs() const { return c_; }
    Elem lead() const { return c_.empty() ? K_.zero() : c_.back(); }
    Poly monic() const;
    // Lowest degree with nonzero coefficient; -1 for the zero polynomial.
    int valuation() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Elem& c) const;
    Poly operator-() const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly pow(unsigned e) const;

    std::pair<Poly, Poly> divmod(const Poly& g) const;
    Poly operator/(const Poly& g) const;
    Poly operator%(const Poly& g) const;
    // Exact division; throws DomainError on nonzero remainder.
    Poly exact_div(const Poly& g) const;
    // Divide by t^k, which must divide.
    Poly shift_down(unsigned k) const;
    Poly shift_up(unsigned k) const;
    Poly powmod(const mpz_class& e, const Poly& m) const;

    Poly derivative() const;
    Elem eval(const Elem& x) const;
    Poly compose(const Poly& g) const;
    // f(t) -> t^n f(1/t); n must be >= degree.
    Poly reversed(unsigned n) const;
    // Base change along the natural inclusion of prime fields into K (or Q->Q).
    Poly change_field(const Field& K) const;

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }
    bool operator<(const Poly& o) const;

    std::string str(const std::string& var = "t") const;

private:
    void trim();
    Field K_;
    std::vector<Elem> c_;
};

Poly poly_gcd(const Poly& f, const Poly& g);
// s*f + t*g = gcd (monic)
Poly poly_xgcd(const Poly& f, const Poly& g, Poly& s, Poly& t);

struct Factor {
    Poly f;
    int mult = 1;
    bool irreducible = true; // false for non-linear factors over Q left unsplit
};

// Square-free decomposition; pairs (g_i, i) with f = c * prod g_i^i.
std::vector<std::pair<Poly, int>> squarefree(const Poly& f);
// Factorization into monic factors, sorted by (degree, coefficients).
std::vector<Factor> factor(const Poly& f, std::uint64_t seed = 0);
// Roots in the coefficient field (finite fields, or rational roots over Q), sorted.
std::vector<Elem> roots(const Poly& f, std::uint64_t seed = 0);
bool is_irreducible(const Poly& f);

class Place {
public:
    Place() = default;
    static Place infinity(const Field& K) { return Place(K); }
    static Place finite(const Poly& pi);

    bool is_infinity() const { return inf_; }
    const Poly& pi() const { return pi_; }
    const Field& base() const { return K_; }
    int degree() const { return inf_ ? 1 : pi_.degree(); }

    bool operator==(const Place& o) const;
    bool operator<(const Place& o) const;
    std::string str() const;

private:
    explicit Place(Field K) : K_(std::move(K)), inf_(true) {}
    Field K_;
    Poly pi_;
    bool inf_ = false;
};

Field residue_field_at(const Place& place);
// Image of t in the residue field (for infinity: not defined; throws).
Elem residue_point(const Place& place, const Field& residue);

} // namespace genusone
