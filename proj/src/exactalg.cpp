#include "genusone/exactalg.hpp"

#include <algorithm>
#include <sstream>

namespace genusone {

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0)
            return false;
    return true;
}

namespace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

u64 powmod_u(u64 a, u64 e, u64 p)
{
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1)
            r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

std::shared_ptr<const FieldData> rationals_data()
{
    static const auto q = std::make_shared<const FieldData>();
    return q;
}

void require_same(const Field& a, const Field& b)
{
    if (a != b)
        throw DomainError("field mismatch: " + a.name() + " vs " + b.name());
}

// Reduction of a coefficient vector over F_p modulo a monic polynomial.
std::vector<u32> reduce_mod(std::vector<u64> c, const std::vector<u32>& mod, u32 p)
{
    const std::size_t d = mod.size() - 1;
    for (std::size_t i = c.size(); i-- > d;) {
        u64 k = c[i] % p;
        if (!k)
            continue;
        for (std::size_t j = 0; j <= d; ++j)
            c[i - d + j] = (c[i - d + j] + (p - k) * mod[j]) % p;
    }
    std::vector<u32> out(d);
    for (std::size_t i = 0; i < d && i < c.size(); ++i)
        out[i] = static_cast<u32>(c[i] % p);
    return out;
}

} // namespace

// ---------------------------------------------------------------- Field

Field Field::rationals() { return Field(rationals_data()); }

Field Field::prime(unsigned p)
{
    if (!is_prime(p))
        throw DomainError("characteristic " + std::to_string(p) + " is not prime");
    auto d = std::make_shared<FieldData>();
    d->p = p;
    d->d = 1;
    return Field(d);
}

Field Field::extension(unsigned p, const std::vector<u32>& modulus)
{
    Field Fp = prime(p);
    if (modulus.size() < 2 || modulus.back() % p != 1)
        throw DomainError("extension modulus must be monic of positive degree");
    if (modulus.size() == 2)
        return Fp;
    std::vector<Elem> c;
    for (u32 m : modulus)
        c.push_back(Fp.from_int(m));
    if (!is_irreducible(Poly(Fp, c)))
        throw DomainError("extension modulus is reducible over F_" + std::to_string(p));
    auto d = std::make_shared<FieldData>();
    d->p = p;
    d->d = static_cast<unsigned>(modulus.size() - 1);
    for (u32 m : modulus)
        d->mod.push_back(m % p);
    return Field(d);
}

Field Field::of_order(unsigned p, unsigned d)
{
    if (d <= 1)
        return prime(p);
    Field Fp = prime(p);
    u64 count = 1;
    for (unsigned i = 0; i < d; ++i)
        count *= p;
    for (u64 idx = 0; idx < count; ++idx) {
        std::vector<u32> m(d + 1);
        u64 x = idx;
        for (unsigned i = 0; i < d; ++i) {
            m[i] = static_cast<u32>(x % p);
            x /= p;
        }
        m[d] = 1;
        if (m[0] == 0)
            continue;
        std::vector<Elem> c;
        for (u32 v : m)
            c.push_back(Fp.from_int(v));
        if (is_irreducible(Poly(Fp, c)))
            return extension(p, m);
    }
    throw DomainError("no irreducible polynomial found");
}

std::uint64_t Field::size() const
{
    if (!is_finite())
        throw Unsupported("Q is infinite");
    u64 q = 1;
    for (unsigned i = 0; i < degree(); ++i) {
        if (q > (~u64(0)) / characteristic())
            throw Unsupported("field too large");
        q *= characteristic();
    }
    return q;
}

Elem Field::zero() const { return from_int(0); }
Elem Field::one() const { return from_int(1); }

Elem Field::from_int(long long n) const
{
    Elem e;
    e.K_ = *this;
    if (!is_finite()) {
        e.q_ = mpq_class(mpz_class(static_cast<long>(n)));
        return e;
    }
    long long p = characteristic();
    e.v_.assign(degree(), 0);
    e.v_[0] = static_cast<u32>(((n % p) + p) % p);
    return e;
}

Elem Field::from_mpz(const mpz_class& n) const
{
    if (!is_finite()) {
        Elem e;
        e.K_ = *this;
        e.q_ = mpq_class(n);
        return e;
    }
    mpz_class r = n % characteristic();
    if (r < 0)
        r += characteristic();
    return from_int(r.get_si());
}

Elem Field::from_rational(const mpq_class& q) const
{
    if (!is_finite()) {
        Elem e;
        e.K_ = *this;
        // mpq_set assumes a positive denominator, so rebuild from the parts
        e.q_ = mpq_class(mpz_class(q.get_num()), mpz_class(q.get_den()));
        e.q_.canonicalize();
        return e;
    }
    Elem den = from_mpz(q.get_den());
    if (den.is_zero())
        throw DomainError("denominator divisible by the characteristic");
    return from_mpz(q.get_num()) / den;
}

Elem Field::from_coeffs(const std::vector<u32>& c) const
{
    if (!is_finite())
        throw DomainError("from_coeffs needs a finite field");
    Elem e;
    e.K_ = *this;
    if (degree() == 1) {
        e.v_ = {c.empty() ? 0u : c[0] % characteristic()};
        return e;
    }
    std::vector<u64> w(c.begin(), c.end());
    if (w.size() < degree())
        w.resize(degree(), 0);
    e.v_ = reduce_mod(w, d_->mod, characteristic());
    return e;
}

Elem Field::generator() const
{
    if (!is_finite() || degree() == 1)
        return one();
    std::vector<u32> c(degree(), 0);
    c[1] = 1;
    return from_coeffs(c);
}

Elem Field::element(std::uint64_t index) const
{
    if (!is_finite())
        return from_int(static_cast<long long>(index));
    std::vector<u32> c(degree());
    for (unsigned i = 0; i < degree(); ++i) {
        c[i] = static_cast<u32>(index % characteristic());
        index /= characteristic();
    }
    Elem e;
    e.K_ = *this;
    e.v_ = c;
    return e;
}

Elem Field::random(std::mt19937_64& rng) const
{
    if (!is_finite())
        return from_int(static_cast<long long>(rng() % 201) - 100);
    Elem e;
    e.K_ = *this;
    e.v_.resize(degree());
    for (auto& x : e.v_)
        x = static_cast<u32>(rng() % characteristic());
    return e;
}

std::string Field::name() const
{
    if (!is_finite())
        return "Q";
    if (degree() == 1)
        return "F" + std::to_string(characteristic());
    std::vector<Elem> c;
    Field Fp = prime(characteristic());
    for (u32 m : d_->mod)
        c.push_back(Fp.from_int(m));
    return "F" + std::to_string(characteristic()) + "[z]/(" + Poly(Fp, c).str("z") + ")";
}

bool Field::operator==(const Field& o) const
{
    if (d_ == o.d_)
        return true;
    return d_->p == o.d_->p && d_->d == o.d_->d && d_->mod == o.d_->mod;
}

// ---------------------------------------------------------------- Elem

bool Elem::is_zero() const
{
    if (!K_.is_finite())
        return q_ == 0;
    for (u32 x : v_)
        if (x)
            return false;
    return true;
}

bool Elem::is_one() const
{
    if (!K_.is_finite())
        return q_ == 1;
    if (v_.empty() || v_[0] != 1)
        return false;
    for (std::size_t i = 1; i < v_.size(); ++i)
        if (v_[i])
            return false;
    return true;
}

Elem Elem::operator+(const Elem& o) const
{
    require_same(K_, o.K_);
    Elem r = *this;
    if (!K_.is_finite()) {
        r.q_ = q_ + o.q_;
        return r;
    }
    const u32 p = K_.characteristic();
    for (std::size_t i = 0; i < v_.size(); ++i)
        r.v_[i] = (v_[i] + o.v_[i]) % p;
    return r;
}

Elem Elem::operator-() const
{
    Elem r = *this;
    if (!K_.is_finite()) {
        r.q_ = -q_;
        return r;
    }
    const u32 p = K_.characteristic();
    for (auto& x : r.v_)
        x = x ? p - x : 0;
    return r;
}

Elem Elem::operator-(const Elem& o) const { return *this + (-o); }

Elem Elem::operator*(const Elem& o) const
{
    require_same(K_, o.K_);
    Elem r;
    r.K_ = K_;
    if (!K_.is_finite()) {
        r.q_ = q_ * o.q_;
        return r;
    }
    const u64 p = K_.characteristic();
    const std::size_t d = v_.size();
    if (d == 1) {
        r.v_ = {static_cast<u32>(u64(v_[0]) * o.v_[0] % p)};
        return r;
    }
    std::vector<u64> w(2 * d - 1, 0);
    for (std::size_t i = 0; i < d; ++i) {
        if (!v_[i])
            continue;
        for (std::size_t j = 0; j < d; ++j)
            w[i + j] = (w[i + j] + u64(v_[i]) * o.v_[j]) % p;
    }
    r.v_ = reduce_mod(w, K_.modulus(), static_cast<u32>(p));
    return r;
}

Elem Elem::inv() const
{
    if (is_zero())
        throw DomainError("division by zero");
    if (!K_.is_finite()) {
        Elem r = *this;
        r.q_ = 1 / q_;
        return r;
    }
    if (v_.size() == 1) {
        Elem r = *this;
        r.v_[0] = static_cast<u32>(powmod_u(v_[0], K_.characteristic() - 2, K_.characteristic()));
        return r;
    }
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), K_.characteristic(), K_.degree());
    return pow(mpz_class(q - 2));
}

Elem Elem::operator/(const Elem& o) const { return *this * o.inv(); }

Elem Elem::pow(const mpz_class& e) const
{
    if (e < 0)
        return inv().pow(mpz_class(-e));
    Elem r = K_.one();
    Elem b = *this;
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i))
            r = r * b;
        if (i + 1 < bits)
            b = b * b;
    }
    return r;
}

bool Elem::operator==(const Elem& o) const
{
    if (K_ != o.K_)
        return false;
    if (!K_.is_finite())
        return q_ == o.q_;
    return v_ == o.v_;
}

bool Elem::operator<(const Elem& o) const
{
    if (!K_.is_finite())
        return q_ < o.q_;
    for (std::size_t i = v_.size(); i-- > 0;)
        if (v_[i] != o.v_[i])
            return v_[i] < o.v_[i];
    return false;
}

Elem Elem::frobenius_root() const
{
    if (!K_.is_finite())
        throw DomainError("frobenius_root needs a finite field");
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), K_.characteristic(), K_.degree() - 1);
    return pow(e);
}

bool Elem::sqrt(Elem& r) const
{
    if (!K_.is_finite()) {
        if (q_ < 0)
            return false;
        mpz_class n = q_.get_num(), d = q_.get_den();
        if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
            return false;
        mpz_class sn, sd;
        mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
        mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
        r = K_.from_rational(mpq_class(sn, sd));
        return true;
    }
    if (is_zero()) {
        r = *this;
        return true;
    }
    if (K_.characteristic() == 2) {
        r = frobenius_root();
        return true;
    }
    // Tonelli-Shanks in F_q
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), K_.characteristic(), K_.degree());
    mpz_class qm1 = q - 1;
    if (!pow(mpz_class(qm1 / 2)).is_one())
        return false;
    mpz_class Q = qm1;
    unsigned S = 0;
    while (mpz_even_p(Q.get_mpz_t())) {
        Q /= 2;
        ++S;
    }
    Elem z;
    for (u64 i = 2;; ++i) {
        z = K_.element(i);
        if (z.is_zero())
            continue;
        if (!z.pow(mpz_class(qm1 / 2)).is_one())
            break;
    }
    Elem c = z.pow(Q);
    Elem t = pow(Q);
    Elem x = pow(mpz_class((Q + 1) / 2));
    unsigned M = S;
    while (!t.is_one()) {
        unsigned i = 0;
        Elem tt = t;
        while (!tt.is_one()) {
            tt = tt * tt;
            ++i;
        }
        Elem b = c;
        for (unsigned j = 0; j + i + 1 < M; ++j)
            b = b * b;
        M = i;
        c = b * b;
        t = t * c;
        x = x * b;
    }
    r = x;
    return true;
}

std::uint64_t Elem::index() const
{
    if (!K_.is_finite())
        throw DomainError("index needs a finite field");
    u64 idx = 0;
    for (std::size_t i = v_.size(); i-- > 0;)
        idx = idx * K_.characteristic() + v_[i];
    return idx;
}

std::string Elem::str() const
{
    if (!K_.is_finite())
        return q_.get_str();
    if (v_.size() == 1)
        return std::to_string(v_[0]);
    Field Fp = Field::prime(K_.characteristic());
    std::vector<Elem> c;
    for (u32 x : v_)
        c.push_back(Fp.from_int(x));
    Poly pz(Fp, c);
    if (pz.degree() <= 0)
        return pz.is_zero() ? "0" : c[0].str();
    return "(" + pz.str("z") + ")";
}

// ---------------------------------------------------------------- Poly

Poly::Poly(Field K, std::vector<Elem> c) : K_(std::move(K)), c_(std::move(c))
{
    for (const auto& e : c_)
        require_same(K_, e.field());
    trim();
}

void Poly::trim()
{
    while (!c_.empty() && c_.back().is_zero())
        c_.pop_back();
}

Poly Poly::constant(const Elem& c) { return Poly(c.field(), {c}); }

Poly Poly::monomial(const Elem& c, std::size_t n)
{
    std::vector<Elem> v(n + 1, c.field().zero());
    v[n] = c;
    return Poly(c.field(), v);
}

Poly Poly::from_ints(const Field& K, const std::vector<long long>& c)
{
    std::vector<Elem> v;
    for (long long x : c)
        v.push_back(K.from_int(x));
    return Poly(K, v);
}

Poly Poly::monic() const
{
    if (is_zero())
        return *this;
    return *this * lead().inv();
}

int Poly::valuation() const
{
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero())
            return static_cast<int>(i);
    return -1;
}

Poly Poly::operator+(const Poly& o) const
{
    require_same(K_, o.K_);
    std::vector<Elem> r(std::max(c_.size(), o.c_.size()), K_.zero());
    for (std::size_t i = 0; i < c_.size(); ++i)
        r[i] = c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        r[i] += o.c_[i];
    return Poly(K_, std::move(r));
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto& e : r.c_)
        e = -e;
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const
{
    require_same(K_, o.K_);
    if (is_zero() || o.is_zero())
        return Poly(K_);
    std::vector<Elem> r(c_.size() + o.c_.size() - 1, K_.zero());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero())
            continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] += c_[i] * o.c_[j];
    }
    return Poly(K_, std::move(r));
}

Poly Poly::operator*(const Elem& c) const
{
    Poly r = *this;
    for (auto& e : r.c_)
        e *= c;
    r.trim();
    return r;
}

Poly Poly::pow(unsigned e) const
{
    Poly r = constant(K_.one());
    Poly b = *this;
    while (e) {
        if (e & 1)
            r *= b;
        e >>= 1;
        if (e)
            b *= b;
    }
    return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& g) const
{
    require_same(K_, g.K_);
    if (g.is_zero())
        throw DomainError("polynomial division by zero");
    Poly r = *this;
    if (r.degree() < g.degree())
        return {Poly(K_), r};
    std::vector<Elem> q(r.degree() - g.degree() + 1, K_.zero());
    Elem li = g.lead().inv();
    while (!r.is_zero() && r.degree() >= g.degree()) {
        int k = r.degree() - g.degree();
        Elem c = r.lead() * li;
        q[k] = c;
        for (int j = 0; j <= g.degree(); ++j)
            r.c_[j + k] -= c * g.c_[j];
        r.trim();
    }
    return {Poly(K_, std::move(q)), r};
}

Poly Poly::operator/(const Poly& g) const { return divmod(g).first; }
Poly Poly::operator%(const Poly& g) const { return divmod(g).second; }

Poly Poly::exact_div(const Poly& g) const
{
    auto [q, r] = divmod(g);
    if (!r.is_zero())
        throw DomainError("inexact polynomial division");
    return q;
}

Poly Poly::shift_down(unsigned k) const
{
    if (is_zero())
        return *this;
    for (unsigned i = 0; i < k && i < c_.size(); ++i)
        if (!c_[i].is_zero())
            throw DomainError("shift_down: not divisible by t^" + std::to_string(k));
    if (k >= c_.size())
        return Poly(K_);
    return Poly(K_, std::vector<Elem>(c_.begin() + k, c_.end()));
}

Poly Poly::shift_up(unsigned k) const
{
    if (is_zero())
        return *this;
    std::vector<Elem> r(k, K_.zero());
    r.insert(r.end(), c_.begin(), c_.end());
    return Poly(K_, std::move(r));
}

Poly Poly::powmod(const mpz_class& e, const Poly& m) const
{
    Poly r = constant(K_.one()) % m;
    Poly b = *this % m;
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i))
            r = (r * b) % m;
        if (i + 1 < bits)
            b = (b * b) % m;
    }
    return r;
}

Poly Poly::derivative() const
{
    if (c_.size() <= 1)
        return Poly(K_);
    std::vector<Elem> r;
    for (std::size_t i = 1; i < c_.size(); ++i)
        r.push_back(c_[i] * K_.from_int(static_cast<long long>(i)));
    return Poly(K_, std::move(r));
}

Elem Poly::eval(const Elem& x) const
{
    require_same(K_, x.field());
    Elem r = K_.zero();
    for (std::size_t i = c_.size(); i-- > 0;)
        r = r * x + c_[i];
    return r;
}

Poly Poly::compose(const Poly& g) const
{
    Poly r(K_);
    for (std::size_t i = c_.size(); i-- > 0;)
        r = r * g + constant(c_[i]);
    return r;
}

Poly Poly::reversed(unsigned n) const
{
    if (degree() > static_cast<int>(n))
        throw DomainError("reversed: degree exceeds bound");
    std::vector<Elem> r(n + 1, K_.zero());
    for (std::size_t i = 0; i < c_.size(); ++i)
        r[n - i] = c_[i];
    return Poly(K_, std::move(r));
}

Poly Poly::change_field(const Field& K) const
{
    if (K == K_)
        return *this;
    if (K.characteristic() != K_.characteristic() || K_.degree() != 1 || !K.is_finite())
        throw DomainError("change_field: no natural map " + K_.name() + " -> " + K.name());
    std::vector<Elem> r;
    for (const auto& e : c_)
        r.push_back(K.from_int(e.coeffs()[0]));
    return Poly(K, std::move(r));
}

bool Poly::operator==(const Poly& o) const
{
    if (K_ != o.K_ || c_.size() != o.c_.size())
        return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i])
            return false;
    return true;
}

bool Poly::operator<(const Poly& o) const
{
    if (degree() != o.degree())
        return degree() < o.degree();
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] < o.c_[i])
            return true;
        if (o.c_[i] < c_[i])
            return false;
    }
    return false;
}

std::string Poly::str(const std::string& var) const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const Elem& c = c_[i];
        if (c.is_zero())
            continue;
        std::string cs = c.str();
        bool neg = !K_.is_finite() && c.rational() < 0;
        if (neg)
            cs = (-c).str();
        if (!first)
            os << (neg ? " - " : " + ");
        else if (neg)
            os << "-";
        first = false;
        bool unit = cs == "1";
        if (i == 0) {
            os << cs;
            continue;
        }
        if (!unit)
            os << cs << "*";
        os << var;
        if (i > 1)
            os << "^" << i;
    }
    return os.str();
}

Poly poly_gcd(const Poly& f, const Poly& g)
{
    require_same(f.field(), g.field());
    Poly a = f, b = g;
    while (!b.is_zero()) {
        Poly r = a % b;
        a = b;
        b = r;
    }
    return a.monic();
}

Poly poly_xgcd(const Poly& f, const Poly& g, Poly& s, Poly& t)
{
    const Field& K = f.field();
    Poly r0 = f, r1 = g;
    Poly s0 = Poly::constant(K.one()), s1(K);
    Poly t0(K), t1 = Poly::constant(K.one());
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = r1;
        r1 = r;
        Poly ns = s0 - q * s1;
        s0 = s1;
        s1 = ns;
        Poly nt = t0 - q * t1;
        t0 = t1;
        t1 = nt;
    }
    if (r0.is_zero()) {
        s = s0;
        t = t0;
        return r0;
    }
    Elem li = r0.lead().inv();
    s = s0 * li;
    t = t0 * li;
    return r0 * li;
}

// ---------------------------------------------------------------- factorization

namespace {

Poly pth_root(const Poly& f)
{
    const Field& K = f.field();
    const unsigned p = K.characteristic();
    std::vector<Elem> r;
    for (int i = 0; i <= f.degree(); i += p)
        r.push_back(f.coeff(i).frobenius_root());
    return Poly(K, r);
}

void squarefree_rec(const Poly& f, int scale, std::vector<std::pair<Poly, int>>& out)
{
    const Field& K = f.field();
    if (f.degree() <= 0)
        return;
    Poly c = poly_gcd(f, f.derivative());
    Poly w = f.exact_div(c);
    int i = 1;
    while (w.degree() > 0) {
        Poly y = poly_gcd(w, c);
        Poly fac = w.exact_div(y);
        if (fac.degree() > 0)
            out.emplace_back(fac.monic(), i * scale);
        w = y;
        c = c.exact_div(y);
        ++i;
    }
    if (c.degree() > 0) {
        if (!K.is_finite())
            throw DomainError("squarefree: unexpected remainder in characteristic 0");
        squarefree_rec(pth_root(c.monic()), scale * static_cast<int>(K.characteristic()), out);
    }
}

mpz_class field_order(const Field& K)
{
    mpz_class q;
    mpz_ui_pow_ui(q.get_mpz_t(), K.characteristic(), K.degree());
    return q;
}

std::vector<std::pair<Poly, int>> distinct_degree(Poly f)
{
    const Field& K = f.field();
    const mpz_class q = field_order(K);
    std::vector<std::pair<Poly, int>> out;
    Poly x = Poly::var(K);
    Poly h = x % f;
    for (int k = 1; 2 * k <= f.degree(); ++k) {
        h = h.powmod(q, f);
        Poly g = poly_gcd(h - x, f);
        if (g.degree() > 0) {
            out.emplace_back(g, k);
            f = f.exact_div(g);
            h = h % f;
        }
    }
    if (f.degree() > 0)
        out.emplace_back(f.monic(), f.degree());
    return out;
}

Poly random_poly(const Field& K, int deg_below, std::mt19937_64& rng)
{
    std::vector<Elem> c;
    for (int i = 0; i < deg_below; ++i)
        c.push_back(K.random(rng));
    return Poly(K, c);
}

void equal_degree(const Poly& f, int k, std::mt19937_64& rng, std::vector<Poly>& out)
{
    if (f.degree() == k) {
        out.push_back(f.monic());
        return;
    }
    const Field& K = f.field();
    const mpz_class q = field_order(K);
    for (;;) {
        Poly a = random_poly(K, f.degree(), rng);
        if (a.degree() <= 0)
            continue;
        Poly b;
        if (K.characteristic() == 2) {
            Poly term = a % f;
            b = term;
            const unsigned steps = K.degree() * k;
            for (unsigned j = 1; j < steps; ++j) {
                term = (term * term) % f;
                b += term;
            }
        } else {
            mpz_class e;
            mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(), k);
            e = (e - 1) / 2;
            b = a.powmod(e, f) - Poly::constant(K.one());
        }
        Poly g = poly_gcd(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree(g, k, rng, out);
            equal_degree(f.exact_div(g), k, rng, out);
            return;
        }
    }
}

std::vector<mpz_class> divisors(mpz_class n)
{
    if (n < 0)
        n = -n;
    if (n == 0)
        throw DomainError("divisors of zero");
    std::vector<std::pair<mpz_class, int>> pf;
    for (mpz_class d = 2; d * d <= n; ++d) {
        if (d > 10000000)
            throw Unsupported("rational root search: coefficient too large to factor");
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e)
            pf.emplace_back(d, e);
    }
    if (n > 1)
        pf.emplace_back(n, 1);
    std::vector<mpz_class> ds{1};
    for (auto& [pr, e] : pf) {
        std::size_t m = ds.size();
        mpz_class pk = 1;
        for (int j = 1; j <= e; ++j) {
            pk *= pr;
            for (std::size_t i = 0; i < m; ++i)
                ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::vector<Elem> rational_roots(const Poly& f)
{
    const Field& K = f.field();
    std::vector<Elem> out;
    int v = f.valuation();
    if (v < 0)
        return out;
    if (v > 0)
        out.push_back(K.zero());
    Poly g = f.shift_down(v);
    if (g.degree() <= 0)
        return out;
    mpz_class L = 1;
    for (const auto& c : g.coeffs())
        mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.rational().get_den_mpz_t());
    std::vector<mpz_class> ic;
    for (const auto& c : g.coeffs())
        ic.push_back(mpz_class(c.rational() * L));
    for (mpz_class a : divisors(ic.front()))
        for (mpz_class b : divisors(ic.back()))
            for (int sgn : {1, -1}) {
                mpq_class r(sgn * a, b);
                r.canonicalize();
                if (r.get_den() != b)
                    continue;
                if (g.eval(K.from_rational(r)).is_zero())
                    out.push_back(K.from_rational(r));
            }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool factor_less(const Factor& a, const Factor& b)
{
    if (a.f != b.f)
        return a.f < b.f;
    return a.mult < b.mult;
}

} // namespace

std::vector<std::pair<Poly, int>> squarefree(const Poly& f)
{
    if (f.is_zero())
        throw DomainError("squarefree of the zero polynomial");
    std::vector<std::pair<Poly, int>> out;
    squarefree_rec(f.monic(), 1, out);
    return out;
}

std::vector<Factor> factor(const Poly& f, std::uint64_t seed)
{
    if (f.is_zero())
        throw DomainError("factor of the zero polynomial");
    const Field& K = f.field();
    std::vector<Factor> out;
    std::mt19937_64 rng(seed);
    for (auto& [g, m] : squarefree(f)) {
        if (!K.is_finite()) {
            Poly rest = g;
            for (const Elem& r : rational_roots(g)) {
                Poly lin = Poly::var(K) - Poly::constant(r);
                out.push_back({lin, m, true});
                rest = rest.exact_div(lin);
            }
            if (rest.degree() > 0)
                out.push_back({rest.monic(), m, rest.degree() == 1});
            continue;
        }
        for (auto& [h, k] : distinct_degree(g)) {
            std::vector<Poly> parts;
            equal_degree(h, k, rng, parts);
            for (auto& part : parts)
                out.push_back({part, m, true});
        }
    }
    std::sort(out.begin(), out.end(), factor_less);
    // merge equal factors that can arise from separate square-free layers
    std::vector<Factor> merged;
    for (auto& fa : out) {
        if (!merged.empty() && merged.back().f == fa.f)
            merged.back().mult += fa.mult;
        else
            merged.push_back(fa);
    }
    return merged;
}

std::vector<Elem> roots(const Poly& f, std::uint64_t seed)
{
    if (f.is_zero())
        throw DomainError("roots of the zero polynomial");
    if (!f.field().is_finite())
        return rational_roots(f);
    std::vector<Elem> out;
    for (auto& fa : factor(f, seed))
        if (fa.f.degree() == 1)
            out.push_back(-fa.f.coeff(0));
    std::sort(out.begin(), out.end());
    return out;
}

bool is_irreducible(const Poly& f)
{
    const Field& K = f.field();
    if (f.degree() <= 0)
        return false;
    if (f.degree() == 1)
        return true;
    if (!K.is_finite())
        throw Unsupported("irreducibility over Q beyond degree 1");
    // Rabin: x^{q^n} = x mod f, and gcd(x^{q^{n/r}} - x, f) = 1 for primes r | n.
    const int n = f.degree();
    Poly g = f.monic();
    if (poly_gcd(g, g.derivative()).degree() > 0)
        return false;
    const mpz_class q = field_order(K);
    Poly x = Poly::var(K);
    std::vector<Poly> frob(n + 1, Poly(K));
    frob[0] = x % g;
    for (int i = 1; i <= n; ++i)
        frob[i] = frob[i - 1].powmod(q, g);
    if (frob[n] != x % g)
        return false;
    for (int r = 2; r <= n; ++r) {
        if (n % r || !is_prime(r))
            continue;
        if (poly_gcd(frob[n / r] - x, g).degree() > 0)
            return false;
    }
    return true;
}

// ---------------------------------------------------------------- places

Place Place::finite(const Poly& pi)
{
    if (pi.degree() < 1)
        throw DomainError("place: uniformizer must have positive degree");
    if (!pi.lead().is_one())
        throw DomainError("place: uniformizer must be monic");
    if (pi.field().is_finite() && !is_irreducible(pi))
        throw DomainError("place: " + pi.str() + " is reducible");
    Place pl(pi.field());
    pl.inf_ = false;
    pl.pi_ = pi;
    return pl;
}

bool Place::operator==(const Place& o) const
{
    if (inf_ != o.inf_)
        return false;
    return inf_ ? K_ == o.K_ : pi_ == o.pi_;
}

bool Place::operator<(const Place& o) const
{
    if (inf_ != o.inf_)
        return o.inf_;
    if (inf_)
        return false;
    return pi_ < o.pi_;
}

std::string Place::str() const { return inf_ ? "inf" : pi_.str(); }

Field residue_field_at(const Place& place)
{
    const Field& K = place.base();
    if (place.is_infinity() || place.degree() == 1)
        return K;
    if (!K.is_finite())
        throw Unsupported("unsupported place: degree " + std::to_string(place.degree()) + " place " +
                          place.str() + " over Q");
    if (K.degree() != 1)
        throw Unsupported("unsupported place: non-linear place over an extension field");
    std::vector<u32> m;
    for (const auto& c : place.pi().coeffs())
        m.push_back(c.coeffs()[0]);
    return Field::extension(K.characteristic(), m);
}

Elem residue_point(const Place& place, const Field& residue)
{
    if (place.is_infinity())
        throw DomainError("residue_point: infinity has no affine coordinate");
    if (place.degree() == 1)
        return -place.pi().coeff(0);
    return residue.generator();
}

} // namespace genusone
