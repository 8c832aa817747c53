#include "genusone/lattice.hpp"

#include <algorithm>
#include <bitset>
#include <cctype>
#include <cstring>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace genusone {

// ---------------------------------------------------------------- matrices

ZMatrix to_z(const IntMatrix& m)
{
    ZMatrix z(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (long long v : m[i])
            z[i].push_back(mpz_class(static_cast<long>(v)));
    return z;
}

ZMatrix z_identity(std::size_t n)
{
    ZMatrix z(n, std::vector<mpz_class>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        z[i][i] = 1;
    return z;
}

ZMatrix z_mul(const ZMatrix& a, const ZMatrix& b)
{
    std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    ZMatrix c(n, std::vector<mpz_class>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0)
                continue;
            for (std::size_t j = 0; j < m; ++j)
                c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

namespace {

void swap_rows(ZMatrix& m, std::size_t a, std::size_t b) { std::swap(m[a], m[b]); }

void swap_cols(ZMatrix& m, std::size_t a, std::size_t b)
{
    for (auto& row : m)
        std::swap(row[a], row[b]);
}

// row a -= q * row b
void row_sub(ZMatrix& m, std::size_t a, std::size_t b, const mpz_class& q)
{
    for (std::size_t j = 0; j < m[a].size(); ++j)
        m[a][j] -= q * m[b][j];
}

void col_sub(ZMatrix& m, std::size_t a, std::size_t b, const mpz_class& q)
{
    for (auto& row : m)
        row[a] -= q * row[b];
}

void negate_row(ZMatrix& m, std::size_t a)
{
    for (auto& x : m[a])
        x = -x;
}

mpz_class fdiv(const mpz_class& a, const mpz_class& b)
{
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

} // namespace

SmithForm smith_normal_form(const ZMatrix& A)
{
    std::size_t rows = A.size(), cols = rows ? A[0].size() : 0;
    SmithForm s{z_identity(rows), A, z_identity(cols), {}};
    ZMatrix& D = s.D;
    std::size_t lim = std::min(rows, cols);

    for (std::size_t k = 0; k < lim; ++k) {
        for (;;) {
            // smallest nonzero entry of the trailing block becomes the pivot
            std::size_t pr = rows, pc = cols;
            for (std::size_t i = k; i < rows; ++i)
                for (std::size_t j = k; j < cols; ++j)
                    if (D[i][j] != 0 && (pr == rows || abs(D[i][j]) < abs(D[pr][pc]))) {
                        pr = i;
                        pc = j;
                    }
            if (pr == rows)
                break;
            swap_rows(D, k, pr);
            swap_rows(s.U, k, pr);
            swap_cols(D, k, pc);
            swap_cols(s.V, k, pc);

            bool clean = true;
            for (std::size_t i = k + 1; i < rows; ++i) {
                if (D[i][k] == 0)
                    continue;
                mpz_class q = fdiv(D[i][k], D[k][k]);
                row_sub(D, i, k, q);
                row_sub(s.U, i, k, q);
                if (D[i][k] != 0)
                    clean = false;
            }
            for (std::size_t j = k + 1; j < cols; ++j) {
                if (D[k][j] == 0)
                    continue;
                mpz_class q = fdiv(D[k][j], D[k][k]);
                col_sub(D, j, k, q);
                col_sub(s.V, j, k, q);
                if (D[k][j] != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            // divisibility: fold an offending row into row k and go again
            std::size_t bad = rows;
            for (std::size_t i = k + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = k + 1; j < cols; ++j)
                    if (D[i][j] % D[k][k] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == rows)
                break;
            row_sub(D, k, bad, -1);
            row_sub(s.U, k, bad, -1);
        }
        if (D[k][k] < 0) {
            negate_row(D, k);
            negate_row(s.U, k);
        }
    }
    for (std::size_t k = 0; k < lim; ++k)
        s.diag.push_back(D[k][k]);
    return s;
}

GramLattice::GramLattice(IntMatrix g) : gram(std::move(g))
{
    for (std::size_t i = 0; i < gram.size(); ++i) {
        if (gram[i].size() != gram.size())
            throw DomainError("Gram matrix is not square");
        for (std::size_t j = 0; j < i; ++j)
            if (gram[i][j] != gram[j][i])
                throw DomainError("Gram matrix is not symmetric");
    }
}

std::vector<long> discriminant_group(const GramLattice& L)
{
    if (L.rank() == 0)
        return {};
    auto s = smith_normal_form(to_z(L.gram));
    std::vector<long> out;
    for (auto& d : s.diag) {
        if (d == 0)
            throw DomainError("degenerate form");
        if (d != 1) {
            if (!d.fits_slong_p())
                throw Unsupported("discriminant group too large");
            out.push_back(d.get_si());
        }
    }
    return out;
}

// ---------------------------------------------------------------- finite abelian groups

namespace {

std::map<long, std::vector<int>> primary_parts(const std::vector<long>& g)
{
    std::map<long, std::vector<int>> parts;
    for (long d : g) {
        if (d <= 0)
            throw DomainError("invariant factors must be positive");
        long n = d;
        for (long p = 2; p * p <= n; ++p) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            if (e)
                parts[p].push_back(e);
        }
        if (n > 1)
            parts[n].push_back(1);
    }
    for (auto& [p, v] : parts)
        std::sort(v.rbegin(), v.rend());
    return parts;
}

} // namespace

bool group_embeds(const std::vector<long>& sub, const std::vector<long>& group)
{
    auto a = primary_parts(sub), b = primary_parts(group);
    for (auto& [p, ea] : a) {
        auto it = b.find(p);
        if (it == b.end())
            return false;
        auto& eb = it->second;
        if (ea.size() > eb.size())
            return false;
        for (std::size_t i = 0; i < ea.size(); ++i)
            if (ea[i] > eb[i])
                return false;
    }
    return true;
}

long group_order(const std::vector<long>& g)
{
    long o = 1;
    for (long d : g)
        o *= d;
    return o;
}

long group_exponent(const std::vector<long>& g)
{
    long e = 1;
    for (long d : g)
        e = std::lcm(e, d);
    return e;
}

std::vector<long> normalize_group(const std::vector<long>& g)
{
    auto parts = primary_parts(g);
    std::size_t len = 0;
    for (auto& [p, v] : parts)
        len = std::max(len, v.size());
    // largest invariant factor collects the largest prime powers
    std::vector<long> out(len, 1);
    for (auto& [p, v] : parts)
        for (std::size_t i = 0; i < v.size(); ++i) {
            long q = 1;
            for (int k = 0; k < v[i]; ++k)
                q *= p;
            out[len - 1 - i] *= q;
        }
    out.erase(std::remove(out.begin(), out.end(), 1L), out.end());
    return out;
}

// ---------------------------------------------------------------- root configurations

namespace {

int component_rank(const RootComponent& c) { return c.n; }

void validate(const RootComponent& c)
{
    bool ok = (c.series == 'A' && c.n >= 1) || (c.series == 'D' && c.n >= 4) ||
              (c.series == 'E' && c.n >= 6 && c.n <= 8);
    if (!ok)
        throw DomainError("invalid root lattice " + c.label());
}

} // namespace

bool RootComponent::operator<(const RootComponent& o) const
{
    if (n != o.n)
        return n > o.n;
    return series > o.series; // E before D before A at equal rank
}

RootConfiguration::RootConfiguration(std::vector<RootComponent> p) : parts(std::move(p))
{
    for (auto& c : parts)
        validate(c);
    std::sort(parts.begin(), parts.end());
}

RootConfiguration RootConfiguration::parse(const std::string& s)
{
    std::vector<RootComponent> parts;
    std::string str;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            str += ch;
    if (str.empty() || str == "0")
        return RootConfiguration();
    std::stringstream ss(str);
    std::string tok;
    while (std::getline(ss, tok, '+')) {
        std::size_t i = 0;
        int mult = 0;
        while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i])))
            mult = mult * 10 + (tok[i++] - '0');
        if (i == 0)
            mult = 1;
        if (i >= tok.size() || !std::strchr("ADE", tok[i]) || i + 1 >= tok.size())
            throw DomainError("cannot parse root configuration '" + s + "'");
        RootComponent c;
        c.series = tok[i];
        std::string num = tok.substr(i + 1);
        if (num.empty() || !std::all_of(num.begin(), num.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
            throw DomainError("cannot parse root configuration '" + s + "'");
        c.n = std::stoi(num);
        if (mult <= 0)
            throw DomainError("bad multiplicity in '" + s + "'");
        for (int k = 0; k < mult; ++k)
            parts.push_back(c);
    }
    return RootConfiguration(parts);
}

RootConfiguration RootConfiguration::from_fibers(const std::vector<FiberType>& fibers)
{
    std::vector<RootComponent> parts;
    for (auto& t : fibers) {
        switch (t.kind) {
        case Kodaira::In:
            if (t.n >= 2)
                parts.push_back({'A', t.n - 1});
            break;
        case Kodaira::III: parts.push_back({'A', 1}); break;
        case Kodaira::IV: parts.push_back({'A', 2}); break;
        case Kodaira::InStar: parts.push_back({'D', t.n + 4}); break;
        case Kodaira::IVStar: parts.push_back({'E', 6}); break;
        case Kodaira::IIIStar: parts.push_back({'E', 7}); break;
        case Kodaira::IIStar: parts.push_back({'E', 8}); break;
        default: break;
        }
    }
    return RootConfiguration(parts);
}

int RootConfiguration::rank() const
{
    int r = 0;
    for (auto& c : parts)
        r += component_rank(c);
    return r;
}

IntMatrix cartan_gram(const RootComponent& c)
{
    validate(c);
    int n = c.n;
    IntMatrix g(n, std::vector<long long>(n, 0));
    auto join = [&](int a, int b) { g[a][b] = g[b][a] = 1; };
    for (int i = 0; i < n; ++i)
        g[i][i] = -2;
    switch (c.series) {
    case 'A':
        for (int i = 0; i + 1 < n; ++i)
            join(i, i + 1);
        break;
    case 'D':
        for (int i = 0; i + 2 < n; ++i)
            join(i, i + 1);
        join(n - 1, n - 3);
        break;
    case 'E':
        join(0, 2);
        for (int i = 2; i + 1 < n; ++i)
            join(i, i + 1);
        join(1, 3);
        break;
    }
    return g;
}

IntMatrix RootConfiguration::gram() const
{
    int r = rank();
    IntMatrix g(r, std::vector<long long>(r, 0));
    int off = 0;
    for (auto& c : parts) {
        auto b = cartan_gram(c);
        for (int i = 0; i < c.n; ++i)
            for (int j = 0; j < c.n; ++j)
                g[off + i][off + j] = b[i][j];
        off += c.n;
    }
    return g;
}

std::string RootConfiguration::str() const
{
    if (parts.empty())
        return "0";
    std::string s;
    for (auto& c : parts) {
        if (!s.empty())
            s += "+";
        s += c.label();
    }
    return s;
}

std::vector<long> discriminant_group(const RootConfiguration& cfg)
{
    return normalize_group(discriminant_group(GramLattice(cfg.gram())));
}

// ---------------------------------------------------------------- E8

const IntMatrix& e8_gram()
{
    static const IntMatrix g = cartan_gram({'E', 8});
    return g;
}

int e8_dot(const E8Vector& a, const E8Vector& b)
{
    const IntMatrix& g = e8_gram();
    long long s = 0;
    for (int i = 0; i < 8; ++i) {
        if (!a[i])
            continue;
        for (int j = 0; j < 8; ++j)
            s += a[i] * g[i][j] * b[j];
    }
    return static_cast<int>(s);
}

const std::vector<E8Vector>& e8_roots()
{
    static const std::vector<E8Vector> roots = [] {
        std::vector<E8Vector> out;
        std::set<E8Vector> seen;
        for (int i = 0; i < 8; ++i) {
            E8Vector v{};
            v[i] = 1;
            out.push_back(v);
            seen.insert(v);
        }
        // closure under simple reflections s(x) = x + (x.a) a
        for (std::size_t k = 0; k < out.size(); ++k)
            for (int i = 0; i < 8; ++i) {
                E8Vector a{};
                a[i] = 1;
                E8Vector x = out[k];
                int c = e8_dot(x, a);
                x[i] += c;
                if (seen.insert(x).second)
                    out.push_back(x);
            }
        return out;
    }();
    return roots;
}

std::vector<E8Vector> Embedding::vectors() const
{
    std::vector<E8Vector> v;
    for (int i : images)
        v.push_back(e8_roots()[i]);
    return v;
}

namespace {

constexpr std::size_t kRoots = 240;
using RootSet = std::bitset<kRoots>;

struct DotTable {
    std::vector<std::array<RootSet, 5>> with; // with[r][v + 2]: roots s with r.s = v
};

const DotTable& dot_table()
{
    static const DotTable t = [] {
        const auto& R = e8_roots();
        DotTable t;
        t.with.resize(R.size());
        for (std::size_t a = 0; a < R.size(); ++a)
            for (std::size_t b = 0; b < R.size(); ++b)
                t.with[a][e8_dot(R[a], R[b]) + 2].set(b);
        return t;
    }();
    return t;
}

// Simple roots reordered so that each one after the first of a component is joined to an earlier one.
std::vector<int> search_order(const RootConfiguration& cfg)
{
    std::vector<int> order;
    int off = 0;
    for (auto& c : cfg.parts) {
        auto g = cartan_gram(c);
        std::vector<bool> used(c.n, false);
        std::vector<int> queue{0};
        used[0] = true;
        for (std::size_t k = 0; k < queue.size(); ++k)
            for (int j = 0; j < c.n; ++j)
                if (!used[j] && g[queue[k]][j] == 1) {
                    used[j] = true;
                    queue.push_back(j);
                }
        for (int q : queue)
            order.push_back(off + q);
        off += c.n;
    }
    return order;
}

struct Search {
    IntMatrix G;
    std::vector<int> order;
    std::vector<int> img; // by position in order
    std::size_t max_leaves;
    std::vector<Embedding> found;
    bool capped = false;
    RootConfiguration cfg;

    void run(std::size_t k)
    {
        if (capped)
            return;
        if (k == order.size()) {
            if (found.size() >= max_leaves) {
                capped = true;
                return;
            }
            Embedding e{cfg, std::vector<int>(order.size())};
            for (std::size_t i = 0; i < order.size(); ++i)
                e.images[order[i]] = img[i];
            found.push_back(std::move(e));
            return;
        }
        RootSet cand;
        cand.set();
        for (std::size_t j = 0; j < k; ++j)
            cand &= dot_table().with[img[j]][G[order[k]][order[j]] + 2];
        // W(E8) is transitive on roots, and the stabilizer of a root is transitive on the roots
        // having a given inner product with it, so the first two images can be fixed.
        bool first_only = k < 2;
        for (std::size_t r = cand._Find_first(); r < kRoots; r = cand._Find_next(r)) {
            img.push_back(static_cast<int>(r));
            run(k + 1);
            img.pop_back();
            if (first_only || capped)
                break;
        }
    }
};

} // namespace

SubsystemSearch find_embeddings(const RootConfiguration& cfg, std::size_t max_leaves)
{
    SubsystemSearch out;
    if (cfg.rank() > 8) {
        out.reason = "rank " + std::to_string(cfg.rank()) + " exceeds 8";
        return out;
    }
    if (cfg.parts.empty()) {
        out.found.push_back(Embedding{cfg, {}});
        return out;
    }
    Search s;
    s.cfg = cfg;
    s.G = cfg.gram();
    s.order = search_order(cfg);
    s.max_leaves = std::max<std::size_t>(1, max_leaves);
    s.run(0);
    out.found = std::move(s.found);
    out.exhaustive = !s.capped;
    if (out.found.empty())
        out.reason = "no embedding into E8 (search exhausted)";
    return out;
}

std::optional<Embedding> find_subsystem(const RootConfiguration& cfg)
{
    auto s = find_embeddings(cfg, 1);
    if (s.found.empty())
        return std::nullopt;
    return s.found.front();
}

bool MWData::operator<(const MWData& o) const
{
    if (rank != o.rank)
        return rank < o.rank;
    return torsion < o.torsion;
}

std::string MWData::str() const
{
    std::string s;
    if (rank > 0)
        s = rank == 1 ? "Z" : "Z^" + std::to_string(rank);
    for (long d : torsion) {
        if (!s.empty())
            s += " x ";
        s += "Z/" + std::to_string(d);
    }
    return s.empty() ? "0" : s;
}

MWData quotient(const Embedding& e)
{
    MWData mw;
    std::size_t r = e.images.size();
    mw.rank = 8 - static_cast<int>(r);
    if (r == 0)
        return mw;
    ZMatrix M(8, std::vector<mpz_class>(r, 0));
    auto vs = e.vectors();
    for (std::size_t j = 0; j < r; ++j)
        for (int i = 0; i < 8; ++i)
            M[i][j] = vs[j][i];
    auto s = smith_normal_form(M);
    for (auto& d : s.diag)
        if (d > 1)
            mw.torsion.push_back(d.get_si());
    mw.torsion = normalize_group(mw.torsion);
    return mw;
}

MWReport mw_from_config(const RootConfiguration& cfg, std::size_t max_leaves)
{
    MWReport rep;
    rep.cfg = cfg;
    auto search = find_embeddings(cfg, max_leaves);
    rep.exhaustive = search.exhaustive;
    rep.embeddings_examined = search.found.size();
    if (search.found.empty()) {
        rep.reason = search.reason;
        return rep;
    }
    rep.embeddable = true;
    rep.disc = discriminant_group(cfg);
    std::set<MWData> types;
    for (auto& e : search.found)
        types.insert(quotient(e));
    rep.types.assign(types.begin(), types.end());
    if (cfg.rank() == 8) {
        long dorder = group_order(rep.disc);
        for (auto& t : rep.types) {
            long o = group_order(t.torsion);
            rep.order_identity = rep.order_identity && o * o == dorder;
            rep.mw_in_disc = rep.mw_in_disc && group_embeds(t.torsion, rep.disc);
            auto twice = t.torsion;
            twice.insert(twice.end(), t.torsion.begin(), t.torsion.end());
            rep.double_mw_in_disc = rep.double_mw_in_disc && group_embeds(twice, rep.disc);
        }
    }
    return rep;
}

// ---------------------------------------------------------------- heights

long compute_d(const std::vector<FiberType>& fibers)
{
    long d = 1;
    for (auto& t : fibers)
        d = std::lcm(d, group_exponent(t.disc()));
    return d;
}

int simple_component_count(const FiberType& t) { return static_cast<int>(group_order(t.disc())); }

namespace {

void check_component(const FiberType& t, int c)
{
    if (c < 0 || c >= simple_component_count(t))
        throw DomainError("component " + std::to_string(c) + " is not a simple component of " + t.dynkin());
}

} // namespace

// I_n^*: 1 is the near component, 2 and 3 the far ones.
mpq_class local_contribution(const FiberType& t, int c)
{
    check_component(t, c);
    if (c == 0)
        return 0;
    auto q = [](long a, long b) { return mpq_class(mpz_class(a), mpz_class(b)); };
    mpq_class r;
    switch (t.kind) {
    case Kodaira::In: r = q(c * (t.n - c), t.n); break;
    case Kodaira::InStar: r = c == 1 ? q(1, 1) : q(t.n + 4, 4); break;
    case Kodaira::III: r = q(1, 2); break;
    case Kodaira::IV: r = q(2, 3); break;
    case Kodaira::IVStar: r = q(4, 3); break;
    case Kodaira::IIIStar: r = q(3, 2); break;
    default: break;
    }
    r.canonicalize();
    return r;
}

int component_order(const FiberType& t, int c)
{
    check_component(t, c);
    if (c == 0)
        return 1;
    switch (t.kind) {
    case Kodaira::In: return t.n / std::gcd(t.n, c);
    case Kodaira::InStar: return (c == 1 || t.n % 2 == 0) ? 2 : 4;
    default: return simple_component_count(t);
    }
}

std::string ScanEntry::str() const
{
    std::string s;
    for (auto& f : fibers) {
        if (!s.empty())
            s += "+";
        s += f.dynkin();
    }
    return s + " (order " + std::to_string(order) + ")";
}

// Height of a torsion section: 0 = 2 + 2(P.O) - sum of contributions, with chi = 1.
std::vector<ScanEntry> torsion_fiber_scan(int num_special_fibers)
{
    std::vector<ScanEntry> out;
    if (num_special_fibers == 1) {
        for (auto& t : FiberType::all_singular(8))
            for (int c = 1; c < simple_component_count(t); ++c) {
                if (local_contribution(t, c) != 2)
                    continue;
                int ord = component_order(t, c);
                bool dup = std::any_of(out.begin(), out.end(), [&](const ScanEntry& e) {
                    return e.fibers[0] == t && e.order == ord;
                });
                if (!dup)
                    out.push_back({{t}, {c}, 2, ord, t.additive()});
            }
        return out;
    }
    if (num_special_fibers != 2)
        throw DomainError("torsion_fiber_scan takes 1 or 2 special fibers");

    // A 2-torsion section; each special fiber is additive or smooth.
    std::vector<FiberType> cands{FiberType{}};
    for (auto& t : FiberType::all_singular(8))
        if (t.additive())
            cands.push_back(t);
    for (std::size_t i = 0; i < cands.size(); ++i)
        for (std::size_t j = i; j < cands.size(); ++j) {
            const FiberType &a = cands[i], &b = cands[j];
            if (a.rank() + b.rank() > 8)
                continue;
            bool done = false;
            for (int ca = 0; ca < simple_component_count(a) && !done; ++ca)
                for (int cb = 0; cb < simple_component_count(b) && !done; ++cb) {
                    if (ca == 0 && cb == 0)
                        continue;
                    mpq_class s = local_contribution(a, ca) + local_contribution(b, cb);
                    if (s.get_den() != 1 || s < 2 || s.get_num() % 2 != 0)
                        continue;
                    if (std::lcm(component_order(a, ca), component_order(b, cb)) != 2)
                        continue;
                    // larger fiber first
                    ScanEntry e{{a, b}, {ca, cb}, s, 2, a.additive() && b.additive()};
                    if (a.rank() < b.rank()) {
                        std::swap(e.fibers[0], e.fibers[1]);
                        std::swap(e.components[0], e.components[1]);
                    }
                    out.push_back(e);
                    done = true;
                }
        }
    return out;
}

} // namespace genusone
