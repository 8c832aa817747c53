#include "genusone/catalog.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace genusone {

namespace {

std::string join(const std::vector<std::string>& v, const std::string& sep)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? sep : "") + v[i];
    return s;
}

bool larger_first(const FiberType& a, const FiberType& b)
{
    if (a.rank() != b.rank())
        return a.rank() > b.rank();
    return b < a;
}

std::vector<std::string> labels(const std::vector<FiberType>& fs)
{
    std::vector<std::string> out;
    for (auto& f : fs)
        out.push_back(f.dynkin());
    std::sort(out.begin(), out.end());
    return out;
}

// Table 1 applies to multiplicative fibers with >= 8 components and additive ones with >= 7.
bool is_big(const FiberType& f)
{
    if (f.multiplicative())
        return f.components() >= 8;
    return f.additive() && f.components() >= 7;
}

bool embeds_cached(const std::vector<FiberType>& fibers)
{
    static std::map<std::string, bool> cache;
    auto cfg = RootConfiguration::from_fibers(fibers);
    auto key = cfg.str();
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, find_subsystem(cfg).has_value()).first;
    return it->second;
}

void multisets(const std::vector<FiberType>& types, std::size_t from, int rank_left, std::vector<FiberType>& cur,
               const std::function<void(const std::vector<FiberType>&)>& emit)
{
    if (rank_left == 0) {
        emit(cur);
        return;
    }
    for (std::size_t i = from; i < types.size(); ++i) {
        if (types[i].rank() > rank_left)
            continue;
        cur.push_back(types[i]);
        multisets(types, i, rank_left - types[i].rank(), cur, emit);
        cur.pop_back();
    }
}

std::vector<FiberType> qe_types(unsigned p)
{
    std::vector<std::string> names;
    if (p == 2)
        names = {"III", "I0*", "I2*", "I4*", "III*", "II*"};
    else if (p == 3)
        names = {"IV", "IV*", "II*"};
    std::vector<FiberType> out;
    for (auto& n : names)
        out.push_back(FiberType::parse(n));
    return out;
}

} // namespace

std::string ExtremalCandidate::str() const
{
    std::vector<std::string> s;
    for (auto& f : fibers)
        s.push_back(f.dynkin());
    return join(s, " + ") + (quasi_elliptic ? " (qe)" : "");
}

ExtremalEnumeration enumerate_extremal(unsigned p)
{
    if (p != 0 && !is_prime(p))
        throw ConstraintError("p = " + std::to_string(p) + " is neither 0 nor a prime");
    ExtremalEnumeration out;
    out.p = p;
    bool wild = p == 2 || p == 3;

    auto record = [&](std::vector<FiberType> fs, bool qe) {
        std::sort(fs.begin(), fs.end(), larger_first);
        ExtremalCandidate c;
        c.fibers = fs;
        c.quasi_elliptic = qe;
        for (auto& f : fs)
            c.euler += f.euler();
        for (auto& f : fs)
            if (is_big(f)) {
                c.big_fiber = f.dynkin();
                break;
            }
        out.candidates.push_back(c);
    };

    // elliptic: positive-rank fibers summing to 8, padded with I1 and II
    std::vector<FiberType> positive;
    for (auto& t : FiberType::all_singular(8))
        if (t.rank() > 0)
            positive.push_back(t);
    std::sort(positive.begin(), positive.end(), larger_first);
    const FiberType I1 = FiberType::I(1), II = FiberType::of(Kodaira::II);
    std::vector<FiberType> cur;
    multisets(positive, 0, 8, cur, [&](const std::vector<FiberType>& fs) {
        // a multiplicative fiber of type I_n in characteristic p needs nothing; additive ones carry wild terms
        if (!embeds_cached(fs))
            return;
        int e = 0;
        bool additive = false;
        for (auto& f : fs) {
            e += f.euler();
            additive = additive || f.additive();
        }
        if (e > 12)
            return;
        for (int n2 = 0; e + 2 * n2 <= 12; ++n2)
            for (int n1 = 0; e + 2 * n2 + n1 <= 12; ++n1) {
                int total = e + 2 * n2 + n1;
                bool has_add = additive || n2 > 0;
                if (total != 12 && !(wild && has_add))
                    continue;
                auto all = fs;
                all.insert(all.end(), n2, II);
                all.insert(all.end(), n1, I1);
                record(all, false);
            }
    });

    if (wild) {
        multisets(qe_types(p), 0, 8, cur, [&](const std::vector<FiberType>& fs) {
            if (embeds_cached(fs))
                record(fs, true);
        });
    }

    // intersect with Table 1
    const Catalog& cat = Catalog::builtin();
    std::set<std::vector<std::string>> table1_sets;
    for (auto& entry : cat.table1)
        for (auto& row : entry.rows)
            if (row.p.admits(p))
                for (auto& opt : row.options) {
                    std::vector<std::string> s = opt;
                    s.push_back(entry.fiber);
                    std::sort(s.begin(), s.end());
                    table1_sets.insert(s);
                }
    std::set<std::vector<std::string>> generated;
    for (auto& c : out.candidates) {
        auto key = labels(c.fibers);
        c.in_table1 = table1_sets.count(key) > 0;
        generated.insert(key);
        if (c.big_fiber.empty() || c.in_table1)
            out.output.push_back(c);
    }
    for (auto& s : table1_sets) {
        int r = 0;
        for (auto& l : s)
            r += FiberType::parse(l).rank();
        if (r == 8 && !generated.count(s))
            out.table1_missing.push_back(join(s, " + "));
    }
    return out;
}

// ------------------------------------------------------------------ affine subdiagrams

namespace {

struct Graph {
    int n = 0;
    std::vector<std::vector<int>> w; // edge weights, 0 = none
};

std::string classify_tree(const Graph& g, const std::vector<int>& vs)
{
    int k = static_cast<int>(vs.size());
    std::map<int, std::vector<int>> nb;
    for (int a : vs)
        for (int b : vs)
            if (g.w[a][b])
                nb[a].push_back(b);
    std::vector<int> branch, leaves;
    for (int a : vs) {
        int d = static_cast<int>(nb[a].size());
        if (d > 4)
            return "";
        if (d >= 3)
            branch.push_back(a);
        if (d == 1)
            leaves.push_back(a);
    }
    if (branch.size() == 1) {
        int c = branch[0];
        if (nb[c].size() == 4)
            return k == 5 ? "D~4" : "";
        // three arms; lengths in vertices
        std::vector<int> arms;
        for (int start : nb[c]) {
            int len = 1, prev = c, cur = start;
            while (nb[cur].size() == 2) {
                int next = nb[cur][0] == prev ? nb[cur][1] : nb[cur][0];
                prev = cur;
                cur = next;
                ++len;
            }
            if (nb[cur].size() != 1)
                return "";
            arms.push_back(len);
        }
        std::sort(arms.begin(), arms.end());
        if (arms == std::vector<int>{2, 2, 2})
            return "E~6";
        if (arms == std::vector<int>{1, 3, 3})
            return "E~7";
        if (arms == std::vector<int>{1, 2, 5})
            return "E~8";
        return "";
    }
    if (branch.size() == 2) {
        for (int b : branch) {
            if (nb[b].size() != 3)
                return "";
            int leaf_nb = 0;
            for (int x : nb[b])
                leaf_nb += nb[x].size() == 1;
            if (leaf_nb != 2)
                return "";
        }
        return "D~" + std::to_string(k - 1);
    }
    return "";
}

std::string classify(const Graph& g, const std::vector<int>& vs)
{
    int k = static_cast<int>(vs.size());
    int edges = 0, doubles = 0;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (int w = g.w[vs[i]][vs[j]]) {
                ++edges;
                doubles += w == 2;
                if (w > 2)
                    return "";
            }
    if (doubles)
        return k == 2 && doubles == 1 ? "A~1" : "";
    if (edges == k) {
        // a simple cycle: every degree 2
        for (int a : vs) {
            int d = 0;
            for (int b : vs)
                d += g.w[a][b] != 0;
            if (d != 2)
                return "";
        }
        return k >= 3 ? "A~" + std::to_string(k - 1) : "";
    }
    if (edges == k - 1)
        return classify_tree(g, vs);
    return "";
}

bool connected(const Graph& g, unsigned mask)
{
    int first = __builtin_ctz(mask);
    unsigned seen = 1u << first, frontier = seen;
    while (frontier) {
        unsigned next = 0;
        for (int a = 0; a < g.n; ++a)
            if (frontier >> a & 1)
                for (int b = 0; b < g.n; ++b)
                    if (g.w[a][b] && (mask >> b & 1) && !(seen >> b & 1))
                        next |= 1u << b;
        seen |= next;
        frontier = next;
    }
    return seen == mask;
}

} // namespace

std::vector<AffineSubdiagram> affine_subdiagrams(int n, const std::vector<EnriquesEdge>& edges)
{
    if (n < 1 || n > 24)
        throw DomainError("diagram with " + std::to_string(n) + " vertices is out of range");
    Graph g;
    g.n = n;
    g.w.assign(n, std::vector<int>(n, 0));
    for (auto& e : edges) {
        if (e.a < 0 || e.b < 0 || e.a >= n || e.b >= n || e.a == e.b)
            throw DomainError("bad edge " + std::to_string(e.a) + "-" + std::to_string(e.b));
        g.w[e.a][e.b] = g.w[e.b][e.a] = e.weight;
    }
    std::vector<AffineSubdiagram> out;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        int k = __builtin_popcount(mask);
        if (k < 2 || !connected(g, mask))
            continue;
        std::vector<int> vs;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1)
                vs.push_back(i);
        if (auto t = classify(g, vs); !t.empty())
            out.push_back({t, vs});
    }
    std::sort(out.begin(), out.end(), [](const AffineSubdiagram& a, const AffineSubdiagram& b) {
        return std::tie(a.type, a.vertices) < std::tie(b.type, b.vertices);
    });
    return out;
}

std::vector<AffineSubdiagram> enriques_subdiagram_scan(const EnriquesConfig& cfg)
{
    return affine_subdiagrams(static_cast<int>(cfg.vertices.size()), cfg.edges);
}

EnriquesReport enriques_report(const std::string& label)
{
    const Catalog& cat = Catalog::builtin();
    const EnriquesConfig& cfg = cat.enriques_config(label);
    EnriquesReport r;
    r.label = label;
    r.found = enriques_subdiagram_scan(cfg);
    std::set<std::string> types;
    for (auto& s : r.found)
        types.insert(s.type);
    for (auto& n : cfg.named)
        if (!types.count(n))
            r.missing_named.push_back(n);
    for (auto& t : types) {
        bool allowed = std::find(cat.enriques_allowed.begin(), cat.enriques_allowed.end(), t) !=
                       cat.enriques_allowed.end();
        bool named = std::find(cfg.named.begin(), cfg.named.end(), t) != cfg.named.end();
        int size = FiberType::parse(t).components();
        if (!allowed && size >= 5)
            r.contradicting.push_back(t);
        else if (allowed && !named)
            r.unnamed.push_back(t);
    }
    return r;
}

} // namespace genusone
