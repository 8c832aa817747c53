#include "genusone/expr.hpp"

#include <cctype>
#include <sstream>

namespace genusone {

MPoly MPoly::constant(const Elem& c)
{
    MPoly r(c.field());
    r.add_term({0, 0, 0}, c);
    return r;
}

MPoly MPoly::var(const Field& K, int which)
{
    MPoly r(K);
    Mono m{0, 0, 0};
    m.at(which) = 1;
    r.add_term(m, K.one());
    return r;
}

MPoly MPoly::from_poly_t(const Poly& f)
{
    MPoly r(f.field());
    for (std::size_t i = 0; i < f.coeffs().size(); ++i)
        r.add_term({static_cast<int>(i), 0, 0}, f.coeffs()[i]);
    return r;
}

void MPoly::add_term(const Mono& m, const Elem& c)
{
    if (c.is_zero())
        return;
    auto it = c_.find(m);
    if (it == c_.end()) {
        c_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero())
        c_.erase(it);
}

bool MPoly::is_constant() const { return c_.empty() || (c_.size() == 1 && c_.begin()->first == Mono{0, 0, 0}); }

Elem MPoly::constant_term() const
{
    auto it = c_.find({0, 0, 0});
    return it == c_.end() ? K_.zero() : it->second;
}

bool MPoly::univariate_t() const
{
    for (auto& [m, c] : c_)
        if (m[1] || m[2])
            return false;
    return true;
}

Poly MPoly::to_poly_t() const
{
    if (!univariate_t())
        throw DomainError("expression depends on x or y: " + str());
    int d = c_.empty() ? -1 : c_.rbegin()->first[0];
    std::vector<Elem> v(static_cast<std::size_t>(d + 1), K_.zero());
    for (auto& [m, c] : c_)
        v[static_cast<std::size_t>(m[0])] = c;
    return Poly(K_, v);
}

MPoly MPoly::operator+(const MPoly& o) const
{
    MPoly r = *this;
    for (auto& [m, c] : o.c_)
        r.add_term(m, c);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator-() const
{
    MPoly r(K_);
    for (auto& [m, c] : c_)
        r.c_.emplace(m, -c);
    return r;
}

MPoly MPoly::operator*(const MPoly& o) const
{
    MPoly r(K_);
    for (auto& [m1, c1] : c_)
        for (auto& [m2, c2] : o.c_)
            r.add_term({m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]}, c1 * c2);
    return r;
}

MPoly MPoly::scale(const Elem& k) const
{
    MPoly r(K_);
    for (auto& [m, c] : c_)
        r.add_term(m, c * k);
    return r;
}

MPoly MPoly::pow(unsigned e) const
{
    MPoly r = constant(K_.one()), b = *this;
    while (e) {
        if (e & 1)
            r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

MPoly MPoly::subst(const std::array<MPoly, 3>& s) const
{
    // cache powers; the polynomials here have small degree
    std::array<std::vector<MPoly>, 3> pw;
    auto power = [&](int v, int e) -> const MPoly& {
        auto& cache = pw[static_cast<std::size_t>(v)];
        if (cache.empty())
            cache.push_back(constant(K_.one()));
        while (static_cast<int>(cache.size()) <= e)
            cache.push_back(cache.back() * s[static_cast<std::size_t>(v)]);
        return cache[static_cast<std::size_t>(e)];
    };
    MPoly r(K_);
    for (auto& [m, c] : c_)
        r = r + (power(0, m[0]) * power(1, m[1]) * power(2, m[2])).scale(c);
    return r;
}

bool MPoly::operator==(const MPoly& o) const
{
    if (c_.size() != o.c_.size())
        return false;
    auto a = c_.begin();
    for (auto b = o.c_.begin(); b != o.c_.end(); ++a, ++b)
        if (a->first != b->first || a->second != b->second)
            return false;
    return true;
}

std::string MPoly::str() const
{
    if (c_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    static const char* names[3] = {"t", "x", "y"};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        if (!first)
            os << " + ";
        first = false;
        auto& [m, c] = *it;
        bool unit = c.is_one();
        if (!unit || m == Mono{0, 0, 0})
            os << (c.field().degree() > 1 ? "(" + c.str() + ")" : c.str());
        for (int v = 0; v < 3; ++v) {
            if (m[static_cast<std::size_t>(v)] == 0)
                continue;
            if (!unit)
                os << "*";
            unit = false;
            os << names[v];
            if (m[static_cast<std::size_t>(v)] > 1)
                os << "^" << m[static_cast<std::size_t>(v)];
        }
    }
    return os.str();
}

struct ExprNode {
    enum Op { Num, Ident, Add, Sub, Mul, Neg, Pow } op = Num;
    long num = 0;
    std::string name;      // Ident, or the exponent identifier of Pow
    long exponent = 0;     // Pow with a literal exponent
    std::shared_ptr<const ExprNode> a, b;
};

namespace {

using NodeP = std::shared_ptr<const ExprNode>;

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodeP parse()
    {
        NodeP n = sum();
        skip();
        if (i_ != s_.size())
            fail("unexpected '" + std::string(1, s_[i_]) + "'");
        return n;
    }

private:
    void fail(const std::string& why) const
    {
        throw DomainError("cannot parse expression \"" + s_ + "\": " + why);
    }
    void skip()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }
    bool eat(char c)
    {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    static NodeP make(ExprNode::Op op, NodeP a, NodeP b = nullptr)
    {
        auto n = std::make_shared<ExprNode>();
        n->op = op;
        n->a = std::move(a);
        n->b = std::move(b);
        return n;
    }
    NodeP sum()
    {
        NodeP n = product();
        for (;;) {
            if (eat('+'))
                n = make(ExprNode::Add, n, product());
            else if (eat('-'))
                n = make(ExprNode::Sub, n, product());
            else
                return n;
        }
    }
    NodeP product()
    {
        NodeP n = unary();
        while (eat('*'))
            n = make(ExprNode::Mul, n, unary());
        return n;
    }
    NodeP unary()
    {
        if (eat('-'))
            return make(ExprNode::Neg, unary());
        if (eat('+'))
            return unary();
        return power();
    }
    NodeP power()
    {
        NodeP base = atom();
        if (!eat('^'))
            return base;
        auto n = std::make_shared<ExprNode>();
        n->op = ExprNode::Pow;
        n->a = base;
        skip();
        if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
            n->exponent = number();
        else if (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_])))
            n->name = ident();
        else
            fail("exponent must be an integer or a name");
        return n;
    }
    long number()
    {
        std::size_t j = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
            ++i_;
        if (i_ - j > 12)
            fail("integer literal too long");
        return std::stol(s_.substr(j, i_ - j));
    }
    std::string ident()
    {
        std::size_t j = i_;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
            ++i_;
        return s_.substr(j, i_ - j);
    }
    NodeP atom()
    {
        skip();
        if (i_ >= s_.size())
            fail("unexpected end");
        if (eat('(')) {
            NodeP n = sum();
            if (!eat(')'))
                fail("missing ')'");
            return n;
        }
        auto n = std::make_shared<ExprNode>();
        if (std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            n->op = ExprNode::Num;
            n->num = number();
        } else if (std::isalpha(static_cast<unsigned char>(s_[i_]))) {
            n->op = ExprNode::Ident;
            n->name = ident();
        } else {
            fail("unexpected '" + std::string(1, s_[i_]) + "'");
        }
        return n;
    }

    const std::string& s_;
    std::size_t i_ = 0;
};

MPoly eval_node(const ExprNode& n, const Field& K, const Expr::Env& env)
{
    switch (n.op) {
    case ExprNode::Num: return MPoly::constant(K.from_int(n.num));
    case ExprNode::Ident: {
        if (n.name == "t")
            return MPoly::var(K, 0);
        if (n.name == "x")
            return MPoly::var(K, 1);
        if (n.name == "y")
            return MPoly::var(K, 2);
        auto it = env.values.find(n.name);
        if (it != env.values.end())
            return MPoly::constant(it->second);
        auto jt = env.ints.find(n.name);
        if (jt != env.ints.end())
            return MPoly::constant(K.from_int(jt->second));
        throw DomainError("unbound name '" + n.name + "'");
    }
    case ExprNode::Add: return eval_node(*n.a, K, env) + eval_node(*n.b, K, env);
    case ExprNode::Sub: return eval_node(*n.a, K, env) - eval_node(*n.b, K, env);
    case ExprNode::Mul: return eval_node(*n.a, K, env) * eval_node(*n.b, K, env);
    case ExprNode::Neg: return -eval_node(*n.a, K, env);
    case ExprNode::Pow: {
        long e = n.exponent;
        if (!n.name.empty()) {
            auto jt = env.ints.find(n.name);
            if (jt == env.ints.end())
                throw DomainError("exponent '" + n.name + "' is not bound to an integer");
            e = jt->second;
        }
        MPoly b = eval_node(*n.a, K, env);
        if (e < 0) {
            if (!b.is_constant() || b.is_zero())
                throw DomainError("negative power of a non-unit");
            return MPoly::constant(b.constant_term().pow(e));
        }
        return b.pow(static_cast<unsigned>(e));
    }
    }
    throw DomainError("bad expression node");
}

} // namespace

Expr Expr::parse(const std::string& text)
{
    Expr e;
    e.root_ = Parser(text).parse();
    e.text_ = text;
    return e;
}

MPoly Expr::eval(const Field& K, const Env& env) const
{
    if (!root_)
        return MPoly(K);
    return eval_node(*root_, K, env);
}

} // namespace genusone
