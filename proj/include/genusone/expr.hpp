#pragma once

#include "genusone/exactalg.hpp"

#include <array>
#include <map>
#include <memory>
#include <string>

namespace genusone {

// Polynomial in t, x, y over a field.
class MPoly {
public:
    using Mono = std::array<int, 3>; // exponents of t, x, y

    MPoly() = default;
    explicit MPoly(Field K) : K_(std::move(K)) {}
    static MPoly constant(const Elem& c);
    static MPoly var(const Field& K, int which); // 0 = t, 1 = x, 2 = y
    static MPoly from_poly_t(const Poly& f);

    const Field& field() const { return K_; }
    const std::map<Mono, Elem>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const;
    Elem constant_term() const;
    // Only t occurs.
    bool univariate_t() const;
    Poly to_poly_t() const;

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator-() const;
    MPoly scale(const Elem& c) const;
    MPoly pow(unsigned e) const;
    // Simultaneous substitution t -> s[0], x -> s[1], y -> s[2].
    MPoly subst(const std::array<MPoly, 3>& s) const;

    bool operator==(const MPoly& o) const;
    std::string str() const;

private:
    void add_term(const Mono& m, const Elem& c);
    Field K_;
    std::map<Mono, Elem> c_;
};

// Parsed arithmetic expression: + - * ^, integers, parentheses, identifiers.
// t, x, y are variables; other identifiers are bound at evaluation time.
// Exponents are integer literals or identifiers bound to integers.
struct ExprNode;

class Expr {
public:
    Expr() = default;
    static Expr parse(const std::string& text);

    struct Env {
        std::map<std::string, Elem> values;
        std::map<std::string, long> ints;
    };
    MPoly eval(const Field& K, const Env& env) const;
    const std::string& text() const { return text_; }

private:
    std::shared_ptr<const ExprNode> root_;
    std::string text_;
};

} // namespace genusone
