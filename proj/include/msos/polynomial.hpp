#pragma once

#include "msos/multi_index.hpp"
#include "msos/rational.hpp"

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace msos {

// Variable layouts. Ambient dimension n names t1..tn; the other kinds add
// bookkeeping variables on top of it:
//   Affine       t1..tn                     (n slots)
//   Homogeneous  x0..xn                     (n+1 slots)
//   Extension    t1..tn, s                  (n+1 slots, s last)
//   Radical      t1..tn, u                  (n+1 slots, u last)
//   Embedded     x_pq, 0 <= p,q <= n        ((n+1)^2 slots, row-major)
enum class VarKind { Affine, Homogeneous, Extension, Radical, Embedded };

int slot_count(VarKind kind, int n);
std::string slot_name(VarKind kind, int n, int slot);

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos);
    std::size_t position;
};

// Sparse multivariate polynomial with exact rational coefficients.
// Zero coefficients are never stored; all ring arithmetic is exact.
class Polynomial {
public:
    using TermMap = std::map<MultiIndex, Rational, GradedLexLess>;

    Polynomial() : Polynomial(1, VarKind::Affine) {}
    Polynomial(int n, VarKind kind);

    static Polynomial constant(int n, VarKind kind, const Rational& c);
    static Polynomial monomial(int n, VarKind kind, const MultiIndex& idx, const Rational& c);
    static Polynomial variable(int n, VarKind kind, int slot);

    int n() const { return n_; }
    VarKind kind() const { return kind_; }
    int slots() const { return slot_count(kind_, n_); }

    bool is_zero() const { return terms_.empty(); }
    // Degree of the zero polynomial is a distinguished sentinel (nullopt).
    std::optional<int> degree() const;
    const TermMap& terms() const { return terms_; }
    Rational coeff(const MultiIndex& idx) const;
    void set_coeff(const MultiIndex& idx, const Rational& c);
    void add_term(const MultiIndex& idx, const Rational& c);

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial scaled(const Rational& c) const;
    Polynomial pow(int e) const;
    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    double eval(std::span<const double> point) const;
    Rational eval_exact(std::span<const Rational> point) const;

    // Canonical rendering; reparsing it yields an equal polynomial.
    std::string str() const;
    // Rendering with coefficients as shortest round-trip decimals of their
    // double images (lossy for rationals that are not binary fractions).
    std::string str_decimal() const;

private:
    int n_;
    VarKind kind_;
    TermMap terms_;

    void require_same_shape(const Polynomial& o) const;
    std::string render(bool decimal) const;
};

// Parses the polynomial grammar:
//   expression = ['+'|'-'] term (('+'|'-') term)*
//   term       = [coefficient] ('*'? variable ('^' integer)?)*
//   coefficient= integer | integer '/' integer | decimal
// Variables by kind: t1..tn, x0..xn, s, u. Whitespace is insignificant.
Polynomial parse_poly(const std::string& text, int n, VarKind kind);

// A polynomial all of whose terms share one total degree.
class HomogeneousPolynomial {
public:
    HomogeneousPolynomial(Polynomial p, int degree);
    const Polynomial& poly() const { return p_; }
    int degree() const { return degree_; }
    int n() const { return p_.n(); }
    double eval(std::span<const double> point) const { return p_.eval(point); }

private:
    Polynomial p_;
    int degree_;
};

// (1 + t1^2 + ... + tn^2)^e, expanded exactly.
Polynomial delta_power(int n, int e);

// P(x0..xn) = x0^d p(x1/x0, ..., xn/x0); requires d >= deg(p).
HomogeneousPolynomial homogenize(const Polynomial& p, int d);

// P(1, t1, ..., tn).
Polynomial dehomogenize(const HomogeneousPolynomial& P);

// Exact quotient f/g if g divides f, otherwise nullopt.
std::optional<Polynomial> try_divide(const Polynomial& f, const Polynomial& g);

// Rewrites u^2 -> 1 + t1^2 + ... + tn^2 until the u-degree is <= 1.
Polynomial radical_reduce(const Polynomial& p);

}  // namespace msos
