#pragma once

#include "msos/constraint_set.hpp"
#include "msos/polynomial.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace msos {

// numerator(t) * theta_p(t)^B, canonical when the numerator is not
// divisible by 1 + tau.
struct RationalForm {
    Polynomial numerator;  // affine t-kind
    int denom_power = 0;

    bool is_zero() const { return numerator.is_zero(); }
};

// Cross-multiplication equality: n1*(1+tau)^{B2} == n2*(1+tau)^{B1}.
bool form_equal(const RationalForm& a, const RationalForm& b, const ConstraintSet& cs);
RationalForm form_add(const RationalForm& a, const RationalForm& b, const ConstraintSet& cs);

// Substitutes s -> theta_p in q(t,s) and clears denominators; the result is
// zero exactly when q lies in the ideal generated by sigma.
RationalForm reduce_mod_sigma(const Polynomial& q, const ConstraintSet& cs);
bool kernel_test(const Polynomial& q, const ConstraintSet& cs);

// A point of R^N, N = (n+1)^2, stored as the symmetric matrix (x_pq).
struct EmbeddedPoint {
    int n = 0;
    Eigen::MatrixXd coords;  // (n+1) x (n+1)

    std::vector<double> flat() const;  // row-major
};

// x_pq = t_p t_q * theta(t), with t_0 = 1; unit Frobenius norm.
EmbeddedPoint phi_map(std::span<const double> t);

// Membership test for the range of phi: x_00 > tol, the quadratic relations
// x_0p x_0q = x_pq x_00, and x_00^2 + x_01^2 + ... + x_0n^2 = x_00.
bool phi_range_test(const EmbeddedPoint& x, double tol);

// t_j = x_0j / x_00; valid whenever phi_range_test holds.
std::vector<double> phi_preimage(const EmbeddedPoint& x);

// V(x) = (x_p x_q), the outer-product embedding.
EmbeddedPoint veronese(std::span<const double> x);
std::vector<std::vector<Rational>> veronese_exact(std::span<const Rational> x);

// For homogeneous P of even degree 2d in x_0..x_n, produces a degree-d
// polynomial Ptilde in the x_pq with Ptilde(V(x)) = P(x) exactly. Each
// monomial's exponent multiset is paired smallest-two-first.
HomogeneousPolynomial veronese_lift(const HomogeneousPolynomial& P);

// Substitutes x_pq -> x_p x_q, returning a homogeneous polynomial in x.
Polynomial compose_veronese(const HomogeneousPolynomial& Ptilde);

// | P(1,t) - Ptilde(phi(t)) * (1+|t|^2)^d |
double identity_41_residual(const HomogeneousPolynomial& P, std::span<const double> t);

// psi_p(t) = t_p / sqrt(1+|t|^2), t_0 = 1; a unit vector in R^{n+1}.
std::vector<double> psi_map(std::span<const double> t);

// p(t)*theta^s lies in Q_theta iff 2s >= deg(p).
bool qtheta_member(const Polynomial& p, int s_power);

}  // namespace msos
