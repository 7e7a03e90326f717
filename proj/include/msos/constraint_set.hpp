#pragma once

#include "msos/polynomial.hpp"

#include <span>
#include <vector>

namespace msos {

// The tuple p = (p_1,...,p_m) of real polynomials cutting out the
// semi-algebraic set { t : p_k(t) >= 0 }, together with the derived
// quantities used by the extension machinery:
//   tau        = sum_j t_j^2 + sum_k p_k(t)^2
//   theta_p(t) = 1 / (1 + tau(t))
//   sigma(t,s) = s*(1 + tau(t)) - 1
class ConstraintSet {
public:
    explicit ConstraintSet(int n) : ConstraintSet(n, {}) {}
    ConstraintSet(int n, std::vector<Polynomial> polys);

    int n() const { return n_; }
    int m() const { return static_cast<int>(polys_.size()); }
    const std::vector<Polynomial>& polys() const { return polys_; }
    const Polynomial& tau() const { return tau_; }
    const Polynomial& one_plus_tau() const { return one_plus_tau_; }
    Polynomial sigma() const;

    double theta(std::span<const double> t) const;
    Rational theta_exact(std::span<const Rational> t) const;

private:
    int n_;
    std::vector<Polynomial> polys_;
    Polynomial tau_;
    Polynomial one_plus_tau_;
};

// Lifts an affine polynomial into the (t,s) or (t,u) layout, s/u-degree 0.
Polynomial lift_affine(const Polynomial& p, VarKind target);

// Collects the coefficient polynomials q_beta(t) of q = sum_beta q_beta(t) s^beta.
std::vector<Polynomial> split_by_last_var(const Polynomial& q);

}  // namespace msos
