#include "msos/constraint_set.hpp"

namespace msos {

ConstraintSet::ConstraintSet(int n, std::vector<Polynomial> polys)
    : n_(n), polys_(std::move(polys)), tau_(n, VarKind::Affine), one_plus_tau_(n, VarKind::Affine) {
    if (n < 1) throw std::invalid_argument("ConstraintSet: n must be >= 1");
    for (const auto& p : polys_) {
        if (p.kind() != VarKind::Affine || p.n() != n_)
            throw std::invalid_argument("ConstraintSet: constraints must be affine in n variables");
    }
    for (int j = 0; j < n_; ++j) {
        MultiIndex idx(static_cast<std::size_t>(n_), 0);
        idx[static_cast<std::size_t>(j)] = 2;
        tau_.add_term(idx, Rational(1));
    }
    for (const auto& p : polys_) tau_ += p * p;
    one_plus_tau_ = tau_;
    one_plus_tau_.add_term(MultiIndex(static_cast<std::size_t>(n_), 0), Rational(1));
}

Polynomial ConstraintSet::sigma() const {
    Polynomial s = Polynomial::variable(n_, VarKind::Extension, n_);
    Polynomial out = s * lift_affine(one_plus_tau_, VarKind::Extension);
    out -= Polynomial::constant(n_, VarKind::Extension, 1);
    return out;
}

double ConstraintSet::theta(std::span<const double> t) const {
    return 1.0 / one_plus_tau_.eval(t);
}

Rational ConstraintSet::theta_exact(std::span<const Rational> t) const {
    return Rational(1) / one_plus_tau_.eval_exact(t);
}

Polynomial lift_affine(const Polynomial& p, VarKind target) {
    if (p.kind() != VarKind::Affine)
        throw std::invalid_argument("lift_affine: affine polynomial required");
    if (target != VarKind::Extension && target != VarKind::Radical)
        throw std::invalid_argument("lift_affine: target must be extension or radical");
    Polynomial out(p.n(), target);
    for (const auto& [idx, c] : p.terms()) {
        MultiIndex lifted(idx);
        lifted.push_back(0);
        out.set_coeff(lifted, c);
    }
    return out;
}

std::vector<Polynomial> split_by_last_var(const Polynomial& q) {
    if (q.kind() != VarKind::Extension && q.kind() != VarKind::Radical)
        throw std::invalid_argument("split_by_last_var: extension/radical polynomial required");
    int n = q.n();
    std::vector<Polynomial> parts;
    for (const auto& [idx, c] : q.terms()) {
        int beta = idx.back();
        if (static_cast<int>(parts.size()) <= beta)
            parts.resize(static_cast<std::size_t>(beta) + 1, Polynomial(n, VarKind::Affine));
        MultiIndex ti(idx.begin(), idx.end() - 1);
        parts[static_cast<std::size_t>(beta)].add_term(ti, c);
    }
    return parts;
}

}  // namespace msos
