#include "msos/embedding.hpp"

#include <algorithm>
#include <cmath>

namespace msos {

namespace {

RationalForm canonical(Polynomial num, int B, const ConstraintSet& cs) {
    if (num.is_zero()) return RationalForm{std::move(num), 0};
    while (B > 0) {
        auto q = try_divide(num, cs.one_plus_tau());
        if (!q) break;
        num = std::move(*q);
        --B;
    }
    return RationalForm{std::move(num), B};
}

}  // namespace

bool form_equal(const RationalForm& a, const RationalForm& b, const ConstraintSet& cs) {
    Polynomial lhs = a.numerator * cs.one_plus_tau().pow(b.denom_power);
    Polynomial rhs = b.numerator * cs.one_plus_tau().pow(a.denom_power);
    return lhs == rhs;
}

RationalForm form_add(const RationalForm& a, const RationalForm& b, const ConstraintSet& cs) {
    int B = std::max(a.denom_power, b.denom_power);
    Polynomial num = a.numerator * cs.one_plus_tau().pow(B - a.denom_power) +
                     b.numerator * cs.one_plus_tau().pow(B - b.denom_power);
    return canonical(std::move(num), B, cs);
}

RationalForm reduce_mod_sigma(const Polynomial& q, const ConstraintSet& cs) {
    if (q.kind() != VarKind::Extension || q.n() != cs.n())
        throw std::invalid_argument("reduce_mod_sigma: (t,s) polynomial over the constraint arity required");
    auto parts = split_by_last_var(q);
    if (parts.empty()) return RationalForm{Polynomial(cs.n(), VarKind::Affine), 0};
    int b = static_cast<int>(parts.size()) - 1;
    Polynomial num(cs.n(), VarKind::Affine);
    for (int beta = 0; beta <= b; ++beta) {
        if (parts[static_cast<std::size_t>(beta)].is_zero()) continue;
        num += parts[static_cast<std::size_t>(beta)] * cs.one_plus_tau().pow(b - beta);
    }
    return canonical(std::move(num), b, cs);
}

bool kernel_test(const Polynomial& q, const ConstraintSet& cs) {
    return reduce_mod_sigma(q, cs).is_zero();
}

std::vector<double> EmbeddedPoint::flat() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(coords.size()));
    for (int p = 0; p < coords.rows(); ++p)
        for (int q = 0; q < coords.cols(); ++q) out.push_back(coords(p, q));
    return out;
}

EmbeddedPoint phi_map(std::span<const double> t) {
    int n = static_cast<int>(t.size());
    double norm2 = 0.0;
    for (double v : t) norm2 += v * v;
    double theta = 1.0 / (1.0 + norm2);
    EmbeddedPoint x{n, Eigen::MatrixXd(n + 1, n + 1)};
    auto tp = [&](int p) { return p == 0 ? 1.0 : t[static_cast<std::size_t>(p - 1)]; };
    for (int p = 0; p <= n; ++p)
        for (int q = p; q <= n; ++q) x.coords(p, q) = x.coords(q, p) = tp(p) * tp(q) * theta;
    return x;
}

bool phi_range_test(const EmbeddedPoint& x, double tol) {
    int n = x.n;
    const auto& c = x.coords;
    if (!(c(0, 0) > tol)) return false;
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q) {
            if (std::abs(c(p, q) - c(q, p)) > tol) return false;
            if (std::abs(c(0, p) * c(0, q) - c(p, q) * c(0, 0)) > tol) return false;
        }
    double row0 = 0.0;
    for (int p = 0; p <= n; ++p) row0 += c(0, p) * c(0, p);
    return std::abs(row0 - c(0, 0)) <= tol;
}

std::vector<double> phi_preimage(const EmbeddedPoint& x) {
    std::vector<double> t(static_cast<std::size_t>(x.n));
    for (int j = 1; j <= x.n; ++j) t[static_cast<std::size_t>(j - 1)] = x.coords(0, j) / x.coords(0, 0);
    return t;
}

EmbeddedPoint veronese(std::span<const double> x) {
    int n = static_cast<int>(x.size()) - 1;
    EmbeddedPoint v{n, Eigen::MatrixXd(n + 1, n + 1)};
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q)
            v.coords(p, q) = x[static_cast<std::size_t>(p)] * x[static_cast<std::size_t>(q)];
    return v;
}

std::vector<std::vector<Rational>> veronese_exact(std::span<const Rational> x) {
    std::size_t m = x.size();
    std::vector<std::vector<Rational>> v(m, std::vector<Rational>(m));
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q) v[p][q] = x[p] * x[q];
    return v;
}

HomogeneousPolynomial veronese_lift(const HomogeneousPolynomial& P) {
    if (P.poly().kind() != VarKind::Homogeneous)
        throw std::invalid_argument("veronese_lift: homogeneous polynomial required");
    if (P.degree() % 2 != 0)
        throw std::invalid_argument("veronese_lift: even degree required");
    int n = P.n();
    int d = P.degree() / 2;
    Polynomial lift(n, VarKind::Embedded);
    for (const auto& [idx, c] : P.poly().terms()) {
        // exponent multiset, ascending; pair off the two smallest repeatedly
        std::vector<int> vars;
        for (int v = 0; v <= n; ++v)
            for (int k = 0; k < idx[static_cast<std::size_t>(v)]; ++k) vars.push_back(v);
        MultiIndex cell(static_cast<std::size_t>((n + 1) * (n + 1)), 0);
        for (std::size_t i = 0; i + 1 < vars.size(); i += 2) {
            int p = vars[i], q = vars[i + 1];
            cell[static_cast<std::size_t>(p * (n + 1) + q)] += 1;
        }
        lift.add_term(cell, c);
    }
    return HomogeneousPolynomial(std::move(lift), d);
}

Polynomial compose_veronese(const HomogeneousPolynomial& Ptilde) {
    if (Ptilde.poly().kind() != VarKind::Embedded)
        throw std::invalid_argument("compose_veronese: embedded polynomial required");
    int n = Ptilde.n();
    Polynomial out(n, VarKind::Homogeneous);
    for (const auto& [idx, c] : Ptilde.poly().terms()) {
        MultiIndex xi(static_cast<std::size_t>(n + 1), 0);
        for (int cellIdx = 0; cellIdx < static_cast<int>(idx.size()); ++cellIdx) {
            int e = idx[static_cast<std::size_t>(cellIdx)];
            if (e == 0) continue;
            int p = cellIdx / (n + 1), q = cellIdx % (n + 1);
            xi[static_cast<std::size_t>(p)] += e;
            xi[static_cast<std::size_t>(q)] += e;
        }
        out.add_term(xi, c);
    }
    return out;
}

double identity_41_residual(const HomogeneousPolynomial& P, std::span<const double> t) {
    if (P.degree() % 2 != 0)
        throw std::invalid_argument("identity_41_residual: even degree required");
    int d = P.degree() / 2;
    std::vector<double> x1t;
    x1t.push_back(1.0);
    x1t.insert(x1t.end(), t.begin(), t.end());
    double lhs = P.eval(x1t);

    HomogeneousPolynomial lift = veronese_lift(P);
    EmbeddedPoint phi = phi_map(t);
    std::vector<double> flat = phi.flat();
    double norm2 = 0.0;
    for (double v : t) norm2 += v * v;
    double rhs = lift.poly().eval(flat) * std::pow(1.0 + norm2, d);
    return std::abs(lhs - rhs);
}

std::vector<double> psi_map(std::span<const double> t) {
    double norm2 = 0.0;
    for (double v : t) norm2 += v * v;
    double scale = 1.0 / std::sqrt(1.0 + norm2);
    std::vector<double> out;
    out.reserve(t.size() + 1);
    out.push_back(scale);
    for (double v : t) out.push_back(v * scale);
    return out;
}

bool qtheta_member(const Polynomial& p, int s_power) {
    if (s_power < 0) throw std::invalid_argument("qtheta_member: s_power must be >= 0");
    auto d = p.degree();
    return !d || 2 * s_power >= *d;
}

}  // namespace msos
