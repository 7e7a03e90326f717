#include "msos/moment_core.hpp"

#include <cmath>

namespace msos {

namespace {

std::vector<std::pair<MultiIndex, int>> truncated_basis(int n, int deg_t, int deg_s) {
    std::vector<std::pair<MultiIndex, int>> basis;
    if (deg_t < 0 || deg_s < 0) return basis;
    // (alpha, beta) ordered by the global order on the combined index
    for (const auto& comb : indices_up_to(n + 1, deg_t + deg_s)) {
        MultiIndex alpha(comb.begin(), comb.end() - 1);
        int beta = comb.back();
        if (total_degree(alpha) <= deg_t && beta <= deg_s) basis.emplace_back(alpha, beta);
    }
    return basis;
}

}  // namespace

std::pair<bool, double> psd_test(const Eigen::MatrixXd& M, double tol) {
    if (M.rows() == 0) return {true, 0.0};
    if (!M.allFinite()) throw std::invalid_argument("psd_test: non-finite entries");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    double min_eig = es.eigenvalues().minCoeff();
    double max_eig = es.eigenvalues().maxCoeff();
    return {min_eig >= -tol * std::max(1.0, max_eig), min_eig};
}

LabeledMatrix moment_matrix(const ExtendedSequence& seq, int deg_t, int deg_s) {
    return localizing_matrix(seq, Polynomial::constant(seq.n(), VarKind::Affine, 1), deg_t, deg_s);
}

LabeledMatrix localizing_matrix(const ExtendedSequence& seq, const Polynomial& mult,
                                int deg_t, int deg_s) {
    if (mult.kind() != VarKind::Affine || mult.n() != seq.n())
        throw std::invalid_argument("localizing_matrix: multiplier must be affine over the sequence arity");
    LabeledMatrix out;
    out.basis = truncated_basis(seq.n(), deg_t, deg_s);
    auto sz = static_cast<Eigen::Index>(out.basis.size());
    out.entries.resize(sz, sz);
    for (Eigen::Index i = 0; i < sz; ++i) {
        for (Eigen::Index j = i; j < sz; ++j) {
            const auto& [ai, bi] = out.basis[static_cast<std::size_t>(i)];
            const auto& [aj, bj] = out.basis[static_cast<std::size_t>(j)];
            MultiIndex a = index_sum(ai, aj);
            int b = bi + bj;
            Rational sum(0);
            for (const auto& [xi, c] : mult.terms()) sum += c * seq.value_exact(index_sum(a, xi), b);
            out.entries(i, j) = out.entries(j, i) = to_double(sum);
        }
    }
    return out;
}

std::vector<RecurrenceViolation> check_recurrence(const ExtendedSequence& seq,
                                                  const ConstraintSet& cs, double tol,
                                                  std::vector<std::string>* warnings) {
    if (cs.n() != seq.n())
        throw std::invalid_argument("check_recurrence: arity mismatch");
    int n = seq.n();
    std::vector<Polynomial> squares;
    int shift = 2;
    for (const auto& p : cs.polys()) {
        Polynomial sq = p * p;
        if (auto d = sq.degree()) shift = std::max(shift, *d);
        squares.push_back(std::move(sq));
    }
    std::vector<RecurrenceViolation> violations;
    int alpha_max = seq.alpha_bound() - shift;
    if (alpha_max < 0 || seq.beta_bound() < 1) {
        if (warnings)
            warnings->push_back("recurrence not checkable: rectangle too small (needs |alpha| <= A-" +
                                std::to_string(shift) + " and B >= 1)");
        return violations;
    }
    for (const auto& alpha : indices_up_to(n, alpha_max)) {
        for (int beta = 0; beta + 1 <= seq.beta_bound(); ++beta) {
            Rational lhs = seq.value_exact(alpha, beta);
            Rational rhs = seq.value_exact(alpha, beta + 1);
            for (int j = 0; j < n; ++j) {
                MultiIndex a2(alpha);
                a2[static_cast<std::size_t>(j)] += 2;
                rhs += seq.value_exact(a2, beta + 1);
            }
            for (const auto& sq : squares) {
                for (const auto& [zeta, c] : sq.terms())
                    rhs += c * seq.value_exact(index_sum(alpha, zeta), beta + 1);
            }
            Rational diff = lhs - rhs;
            if (diff == 0) continue;
            double lhs_d = to_double(lhs), rhs_d = to_double(rhs), diff_d = to_double(diff);
            if (std::abs(diff_d) > tol * (1.0 + std::abs(lhs_d)))
                violations.push_back({alpha, beta, lhs_d, rhs_d, std::abs(diff_d)});
        }
    }
    return violations;
}

namespace {

CheckReport run_checks(const ExtendedSequence& seq, const ConstraintSet& recurrence_cs,
                       const std::vector<std::pair<std::string, Polynomial>>& localizers,
                       CheckMode mode, double tol, int deg_t, int deg_s) {
    CheckReport report;
    report.mode = mode;
    bool ok = true;

    MultiIndex zero(static_cast<std::size_t>(seq.n()), 0);
    if (!(seq.value_exact(zero, 0) > 0)) {
        report.warnings.push_back("delta_(0,0) must be positive");
        ok = false;
    }

    report.recurrence_violations = check_recurrence(seq, recurrence_cs, tol, &report.warnings);
    if (!report.recurrence_violations.empty()) ok = false;

    {
        LabeledMatrix M = moment_matrix(seq, deg_t, deg_s);
        auto [pass, min_eig] = psd_test(M.entries, tol);
        double max_eig = M.entries.rows() ? Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(
                                                M.entries, Eigen::EigenvaluesOnly)
                                                .eigenvalues()
                                                .maxCoeff()
                                          : 0.0;
        report.psd_results.push_back({"moment", min_eig, max_eig, pass});
        if (!pass) ok = false;
    }
    for (const auto& [label, mult] : localizers) {
        LabeledMatrix M = localizing_matrix(seq, mult, deg_t, deg_s);
        auto [pass, min_eig] = psd_test(M.entries, tol);
        double max_eig = M.entries.rows() ? Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(
                                                M.entries, Eigen::EigenvaluesOnly)
                                                .eigenvalues()
                                                .maxCoeff()
                                          : 0.0;
        report.psd_results.push_back({label, min_eig, max_eig, pass});
        if (!pass) ok = false;
    }
    report.passed = ok;
    return report;
}

}  // namespace

CheckReport check_extension_general(const ExtendedSequence& seq, const ConstraintSet& cs,
                                    double tol, int deg_t, int deg_s) {
    std::vector<std::pair<std::string, Polynomial>> localizers;
    for (int k = 0; k < cs.m(); ++k)
        localizers.emplace_back("localizing p" + std::to_string(k + 1),
                                cs.polys()[static_cast<std::size_t>(k)]);
    return run_checks(seq, cs, localizers, CheckMode::General, tol, deg_t, deg_s);
}

CheckReport check_extension_hamburger(const ExtendedSequence& seq, double tol, int deg_t,
                                      int deg_s) {
    return run_checks(seq, ConstraintSet(seq.n()), {}, CheckMode::Hamburger, tol, deg_t, deg_s);
}

CheckReport check_extension_stieltjes(const ExtendedSequence& seq, double tol, int deg_t,
                                      int deg_s) {
    std::vector<std::pair<std::string, Polynomial>> localizers;
    for (int j = 0; j < seq.n(); ++j)
        localizers.emplace_back("localizing t" + std::to_string(j + 1),
                                Polynomial::variable(seq.n(), VarKind::Affine, j));
    return run_checks(seq, ConstraintSet(seq.n()), localizers, CheckMode::Stieltjes, tol, deg_t,
                      deg_s);
}

ExtendedSequence stieltjes_rescale(const ExtendedSequence& seq, bool inverse) {
    ExtendedSequence out(seq.n(), seq.alpha_bound(), seq.beta_bound());
    double root2 = std::sqrt(2.0);
    for (const auto& alpha : indices_up_to(seq.n(), seq.alpha_bound())) {
        double factor = std::pow(root2, inverse ? total_degree(alpha) : -total_degree(alpha));
        for (int beta = 0; beta <= seq.beta_bound(); ++beta)
            out.set(alpha, beta, seq.value(alpha, beta) * factor);
    }
    return out;
}

}  // namespace msos
