#include "msos/sos_engine.hpp"

#include "msos/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>

namespace msos {

namespace {

int half_rounded_up(int deg) { return (deg + 1) / 2; }

std::vector<MultiIndex> radical_basis(int n, int max_deg) {
    std::vector<MultiIndex> out;
    for (const auto& idx : indices_up_to(n + 1, max_deg)) {
        if (idx.back() <= 1) out.push_back(idx);
    }
    return out;
}

std::vector<MultiIndex> affine_basis(int n, int max_deg) { return indices_up_to(n, max_deg); }

}  // namespace

GramProblem build_gram_problem(const Polynomial& p, const ConstraintSet& cs, int b,
                               bool radical) {
    if (p.kind() != VarKind::Affine || p.n() != cs.n())
        throw std::invalid_argument("build_gram_problem: affine polynomial over the constraint arity required");
    if (p.is_zero()) throw std::invalid_argument("build_gram_problem: zero polynomial");
    if (b < 0) throw std::invalid_argument("build_gram_problem: b must be >= 0");

    int deg_p = *p.degree();
    if (!radical && deg_p % 2 != 0)
        throw ParityError("non-radical mode requires even deg(p); got " + std::to_string(deg_p));
    for (int k = 0; k < cs.m(); ++k) {
        const auto& pk = cs.polys()[static_cast<std::size_t>(k)];
        if (pk.is_zero()) throw std::invalid_argument("build_gram_problem: zero constraint polynomial");
        if (!radical && *pk.degree() % 2 != 0)
            throw ParityError("non-radical mode requires even deg(p_k); constraint " +
                              std::to_string(k + 1) + " has degree " + std::to_string(*pk.degree()));
    }

    GramProblem prob;
    prob.n = cs.n();
    prob.radical = radical;
    prob.b = b;

    int n = cs.n();
    int d = half_rounded_up(deg_p);
    int delta_exp = radical ? b : 2 * b;
    Polynomial target_aff = delta_power(n, delta_exp) * p;
    VarKind work = radical ? VarKind::Radical : VarKind::Affine;
    prob.target = radical ? lift_affine(target_aff, VarKind::Radical) : target_aff;

    int plain_budget = radical ? b + d : 2 * b + d;
    auto make_basis = [&](int budget) {
        return radical ? radical_basis(n, budget) : affine_basis(n, budget);
    };

    Polynomial one = Polynomial::constant(n, work, 1);
    prob.blocks.push_back({"sos", one, make_basis(plain_budget), -1, false});
    if (radical) {
        Polynomial u = Polynomial::variable(n, VarKind::Radical, n);
        prob.blocks.push_back({"sos.u", u, make_basis(plain_budget), -1, true});
    }
    for (int k = 0; k < cs.m(); ++k) {
        const auto& pk = cs.polys()[static_cast<std::size_t>(k)];
        int dk = half_rounded_up(*pk.degree());
        int budget = plain_budget - dk;
        std::string label = "p" + std::to_string(k + 1);
        if (budget < 0) {
            prob.warnings.push_back("constraint " + label +
                                    " omitted: degree exceeds the b=" + std::to_string(b) +
                                    " budget");
            continue;
        }
        Polynomial mult = radical ? lift_affine(pk, VarKind::Radical) : pk;
        prob.blocks.push_back({label, mult, make_basis(budget), k, false});
        if (radical) {
            Polynomial u = Polynomial::variable(n, VarKind::Radical, n);
            prob.blocks.push_back({label + ".u", mult * u, make_basis(budget), k, true});
        }
    }

    // coefficient-matching equations over every monomial either side touches
    std::map<MultiIndex, GramEquation, GradedLexLess> eqs;
    for (int bi = 0; bi < static_cast<int>(prob.blocks.size()); ++bi) {
        const auto& block = prob.blocks[static_cast<std::size_t>(bi)];
        auto sz = static_cast<int>(block.basis.size());
        for (int i = 0; i < sz; ++i) {
            for (int j = i; j < sz; ++j) {
                MultiIndex pair_idx = index_sum(block.basis[static_cast<std::size_t>(i)],
                                                block.basis[static_cast<std::size_t>(j)]);
                Polynomial prod =
                    block.multiplier * Polynomial::monomial(n, work, pair_idx, Rational(1));
                if (radical) prod = radical_reduce(prod);
                for (const auto& [mono, c] : prod.terms()) {
                    auto& eq = eqs[mono];
                    eq.monomial = mono;
                    eq.entries.push_back({bi, i, j, to_double(c) * (i == j ? 1.0 : 2.0)});
                }
            }
        }
    }
    for (const auto& [mono, c] : prob.target.terms()) {
        auto& eq = eqs[mono];
        eq.monomial = mono;
        eq.rhs = to_double(c);
    }
    for (auto& [mono, eq] : eqs) {
        if (eq.entries.empty()) {
            if (eq.rhs != 0.0) {
                prob.trivially_infeasible = true;
                prob.infeasible_reason =
                    "target monomial " +
                    Polynomial::monomial(n, work, mono, Rational(1)).str() +
                    " has no matching Gram entries";
            }
            continue;  // nothing to enforce
        }
        prob.equations.push_back(std::move(eq));
    }
    return prob;
}

namespace {

struct AffineProjector {
    // stacked equations over the block-diagonal symmetric space
    const GramProblem& prob;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> normal;

    explicit AffineProjector(const GramProblem& p) : prob(p) {
        auto E = static_cast<Eigen::Index>(p.equations.size());
        Eigen::MatrixXd K = Eigen::MatrixXd::Zero(E, E);
        // group entries per Gram cell so K = sum over cells of outer products
        std::map<std::tuple<int, int, int>, std::vector<std::pair<Eigen::Index, double>>> cells;
        for (Eigen::Index e = 0; e < E; ++e) {
            for (const auto& en : p.equations[static_cast<std::size_t>(e)].entries) {
                double v = en.i == en.j ? en.coeff : en.coeff / 2.0;
                cells[{en.block, en.i, en.j}].emplace_back(e, v);
            }
        }
        for (const auto& [cell, list] : cells) {
            double w = std::get<1>(cell) == std::get<2>(cell) ? 1.0 : 2.0;
            for (const auto& [e, ve] : list)
                for (const auto& [f, vf] : list) K(e, f) += w * ve * vf;
        }
        normal.compute(K);
    }

    Eigen::VectorXd residual(const std::vector<Eigen::MatrixXd>& X) const {
        auto E = static_cast<Eigen::Index>(prob.equations.size());
        Eigen::VectorXd r(E);
        for (Eigen::Index e = 0; e < E; ++e) {
            const auto& eq = prob.equations[static_cast<std::size_t>(e)];
            double sum = 0.0;
            for (const auto& en : eq.entries)
                sum += en.coeff * X[static_cast<std::size_t>(en.block)](en.i, en.j);
            r(e) = sum - eq.rhs;
        }
        return r;
    }

    void project(std::vector<Eigen::MatrixXd>& X) const {
        Eigen::VectorXd lambda = normal.solve(residual(X));
        for (std::size_t e = 0; e < prob.equations.size(); ++e) {
            double l = lambda(static_cast<Eigen::Index>(e));
            if (l == 0.0) continue;
            for (const auto& en : prob.equations[e].entries) {
                double v = en.i == en.j ? en.coeff : en.coeff / 2.0;
                auto& M = X[static_cast<std::size_t>(en.block)];
                M(en.i, en.j) -= l * v;
                if (en.i != en.j) M(en.j, en.i) = M(en.i, en.j);
            }
        }
    }
};

}  // namespace

GramSolution solve_feasibility(const GramProblem& prob, const SolveOptions& opts) {
    GramSolution sol;
    if (prob.trivially_infeasible) {
        sol.status = SolveStatus::TriviallyInfeasible;
        sol.message = prob.infeasible_reason;
        return sol;
    }

    std::size_t nblocks = prob.blocks.size();
    std::vector<Eigen::MatrixXd> X(nblocks), P(nblocks), Q(nblocks);
    for (std::size_t i = 0; i < nblocks; ++i) {
        auto sz = static_cast<Eigen::Index>(prob.blocks[i].basis.size());
        X[i] = Eigen::MatrixXd::Zero(sz, sz);
        P[i] = Eigen::MatrixXd::Zero(sz, sz);
        Q[i] = Eigen::MatrixXd::Zero(sz, sz);
    }
    AffineProjector affine(prob);

    std::vector<Eigen::MatrixXd> Y(nblocks), best_Y;
    std::vector<double> min_eigs(nblocks, 0.0), best_eigs;
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_hist;
    best_hist.reserve(static_cast<std::size_t>(opts.max_iters));

    for (long it = 1; it <= opts.max_iters; ++it) {
        // PSD projection of X + P, per block
        for (std::size_t i = 0; i < nblocks; ++i) {
            Eigen::MatrixXd T = X[i] + P[i];
            if (!T.allFinite())
                throw std::runtime_error("solve_feasibility: non-finite iterate at iteration " +
                                         std::to_string(it));
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
            min_eigs[i] = es.eigenvalues().size() ? es.eigenvalues().minCoeff() : 0.0;
            Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
            Y[i] = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
            Y[i] = 0.5 * (Y[i] + Y[i].transpose());
            P[i] = T - Y[i];
        }
        double res = affine.residual(Y).cwiseAbs().maxCoeff();
        if (res < best) {
            best = res;
            best_Y = Y;
            best_eigs = min_eigs;
        }
        best_hist.push_back(best);
        sol.iterations = it;
        if (res <= opts.feas_tol) {
            sol.status = SolveStatus::Feasible;
            sol.matrices = Y;
            sol.affine_residual = res;
            sol.min_eigs = min_eigs;
            return sol;
        }
        if (it > opts.stall_window) {
            double before = best_hist[static_cast<std::size_t>(it - 1 - opts.stall_window)];
            if (before - best < opts.stall_ratio * before) {
                sol.status = SolveStatus::Stalled;
                sol.matrices = best_Y;
                sol.affine_residual = best;
                sol.min_eigs = best_eigs;
                sol.message = "stalled: relative residual improvement below " +
                              std::to_string(opts.stall_ratio) + " over " +
                              std::to_string(opts.stall_window) + " iterations";
                return sol;
            }
        }
        // affine projection of Y + Q
        for (std::size_t i = 0; i < nblocks; ++i) X[i] = Y[i] + Q[i];
        affine.project(X);
        for (std::size_t i = 0; i < nblocks; ++i) Q[i] = Y[i] + Q[i] - X[i];
    }
    sol.status = SolveStatus::Stalled;
    sol.matrices = best_Y;
    sol.affine_residual = best;
    sol.min_eigs = best_eigs;
    sol.message = "iteration limit reached";
    return sol;
}

std::vector<Polynomial> extract_squares(const Eigen::MatrixXd& G,
                                        const std::vector<MultiIndex>& basis, int n,
                                        VarKind kind, double rank_tol) {
    if (G.rows() != static_cast<Eigen::Index>(basis.size()))
        throw std::invalid_argument("extract_squares: basis/matrix size mismatch");
    std::vector<Polynomial> out;
    if (G.rows() == 0) return out;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    double max_eig = std::max(es.eigenvalues().maxCoeff(), 0.0);
    if (es.eigenvalues().minCoeff() < -rank_tol * std::max(1.0, max_eig))
        throw std::invalid_argument("extract_squares: significantly indefinite input");
    for (Eigen::Index i = es.eigenvalues().size() - 1; i >= 0; --i) {
        double lambda = es.eigenvalues()(i);
        if (lambda <= rank_tol * max_eig || lambda <= 0.0) continue;
        double scale = std::sqrt(lambda);
        Polynomial q(n, kind);
        for (Eigen::Index j = 0; j < G.rows(); ++j) {
            double c = scale * es.eigenvectors()(j, i);
            if (c != 0.0)
                q.add_term(basis[static_cast<std::size_t>(j)], rational_from_double(c));
        }
        if (!q.is_zero()) out.push_back(std::move(q));
    }
    return out;
}

namespace {

SOSCertificate certificate_from_solution(const GramProblem& prob, const GramSolution& sol,
                                         const ConstraintSet& cs, double rank_tol) {
    SOSCertificate cert;
    cert.n = prob.n;
    cert.b = prob.b;
    cert.radical = prob.radical;
    cert.multiplier_squares.resize(static_cast<std::size_t>(cs.m()));
    cert.radical_multiplier.resize(prob.radical ? static_cast<std::size_t>(cs.m()) : 0);
    VarKind work = prob.radical ? VarKind::Radical : VarKind::Affine;
    for (std::size_t bi = 0; bi < prob.blocks.size(); ++bi) {
        const auto& block = prob.blocks[bi];
        auto squares = extract_squares(sol.matrices[bi], block.basis, prob.n, work, rank_tol);
        if (block.constraint_index < 0) {
            auto& dst = block.u_weighted ? cert.radical_plain : cert.plain_squares;
            for (auto& q : squares) dst.push_back(std::move(q));
        } else {
            auto k = static_cast<std::size_t>(block.constraint_index);
            auto& dst = block.u_weighted ? cert.radical_multiplier[k] : cert.multiplier_squares[k];
            for (auto& q : squares) dst.push_back(std::move(q));
        }
    }
    return cert;
}

// Warn-only positivity sampling of the homogenized hypothesis on the sphere.
std::vector<std::string> hypothesis_warnings(const Polynomial& p, const ConstraintSet& cs,
                                             int samples, unsigned seed) {
    std::vector<std::string> out;
    if (samples <= 0) return out;
    int n = p.n();
    auto P = homogenize(p, *p.degree());
    std::vector<HomogeneousPolynomial> Pk;
    for (const auto& pk : cs.polys()) Pk.push_back(homogenize(pk, *pk.degree()));
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    int violations = 0;
    std::string example;
    for (int s = 0; s < samples; ++s) {
        std::vector<double> x(static_cast<std::size_t>(n + 1));
        double norm = 0.0;
        for (auto& v : x) {
            v = gauss(rng);
            norm += v * v;
        }
        norm = std::sqrt(norm);
        if (norm < 1e-12) continue;
        for (auto& v : x) v /= norm;
        bool in_set = true;
        for (const auto& Q : Pk)
            if (Q.eval(x) < 0) {
                in_set = false;
                break;
            }
        if (!in_set) continue;
        if (P.eval(x) <= 0) {
            ++violations;
            if (example.empty()) {
                std::ostringstream os;
                os << "(";
                for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
                os << ")";
                example = os.str();
            }
        }
    }
    if (violations > 0)
        out.push_back("positivity hypothesis violated at " + std::to_string(violations) + " of " +
                      std::to_string(samples) + " sphere samples, e.g. x=" + example +
                      "; a certificate may not exist");
    return out;
}

DecomposeResult run_decompose(const Polynomial& p, const ConstraintSet& cs,
                              const DecomposeOptions& opts, bool radical) {
    if (p.kind() != VarKind::Affine || p.n() != cs.n())
        throw std::invalid_argument("decompose: affine polynomial over the constraint arity required");
    if (p.is_zero()) throw std::invalid_argument("decompose: zero polynomial");

    DecomposeResult result;
    result.warnings = hypothesis_warnings(p, cs, opts.hypothesis_samples, opts.rng_seed);

    for (int b = 0; b <= opts.b_max; ++b) {
        GramProblem prob = build_gram_problem(p, cs, b, radical);
        if (b == 0)
            for (const auto& w : prob.warnings) result.warnings.push_back(w);
        if (prob.trivially_infeasible) {
            result.attempts.push_back(
                {b, SolveStatus::TriviallyInfeasible, 0.0, 0, -1.0, prob.infeasible_reason});
            continue;
        }
        GramSolution sol = solve_feasibility(prob, opts.solve);
        if (sol.status != SolveStatus::Feasible) {
            result.attempts.push_back(
                {b, sol.status, sol.affine_residual, sol.iterations, -1.0, sol.message});
            continue;
        }
        SOSCertificate cert = certificate_from_solution(prob, sol, cs, opts.rank_tol);
        VerifyReport rep = verify(cert, p, cs, opts.verify_tol);
        result.attempts.push_back({b, sol.status, sol.affine_residual, sol.iterations,
                                   rep.max_coeff_error, ""});
        if (rep.pass) {
            result.certificate = std::move(cert);
            return result;
        }
        // one retry at a tighter feasibility target before escalating b
        SolveOptions tight = opts.solve;
        tight.feas_tol = std::min(opts.solve.feas_tol, opts.verify_tol * 0.05);
        tight.max_iters = opts.solve.max_iters * 3;
        sol = solve_feasibility(prob, tight);
        if (sol.status == SolveStatus::Feasible) {
            cert = certificate_from_solution(prob, sol, cs, opts.rank_tol);
            rep = verify(cert, p, cs, opts.verify_tol);
            result.attempts.push_back({b, sol.status, sol.affine_residual, sol.iterations,
                                       rep.max_coeff_error, "tightened"});
            if (rep.pass) {
                result.certificate = std::move(cert);
                return result;
            }
        } else {
            result.attempts.push_back(
                {b, sol.status, sol.affine_residual, sol.iterations, -1.0, "tightened: " + sol.message});
        }
    }
    return result;
}

}  // namespace

DecomposeResult decompose(const Polynomial& p, const ConstraintSet& cs,
                          const DecomposeOptions& opts) {
    return run_decompose(p, cs, opts, false);
}

DecomposeResult decompose_sqrt(const Polynomial& p, const ConstraintSet& cs,
                               const DecomposeOptions& opts) {
    return run_decompose(p, cs, opts, true);
}

}  // namespace msos
