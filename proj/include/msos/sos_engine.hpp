#pragma once

#include "msos/constraint_set.hpp"
#include "msos/polynomial.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace msos {

class ParityError : public std::invalid_argument {
public:
    explicit ParityError(const std::string& msg) : std::invalid_argument(msg) {}
};

// One PSD unknown: the Gram matrix of the squares multiplied by `multiplier`
// over the monomial `basis`.
struct GramBlock {
    std::string label;
    Polynomial multiplier;          // working-kind polynomial (1, p_k, u, p_k*u)
    std::vector<MultiIndex> basis;  // working-kind monomials
    int constraint_index = -1;      // -1 for plain blocks
    bool u_weighted = false;
};

// Affine equation: sum over entries coeff * G_block[i][j] = rhs, one per
// monomial of the ambient space. Off-diagonal coefficients already count
// both (i,j) and (j,i).
struct GramEquation {
    struct Entry {
        int block, i, j;
        double coeff;
    };
    MultiIndex monomial;
    double rhs = 0.0;
    std::vector<Entry> entries;
};

struct GramProblem {
    int n = 1;
    bool radical = false;
    int b = 0;
    Polynomial target;  // Delta^{2b} * p, or Delta^b * p in radical mode
    std::vector<GramBlock> blocks;
    std::vector<GramEquation> equations;
    bool trivially_infeasible = false;
    std::string infeasible_reason;
    std::vector<std::string> warnings;
};

enum class SolveStatus { Feasible, Stalled, TriviallyInfeasible };

struct GramSolution {
    SolveStatus status = SolveStatus::Stalled;
    std::vector<Eigen::MatrixXd> matrices;  // per block; PSD when feasible
    double affine_residual = 0.0;           // max equation violation
    std::vector<double> min_eigs;           // per block, of the affine-projected iterate
    long iterations = 0;
    std::string message;
};

struct SolveOptions {
    long max_iters = 20000;
    double feas_tol = 1e-6;
    double psd_tol = 1e-9;
    int stall_window = 100;
    double stall_ratio = 1e-3;
};

// Certificate of Delta^{2b} p = sum q_l^2 + sum_k p_k sum_l q_kl^2, or the
// radical variant Delta^b p = sum [q_l^2 + u r_l^2] + sum_k p_k [...] with
// u^2 = Delta.
struct SOSCertificate {
    int n = 1;
    int b = 0;
    bool radical = false;
    std::vector<Polynomial> plain_squares;
    std::vector<std::vector<Polynomial>> multiplier_squares;
    std::vector<Polynomial> radical_plain;
    std::vector<std::vector<Polynomial>> radical_multiplier;
};

// Basis degrees: with 2d = deg(p) and 2d_k = deg(p_k), both rounded up to
// even, the plain block carries monomials of degree <= 2b+d and the p_k
// block degree <= 2b+d-d_k (radical mode: b+d and b+d-d_k over (t,u) with
// u-degree <= 1). Multiplier blocks whose budget is negative are omitted
// with a warning.
GramProblem build_gram_problem(const Polynomial& p, const ConstraintSet& cs, int b, bool radical);

// Alternating projections between the affine coefficient-matching subspace
// and the product of PSD cones, with Dykstra correction terms. Feasibility
// is declared on a PSD iterate whose affine residual passes; a stall is
// evidence, not proof, of infeasibility at this b.
GramSolution solve_feasibility(const GramProblem& prob, const SolveOptions& opts);

// Eigen-factorization of a PSD matrix into square generators over the basis.
std::vector<Polynomial> extract_squares(const Eigen::MatrixXd& G,
                                        const std::vector<MultiIndex>& basis, int n,
                                        VarKind kind, double rank_tol);

struct DecomposeOptions {
    int b_max = 6;
    SolveOptions solve;
    double verify_tol = 1e-8;
    double rank_tol = 1e-12;
    int hypothesis_samples = 400;
    unsigned rng_seed = 0x5eed;
};

struct BAttempt {
    int b = 0;
    SolveStatus status = SolveStatus::Stalled;
    double affine_residual = 0.0;
    long iterations = 0;
    double verify_error = -1.0;  // < 0 when no certificate was extracted
    std::string note;
};

struct DecomposeResult {
    std::optional<SOSCertificate> certificate;
    std::vector<BAttempt> attempts;
    std::vector<std::string> warnings;
};

// Escalates b = 0..b_max and returns the first certificate that passes
// independent verification at opts.verify_tol. Requires even degrees in
// non-radical mode.
DecomposeResult decompose(const Polynomial& p, const ConstraintSet& cs,
                          const DecomposeOptions& opts);

// Thm-4.5-style search in the quotient ring u^2 = Delta; handles odd degrees.
DecomposeResult decompose_sqrt(const Polynomial& p, const ConstraintSet& cs,
                               const DecomposeOptions& opts);

}  // namespace msos
