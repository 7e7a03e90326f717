#pragma once

#include "msos/constraint_set.hpp"
#include "msos/extended_sequence.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace msos {

// Gram matrix of the sequence functional on a labelled monomial basis
// t^alpha s^beta.
struct LabeledMatrix {
    std::vector<std::pair<MultiIndex, int>> basis;
    Eigen::MatrixXd entries;
};

struct PsdResult {
    std::string label;
    double min_eig = 0.0;
    double max_eig = 0.0;
    bool pass = false;
};

struct RecurrenceViolation {
    MultiIndex alpha;
    int beta = 0;
    double lhs = 0.0, rhs = 0.0, diff = 0.0;
};

enum class CheckMode { General, Hamburger, Stieltjes };

struct CheckReport {
    bool passed = false;
    CheckMode mode = CheckMode::General;
    std::vector<RecurrenceViolation> recurrence_violations;
    std::vector<PsdResult> psd_results;
    std::vector<std::string> warnings;
};

// pass iff min eigenvalue >= -tol * max(1, max eigenvalue)
std::pair<bool, double> psd_test(const Eigen::MatrixXd& M, double tol);

// Basis: all (alpha,beta) with |alpha| <= deg_t, beta <= deg_s; entry
// [(a,b),(a',b')] = delta_(a+a', b+b').
LabeledMatrix moment_matrix(const ExtendedSequence& seq, int deg_t, int deg_s);

// entry = sum_xi mult_xi * delta_(a+a'+xi, b+b')
LabeledMatrix localizing_matrix(const ExtendedSequence& seq, const Polynomial& mult,
                                int deg_t, int deg_s);

// delta_(a,b) = delta_(a,b+1) + sum_j delta_(a+2e_j,b+1)
//             + sum_k sum_{xi,eta} a_kxi a_keta delta_(a+xi+eta,b+1),
// checked on every index where all referenced entries exist. Violations are
// those with |lhs-rhs| > tol*(1+|lhs|); arithmetic is exact.
std::vector<RecurrenceViolation> check_recurrence(const ExtendedSequence& seq,
                                                  const ConstraintSet& cs, double tol,
                                                  std::vector<std::string>* warnings = nullptr);

CheckReport check_extension_general(const ExtendedSequence& seq, const ConstraintSet& cs,
                                    double tol, int deg_t, int deg_s);
CheckReport check_extension_hamburger(const ExtendedSequence& seq, double tol, int deg_t,
                                      int deg_s);
CheckReport check_extension_stieltjes(const ExtendedSequence& seq, double tol, int deg_t,
                                      int deg_s);

// Multiplies each entry by (sqrt 2)^{-|alpha|} (forward) or its inverse.
ExtendedSequence stieltjes_rescale(const ExtendedSequence& seq, bool inverse);

}  // namespace msos
