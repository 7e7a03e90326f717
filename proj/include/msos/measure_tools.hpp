#pragma once

#include "msos/constraint_set.hpp"
#include "msos/embedding.hpp"
#include "msos/extended_sequence.hpp"

#include <iosfwd>
#include <vector>

namespace msos {

struct Atom {
    std::vector<Rational> point;
    Rational weight;
};

// Finitely many atoms with strictly positive weights; the exact ground
// truth behind the moment checkers.
class AtomicMeasure {
public:
    AtomicMeasure(int n, std::vector<Atom> atoms);

    int n() const { return n_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    std::vector<double> point_d(std::size_t i) const;

    // Atoms file: header "n m", then one line per atom: n coordinates
    // followed by the weight (decimal or rational tokens).
    static AtomicMeasure load(std::istream& in);
    void save(std::ostream& out) const;

private:
    int n_;
    std::vector<Atom> atoms_;
};

// An atom on the set H = {x_00 = 0, |x| = 1, x_pp >= 0, x_pq x_rs = x_pr x_qs};
// validated at construction.
class HAtom {
public:
    HAtom(EmbeddedPoint point, double weight);
    // Skips validation; for fault-injection tests only.
    static HAtom unvalidated(EmbeddedPoint point, double weight);

    const EmbeddedPoint& point() const { return point_; }
    double weight() const { return weight_; }

private:
    HAtom() = default;
    EmbeddedPoint point_;
    double weight_ = 0.0;
};

// delta_(alpha,beta) = sum_i w_i t_i^alpha theta_p(t_i)^beta, exact.
ExtendedSequence moments_from_atoms(const AtomicMeasure& mu, const ConstraintSet& cs, int A,
                                    int B);

// true iff p_k(t_i) >= -tol for every atom and constraint
bool support_test(const AtomicMeasure& mu, const ConstraintSet& cs, double tol);

// Membership in H within tol; optionally names the violated relation.
bool h_set_test(const EmbeddedPoint& x, double tol, std::string* why = nullptr);

// Lambda(P) = sum_i w_i P(Phi(t_i)) + sum_j v_j P(x_j) for P over the
// N = (n+1)^2 embedded coordinates.
double mixed_functional(const AtomicMeasure& mu, const std::vector<HAtom>& nu,
                        const Polynomial& P);

// Gram matrix of the functional on embedded monomials of degree <= max_deg,
// then an eigenvalue test.
std::pair<bool, double> functional_psd_check(const AtomicMeasure& mu,
                                             const std::vector<HAtom>& nu, int max_deg,
                                             double tol);

// H-atoms file: header "n", then one line per atom: (n+1)^2 entries
// row-major followed by the weight.
std::vector<HAtom> load_h_atoms(std::istream& in);

}  // namespace msos
