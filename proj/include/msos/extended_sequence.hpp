#pragma once

#include "msos/multi_index.hpp"
#include "msos/rational.hpp"

#include <iosfwd>
#include <map>
#include <utility>

namespace msos {

class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

std::string index_label(const MultiIndex& alpha, int beta);

// Truncated (n+1)-sequence delta_(alpha,beta), fully populated on the
// rectangle |alpha| <= A, 0 <= beta <= B. Values are kept as exact
// rationals (decimals convert exactly); doubles are derived views.
class ExtendedSequence {
public:
    ExtendedSequence(int n, int alpha_bound, int beta_bound);

    int n() const { return n_; }
    int alpha_bound() const { return alpha_bound_; }
    int beta_bound() const { return beta_bound_; }

    bool has(const MultiIndex& alpha, int beta) const;
    double value(const MultiIndex& alpha, int beta) const;           // throws DataError if absent
    const Rational& value_exact(const MultiIndex& alpha, int beta) const;
    void set(const MultiIndex& alpha, int beta, const Rational& v);
    void set(const MultiIndex& alpha, int beta, double v) { set(alpha, beta, rational_from_double(v)); }

    // Verifies the rectangle is fully populated; names the first missing index.
    void require_complete() const;

    // File format: header "n A B m", then m lines of
    // "a1 ... an beta value" with decimal or rational values.
    static ExtendedSequence load(std::istream& in);
    void save(std::ostream& out) const;

private:
    int n_, alpha_bound_, beta_bound_;
    std::map<std::pair<MultiIndex, int>, Rational> values_;
};

}  // namespace msos
