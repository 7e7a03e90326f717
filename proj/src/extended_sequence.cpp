#include "msos/extended_sequence.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace msos {

namespace {

Rational parse_value(const std::string& tok) {
    auto slash = tok.find('/');
    try {
        if (slash != std::string::npos) {
            Int num(tok.substr(0, slash));
            Int den(tok.substr(slash + 1));
            if (den == 0) throw DataError("zero denominator in value '" + tok + "'");
            return Rational(num) / Rational(den);
        }
        if (tok.find('.') != std::string::npos || tok.find('e') != std::string::npos ||
            tok.find('E') != std::string::npos) {
            return rational_from_double(std::stod(tok));
        }
        return Rational(Int(tok));
    } catch (const DataError&) {
        throw;
    } catch (const std::exception&) {
        throw DataError("malformed value '" + tok + "'");
    }
}

}  // namespace

std::string index_label(const MultiIndex& alpha, int beta) {
    std::string s = "(";
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(alpha[i]);
    }
    s += ";" + std::to_string(beta) + ")";
    return s;
}

ExtendedSequence::ExtendedSequence(int n, int alpha_bound, int beta_bound)
    : n_(n), alpha_bound_(alpha_bound), beta_bound_(beta_bound) {
    if (n < 1 || alpha_bound < 0 || beta_bound < 0)
        throw std::invalid_argument("ExtendedSequence: bad bounds");
}

bool ExtendedSequence::has(const MultiIndex& alpha, int beta) const {
    return values_.count({alpha, beta}) > 0;
}

double ExtendedSequence::value(const MultiIndex& alpha, int beta) const {
    return to_double(value_exact(alpha, beta));
}

const Rational& ExtendedSequence::value_exact(const MultiIndex& alpha, int beta) const {
    auto it = values_.find({alpha, beta});
    if (it == values_.end())
        throw DataError("sequence entry " + index_label(alpha, beta) + " is missing");
    return it->second;
}

void ExtendedSequence::set(const MultiIndex& alpha, int beta, const Rational& v) {
    if (static_cast<int>(alpha.size()) != n_)
        throw std::invalid_argument("ExtendedSequence::set: alpha arity mismatch");
    if (total_degree(alpha) > alpha_bound_ || beta < 0 || beta > beta_bound_)
        throw std::invalid_argument("ExtendedSequence::set: index outside rectangle " +
                                    index_label(alpha, beta));
    values_[{alpha, beta}] = v;
}

void ExtendedSequence::require_complete() const {
    for (const auto& alpha : indices_up_to(n_, alpha_bound_)) {
        for (int beta = 0; beta <= beta_bound_; ++beta) {
            if (!has(alpha, beta))
                throw DataError("sequence entry " + index_label(alpha, beta) + " is missing");
        }
    }
}

ExtendedSequence ExtendedSequence::load(std::istream& in) {
    int n = 0, A = -1, B = -1;
    long long m = -1;
    if (!(in >> n >> A >> B >> m)) throw DataError("sequence file: malformed header");
    ExtendedSequence seq(n, A, B);
    for (long long line = 0; line < m; ++line) {
        MultiIndex alpha(static_cast<std::size_t>(n), 0);
        for (int j = 0; j < n; ++j) {
            if (!(in >> alpha[static_cast<std::size_t>(j)]))
                throw DataError("sequence file: truncated entry " + std::to_string(line + 1));
        }
        int beta = 0;
        std::string tok;
        if (!(in >> beta >> tok))
            throw DataError("sequence file: truncated entry " + std::to_string(line + 1));
        try {
            seq.set(alpha, beta, parse_value(tok));
        } catch (const std::invalid_argument& e) {
            throw DataError(std::string("sequence file: ") + e.what());
        }
    }
    seq.require_complete();
    if (!(seq.value_exact(MultiIndex(static_cast<std::size_t>(n), 0), 0) > 0))
        throw DataError("sequence file: delta_(0,0) must be positive");
    return seq;
}

void ExtendedSequence::save(std::ostream& out) const {
    require_complete();
    auto alphas = indices_up_to(n_, alpha_bound_);
    out << n_ << " " << alpha_bound_ << " " << beta_bound_ << " "
        << alphas.size() * static_cast<std::size_t>(beta_bound_ + 1) << "\n";
    for (const auto& alpha : alphas) {
        for (int beta = 0; beta <= beta_bound_; ++beta) {
            for (int a : alpha) out << a << " ";
            out << beta << " " << value_exact(alpha, beta).str() << "\n";
        }
    }
}

}  // namespace msos
