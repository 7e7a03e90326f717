#include "msos/measure_tools.hpp"

#include "msos/moment_core.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace msos {

namespace {

Rational parse_token(const std::string& tok) {
    auto slash = tok.find('/');
    try {
        if (slash != std::string::npos) {
            Int den(tok.substr(slash + 1));
            if (den == 0) throw DataError("zero denominator in '" + tok + "'");
            return Rational(Int(tok.substr(0, slash))) / Rational(den);
        }
        if (tok.find_first_of(".eE") != std::string::npos)
            return rational_from_double(std::stod(tok));
        return Rational(Int(tok));
    } catch (const DataError&) {
        throw;
    } catch (const std::exception&) {
        throw DataError("malformed value '" + tok + "'");
    }
}

}  // namespace

AtomicMeasure::AtomicMeasure(int n, std::vector<Atom> atoms) : n_(n), atoms_(std::move(atoms)) {
    if (n < 1) throw std::invalid_argument("AtomicMeasure: n must be >= 1");
    for (const auto& a : atoms_) {
        if (static_cast<int>(a.point.size()) != n_)
            throw std::invalid_argument("AtomicMeasure: atom arity mismatch");
        if (!(a.weight > 0)) throw std::invalid_argument("AtomicMeasure: weights must be positive");
    }
}

std::vector<double> AtomicMeasure::point_d(std::size_t i) const {
    std::vector<double> p;
    p.reserve(atoms_[i].point.size());
    for (const auto& c : atoms_[i].point) p.push_back(to_double(c));
    return p;
}

AtomicMeasure AtomicMeasure::load(std::istream& in) {
    int n = 0;
    long long m = -1;
    if (!(in >> n >> m)) throw DataError("atoms file: malformed header");
    std::vector<Atom> atoms;
    for (long long i = 0; i < m; ++i) {
        Atom a;
        a.point.resize(static_cast<std::size_t>(n));
        std::string tok;
        for (int j = 0; j < n; ++j) {
            if (!(in >> tok)) throw DataError("atoms file: truncated atom " + std::to_string(i + 1));
            a.point[static_cast<std::size_t>(j)] = parse_token(tok);
        }
        if (!(in >> tok)) throw DataError("atoms file: truncated atom " + std::to_string(i + 1));
        a.weight = parse_token(tok);
        atoms.push_back(std::move(a));
    }
    try {
        return AtomicMeasure(n, std::move(atoms));
    } catch (const std::invalid_argument& e) {
        throw DataError(std::string("atoms file: ") + e.what());
    }
}

void AtomicMeasure::save(std::ostream& out) const {
    out << n_ << " " << atoms_.size() << "\n";
    for (const auto& a : atoms_) {
        for (const auto& c : a.point) out << c.str() << " ";
        out << a.weight.str() << "\n";
    }
}

HAtom::HAtom(EmbeddedPoint point, double weight) {
    std::string why;
    if (!h_set_test(point, 1e-12, &why))
        throw std::invalid_argument("HAtom: point not in H: " + why);
    if (!(weight > 0)) throw std::invalid_argument("HAtom: weight must be positive");
    point_ = std::move(point);
    weight_ = weight;
}

HAtom HAtom::unvalidated(EmbeddedPoint point, double weight) {
    HAtom a;
    a.point_ = std::move(point);
    a.weight_ = weight;
    return a;
}

ExtendedSequence moments_from_atoms(const AtomicMeasure& mu, const ConstraintSet& cs, int A,
                                    int B) {
    if (mu.n() != cs.n()) throw std::invalid_argument("moments_from_atoms: arity mismatch");
    ExtendedSequence seq(mu.n(), A, B);
    std::vector<Rational> thetas;
    for (const auto& a : mu.atoms()) thetas.push_back(cs.theta_exact(a.point));
    for (const auto& alpha : indices_up_to(mu.n(), A)) {
        std::vector<Rational> powers;  // t_i^alpha per atom
        for (const auto& a : mu.atoms()) {
            Rational prod(1);
            for (std::size_t j = 0; j < alpha.size(); ++j)
                for (int e = 0; e < alpha[j]; ++e) prod *= a.point[j];
            powers.push_back(prod);
        }
        for (int beta = 0; beta <= B; ++beta) {
            Rational sum(0);
            for (std::size_t i = 0; i < mu.atoms().size(); ++i)
                sum += mu.atoms()[i].weight * powers[i];
            seq.set(alpha, beta, sum);
            for (std::size_t i = 0; i < powers.size(); ++i) powers[i] *= thetas[i];
        }
    }
    return seq;
}

bool support_test(const AtomicMeasure& mu, const ConstraintSet& cs, double tol) {
    for (const auto& p : cs.polys()) {
        for (const auto& a : mu.atoms()) {
            if (to_double(p.eval_exact(a.point)) < -tol) return false;
        }
    }
    return true;
}

bool h_set_test(const EmbeddedPoint& x, double tol, std::string* why) {
    const auto& c = x.coords;
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (std::abs(c(0, 0)) > tol) return fail("x_00 != 0");
    double norm2 = 0.0;
    for (int p = 0; p <= x.n; ++p)
        for (int q = 0; q <= x.n; ++q) norm2 += c(p, q) * c(p, q);
    if (std::abs(norm2 - 1.0) > tol) return fail("|x| != 1");
    for (int p = 0; p <= x.n; ++p) {
        if (c(p, p) < -tol) return fail("x_" + std::to_string(p) + std::to_string(p) + " < 0");
        for (int q = 0; q <= x.n; ++q)
            if (std::abs(c(p, q) - c(q, p)) > tol) return fail("x_pq != x_qp");
    }
    for (int p = 0; p <= x.n; ++p)
        for (int q = 0; q <= x.n; ++q)
            for (int r = 0; r <= x.n; ++r)
                for (int s = 0; s <= x.n; ++s)
                    if (std::abs(c(p, q) * c(r, s) - c(p, r) * c(q, s)) > tol)
                        return fail("x_pq*x_rs != x_pr*x_qs at (" + std::to_string(p) + "," +
                                    std::to_string(q) + "," + std::to_string(r) + "," +
                                    std::to_string(s) + ")");
    return true;
}

double mixed_functional(const AtomicMeasure& mu, const std::vector<HAtom>& nu,
                        const Polynomial& P) {
    if (P.kind() != VarKind::Embedded)
        throw std::invalid_argument("mixed_functional: embedded-coordinate polynomial required");
    if (P.n() != mu.n()) throw std::invalid_argument("mixed_functional: arity mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < mu.atoms().size(); ++i) {
        EmbeddedPoint phi = phi_map(mu.point_d(i));
        sum += to_double(mu.atoms()[i].weight) * P.eval(phi.flat());
    }
    for (const auto& atom : nu) {
        if (atom.point().n != mu.n())
            throw std::invalid_argument("mixed_functional: H-atom arity mismatch");
        sum += atom.weight() * P.eval(atom.point().flat());
    }
    return sum;
}

std::pair<bool, double> functional_psd_check(const AtomicMeasure& mu,
                                             const std::vector<HAtom>& nu, int max_deg,
                                             double tol) {
    int n = mu.n();
    int N = (n + 1) * (n + 1);
    auto basis = indices_up_to(N, max_deg);
    auto sz = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd G(sz, sz);
    for (Eigen::Index i = 0; i < sz; ++i) {
        for (Eigen::Index j = i; j < sz; ++j) {
            MultiIndex prod = index_sum(basis[static_cast<std::size_t>(i)],
                                        basis[static_cast<std::size_t>(j)]);
            Polynomial mono = Polynomial::monomial(n, VarKind::Embedded, prod, Rational(1));
            G(i, j) = G(j, i) = mixed_functional(mu, nu, mono);
        }
    }
    return psd_test(G, tol);
}

std::vector<HAtom> load_h_atoms(std::istream& in) {
    int n = 0;
    if (!(in >> n)) throw DataError("h-atoms file: malformed header");
    std::vector<HAtom> atoms;
    std::string tok;
    while (in >> tok) {
        EmbeddedPoint x{n, Eigen::MatrixXd(n + 1, n + 1)};
        x.coords(0, 0) = to_double(parse_token(tok));
        for (int k = 1; k < (n + 1) * (n + 1); ++k) {
            if (!(in >> tok)) throw DataError("h-atoms file: truncated atom");
            x.coords(k / (n + 1), k % (n + 1)) = to_double(parse_token(tok));
        }
        if (!(in >> tok)) throw DataError("h-atoms file: missing weight");
        double w = to_double(parse_token(tok));
        try {
            atoms.emplace_back(std::move(x), w);
        } catch (const std::invalid_argument& e) {
            throw DataError(std::string("h-atoms file: ") + e.what());
        }
    }
    return atoms;
}

}  // namespace msos
