#include "msos/polynomial.hpp"

#include <cctype>
#include <sstream>

namespace msos {

int slot_count(VarKind kind, int n) {
    switch (kind) {
        case VarKind::Affine: return n;
        case VarKind::Homogeneous: return n + 1;
        case VarKind::Extension: return n + 1;
        case VarKind::Radical: return n + 1;
        case VarKind::Embedded: return (n + 1) * (n + 1);
    }
    return n;
}

std::string slot_name(VarKind kind, int n, int slot) {
    switch (kind) {
        case VarKind::Affine: return "t" + std::to_string(slot + 1);
        case VarKind::Homogeneous: return "x" + std::to_string(slot);
        case VarKind::Extension: return slot == n ? "s" : "t" + std::to_string(slot + 1);
        case VarKind::Radical: return slot == n ? "u" : "t" + std::to_string(slot + 1);
        case VarKind::Embedded: {
            int p = slot / (n + 1), q = slot % (n + 1);
            return "x" + std::to_string(p) + "_" + std::to_string(q);
        }
    }
    return "?";
}

ParseError::ParseError(const std::string& msg, std::size_t pos)
    : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}

Polynomial::Polynomial(int n, VarKind kind) : n_(n), kind_(kind) {
    if (n < 1) throw std::invalid_argument("Polynomial: ambient dimension must be >= 1");
}

Polynomial Polynomial::constant(int n, VarKind kind, const Rational& c) {
    Polynomial p(n, kind);
    p.set_coeff(MultiIndex(static_cast<std::size_t>(p.slots()), 0), c);
    return p;
}

Polynomial Polynomial::monomial(int n, VarKind kind, const MultiIndex& idx, const Rational& c) {
    Polynomial p(n, kind);
    if (static_cast<int>(idx.size()) != p.slots())
        throw std::invalid_argument("Polynomial::monomial: index size mismatch");
    for (int e : idx)
        if (e < 0) throw std::invalid_argument("Polynomial::monomial: negative exponent");
    p.set_coeff(idx, c);
    return p;
}

Polynomial Polynomial::variable(int n, VarKind kind, int slot) {
    Polynomial p(n, kind);
    if (slot < 0 || slot >= p.slots()) throw std::invalid_argument("Polynomial::variable: bad slot");
    p.set_coeff(unit_index(p.slots(), slot), Rational(1));
    return p;
}

std::optional<int> Polynomial::degree() const {
    if (terms_.empty()) return std::nullopt;
    int d = 0;
    for (const auto& [idx, c] : terms_) d = std::max(d, total_degree(idx));
    return d;
}

Rational Polynomial::coeff(const MultiIndex& idx) const {
    auto it = terms_.find(idx);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::set_coeff(const MultiIndex& idx, const Rational& c) {
    if (c == 0) {
        terms_.erase(idx);
    } else {
        terms_[idx] = c;
    }
}

void Polynomial::add_term(const MultiIndex& idx, const Rational& c) {
    auto it = terms_.find(idx);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(idx, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void Polynomial::require_same_shape(const Polynomial& o) const {
    if (n_ != o.n_ || kind_ != o.kind_)
        throw std::invalid_argument("polynomial arity/kind mismatch");
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    require_same_shape(o);
    for (const auto& [idx, c] : o.terms_) add_term(idx, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    require_same_shape(o);
    for (const auto& [idx, c] : o.terms_) add_term(idx, -c);
    return *this;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r(*this);
    r += o;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r(*this);
    r -= o;
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    require_same_shape(o);
    Polynomial r(n_, kind_);
    for (const auto& [ia, ca] : terms_) {
        for (const auto& [ib, cb] : o.terms_) {
            r.add_term(index_sum(ia, ib), ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(n_, kind_);
    for (const auto& [idx, c] : terms_) r.terms_.emplace(idx, -c);
    return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial r(n_, kind_);
    if (c == 0) return r;
    for (const auto& [idx, cc] : terms_) r.terms_.emplace(idx, cc * c);
    return r;
}

Polynomial Polynomial::pow(int e) const {
    if (e < 0) throw std::invalid_argument("Polynomial::pow: negative exponent");
    Polynomial acc = Polynomial::constant(n_, kind_, 1);
    Polynomial base(*this);
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = (e >>= 1) ? base * base : base;
    }
    return acc;
}

bool Polynomial::operator==(const Polynomial& o) const {
    return n_ == o.n_ && kind_ == o.kind_ && terms_ == o.terms_;
}

double Polynomial::eval(std::span<const double> point) const {
    if (static_cast<int>(point.size()) != slots())
        throw std::invalid_argument("Polynomial::eval: point arity mismatch");
    double sum = 0.0;
    for (const auto& [idx, c] : terms_) {
        double prod = to_double(c);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            int e = idx[i];
            double base = point[i];
            while (e > 0) {
                if (e & 1) prod *= base;
                e >>= 1;
                if (e) base *= base;
            }
        }
        sum += prod;
    }
    return sum;
}

Rational Polynomial::eval_exact(std::span<const Rational> point) const {
    if (static_cast<int>(point.size()) != slots())
        throw std::invalid_argument("Polynomial::eval_exact: point arity mismatch");
    Rational sum(0);
    for (const auto& [idx, c] : terms_) {
        Rational prod = c;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            for (int e = 0; e < idx[i]; ++e) prod *= point[i];
        }
        sum += prod;
    }
    return sum;
}

std::string Polynomial::render(bool decimal) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [idx, c] : terms_) {
        bool neg = c < 0;
        Rational mag = neg ? Rational(-c) : c;
        if (first) {
            if (neg) out << "-";
        } else {
            out << (neg ? " - " : " + ");
        }
        first = false;
        std::string coeff_str = decimal ? decimal_string(to_double(mag)) : mag.str();
        bool has_vars = total_degree(idx) > 0;
        if (!has_vars) {
            out << coeff_str;
            continue;
        }
        bool wrote = false;
        if (mag != 1) {
            out << coeff_str;
            wrote = true;
        }
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] == 0) continue;
            if (wrote) out << "*";
            out << slot_name(kind_, n_, static_cast<int>(i));
            if (idx[i] > 1) out << "^" << idx[i];
            wrote = true;
        }
    }
    return out.str();
}

std::string Polynomial::str() const { return render(false); }
std::string Polynomial::str_decimal() const { return render(true); }

namespace {

// Recursive-descent parser over the raw text; whitespace skipped in place.
class Parser {
public:
    Parser(const std::string& text, int n, VarKind kind)
        : text_(text), n_(n), kind_(kind), poly_(n, kind) {}

    Polynomial run() {
        skip_ws();
        if (at_end()) throw ParseError("empty polynomial", pos_);
        bool neg = false;
        if (peek() == '+' || peek() == '-') {
            neg = peek() == '-';
            ++pos_;
        }
        parse_term(neg);
        skip_ws();
        while (!at_end()) {
            char c = peek();
            if (c != '+' && c != '-') throw ParseError("expected '+' or '-'", pos_);
            ++pos_;
            parse_term(c == '-');
            skip_ws();
        }
        return poly_;
    }

private:
    const std::string& text_;
    int n_;
    VarKind kind_;
    Polynomial poly_;
    std::size_t pos_ = 0;

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    std::string read_digits() {
        std::string s;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) s += text_[pos_++];
        return s;
    }

    // integer | integer '/' integer | decimal (optionally with exponent)
    Rational parse_coefficient() {
        std::size_t start = pos_;
        std::string ip = read_digits();
        skip_ws();
        if (!at_end() && peek() == '.') {
            ++pos_;
            std::string fp = read_digits();
            if (ip.empty() && fp.empty()) throw ParseError("malformed decimal", start);
            Int num(ip.empty() ? "0" : ip);
            for (std::size_t i = 0; i < fp.size(); ++i) num *= 10;
            if (!fp.empty()) num += Int(fp);
            Rational val(num);
            Int den(1);
            for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
            val /= Rational(den);
            skip_ws();
            if (!at_end() && (peek() == 'e' || peek() == 'E')) {
                ++pos_;
                bool eneg = false;
                if (!at_end() && (peek() == '+' || peek() == '-')) {
                    eneg = peek() == '-';
                    ++pos_;
                }
                std::string ex = read_digits();
                if (ex.empty()) throw ParseError("malformed exponent", pos_);
                Int scale(1);
                long long e = std::stoll(ex);
                for (long long i = 0; i < e; ++i) scale *= 10;
                if (eneg) val /= Rational(scale); else val *= Rational(scale);
            }
            return val;
        }
        if (ip.empty()) throw ParseError("expected coefficient", start);
        skip_ws();
        if (!at_end() && peek() == '/') {
            ++pos_;
            skip_ws();
            std::string dp = read_digits();
            if (dp.empty()) throw ParseError("expected denominator", pos_);
            Int den(dp);
            if (den == 0) throw ParseError("zero denominator", pos_);
            return Rational(Int(ip)) / Rational(den);
        }
        if (!at_end() && (peek() == 'e' || peek() == 'E')) {
            // integer with exponent, e.g. 5e2 (decimal form)
            std::size_t save = pos_;
            ++pos_;
            bool eneg = false;
            if (!at_end() && (peek() == '+' || peek() == '-')) {
                eneg = peek() == '-';
                ++pos_;
            }
            std::string ex = read_digits();
            if (ex.empty()) {
                pos_ = save;  // not an exponent; leave for variable parsing
            } else {
                Rational val((Int(ip)));
                Int scale(1);
                long long e = std::stoll(ex);
                for (long long i = 0; i < e; ++i) scale *= 10;
                if (eneg) val /= Rational(scale); else val *= Rational(scale);
                return val;
            }
        }
        return Rational(Int(ip));
    }

    // returns slot, or -1 when the cursor is not at a variable
    int parse_variable() {
        skip_ws();
        if (at_end()) return -1;
        char c = peek();
        std::size_t start = pos_;
        if (c == 's' || c == 'u') {
            bool want_s = kind_ == VarKind::Extension;
            bool want_u = kind_ == VarKind::Radical;
            if ((c == 's' && !want_s) || (c == 'u' && !want_u))
                throw ParseError(std::string("variable '") + c + "' not allowed here", start);
            ++pos_;
            return n_;
        }
        if (c == 't' || c == 'x') {
            ++pos_;
            std::string num = read_digits();
            if (num.empty()) throw ParseError("expected variable index", pos_);
            long long i = std::stoll(num);
            if (c == 't') {
                if (kind_ == VarKind::Homogeneous || kind_ == VarKind::Embedded)
                    throw ParseError("variable 't' not allowed here", start);
                if (i < 1 || i > n_) throw ParseError("variable index out of range", start);
                return static_cast<int>(i - 1);
            }
            if (kind_ != VarKind::Homogeneous)
                throw ParseError("variable 'x' not allowed here", start);
            if (i < 0 || i > n_) throw ParseError("variable index out of range", start);
            return static_cast<int>(i);
        }
        return -1;
    }

    void parse_term(bool negate) {
        skip_ws();
        if (at_end()) throw ParseError("expected term", pos_);
        Rational coeff(1);
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
            coeff = parse_coefficient();
            have_coeff = true;
        }
        MultiIndex idx(static_cast<std::size_t>(poly_.slots()), 0);
        bool have_var = false;
        for (;;) {
            skip_ws();
            bool consumed_star = false;
            if (!at_end() && peek() == '*') {
                ++pos_;
                consumed_star = true;
                skip_ws();
            }
            int slot = parse_variable();
            if (slot < 0) {
                if (consumed_star) throw ParseError("expected variable after '*'", pos_);
                break;
            }
            int e = 1;
            skip_ws();
            if (!at_end() && peek() == '^') {
                ++pos_;
                skip_ws();
                std::string ex = read_digits();
                if (ex.empty()) throw ParseError("expected exponent", pos_);
                e = static_cast<int>(std::stoll(ex));
            }
            idx[static_cast<std::size_t>(slot)] += e;
            have_var = true;
        }
        if (!have_coeff && !have_var) throw ParseError("expected term", pos_);
        poly_.add_term(idx, negate ? Rational(-coeff) : coeff);
    }
};

}  // namespace

Polynomial parse_poly(const std::string& text, int n, VarKind kind) {
    if (kind == VarKind::Embedded)
        throw std::invalid_argument("parse_poly: embedded coordinates have no grammar");
    return Parser(text, n, kind).run();
}

HomogeneousPolynomial::HomogeneousPolynomial(Polynomial p, int degree)
    : p_(std::move(p)), degree_(degree) {
    for (const auto& [idx, c] : p_.terms()) {
        if (total_degree(idx) != degree_)
            throw std::invalid_argument("HomogeneousPolynomial: term of degree " +
                                        std::to_string(total_degree(idx)) + " != " +
                                        std::to_string(degree_));
    }
}

namespace {

// Delta^e in the (t,u) layout, u-degree zero.
Polynomial lift_radical_delta(int n, int e) {
    Polynomial out(n, VarKind::Radical);
    const Polynomial d = delta_power(n, e);
    for (const auto& [idx, c] : d.terms()) {
        MultiIndex lifted(idx);
        lifted.push_back(0);
        out.set_coeff(lifted, c);
    }
    return out;
}

}  // namespace

Polynomial delta_power(int n, int e) {
    Polynomial delta = Polynomial::constant(n, VarKind::Affine, 1);
    for (int j = 0; j < n; ++j) {
        MultiIndex idx(static_cast<std::size_t>(n), 0);
        idx[static_cast<std::size_t>(j)] = 2;
        delta.add_term(idx, Rational(1));
    }
    return delta.pow(e);
}

HomogeneousPolynomial homogenize(const Polynomial& p, int d) {
    if (p.kind() != VarKind::Affine)
        throw std::invalid_argument("homogenize: affine polynomial required");
    auto deg = p.degree();
    if (deg && *deg > d) throw std::invalid_argument("homogenize: target degree below deg(p)");
    Polynomial P(p.n(), VarKind::Homogeneous);
    for (const auto& [idx, c] : p.terms()) {
        MultiIndex xi(static_cast<std::size_t>(p.n() + 1), 0);
        xi[0] = d - total_degree(idx);
        for (int j = 0; j < p.n(); ++j) xi[static_cast<std::size_t>(j + 1)] = idx[static_cast<std::size_t>(j)];
        P.set_coeff(xi, c);
    }
    return HomogeneousPolynomial(std::move(P), d);
}

Polynomial dehomogenize(const HomogeneousPolynomial& P) {
    if (P.poly().kind() != VarKind::Homogeneous)
        throw std::invalid_argument("dehomogenize: homogeneous polynomial required");
    int n = P.n();
    Polynomial p(n, VarKind::Affine);
    for (const auto& [idx, c] : P.poly().terms()) {
        MultiIndex ti(static_cast<std::size_t>(n), 0);
        for (int j = 0; j < n; ++j) ti[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j + 1)];
        p.add_term(ti, c);
    }
    return p;
}

Polynomial radical_reduce(const Polynomial& p) {
    if (p.kind() != VarKind::Radical)
        throw std::invalid_argument("radical_reduce: radical polynomial required");
    int n = p.n();
    Polynomial out(n, VarKind::Radical);
    for (const auto& [idx, c] : p.terms()) {
        int uexp = idx.back();
        if (uexp <= 1) {
            out.add_term(idx, c);
            continue;
        }
        MultiIndex base(idx);
        base.back() = uexp % 2;
        Polynomial term = Polynomial::monomial(n, VarKind::Radical, base, c);
        out += term * lift_radical_delta(n, uexp / 2);
    }
    return out;
}

std::optional<Polynomial> try_divide(const Polynomial& f, const Polynomial& g) {
    if (f.n() != g.n() || f.kind() != g.kind())
        throw std::invalid_argument("try_divide: arity/kind mismatch");
    if (g.is_zero()) throw std::invalid_argument("try_divide: division by zero");
    Polynomial quotient(f.n(), f.kind());
    Polynomial rem(f);
    const auto& glead = *g.terms().rbegin();  // leading term in the global order
    while (!rem.is_zero()) {
        const auto& rlead = *rem.terms().rbegin();
        MultiIndex q(rlead.first);
        bool divisible = true;
        for (std::size_t i = 0; i < q.size(); ++i) {
            q[i] -= glead.first[i];
            if (q[i] < 0) { divisible = false; break; }
        }
        if (!divisible) return std::nullopt;
        Rational qc = rlead.second / glead.second;
        Polynomial qmono = Polynomial::monomial(f.n(), f.kind(), q, qc);
        quotient += qmono;
        rem -= qmono * g;
    }
    return quotient;
}

}  // namespace msos
