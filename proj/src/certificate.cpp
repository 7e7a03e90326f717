#include "msos/certificate.hpp"

#include "msos/extended_sequence.hpp"  // DataError

#include <json.hpp>

#include <cmath>
#include <random>

namespace msos {

namespace {

using ordered_json = nlohmann::ordered_json;

double max_abs_coeff(const Polynomial& p) {
    double m = 0.0;
    for (const auto& [idx, c] : p.terms()) m = std::max(m, std::abs(to_double(c)));
    return m;
}

int degree_or(const std::vector<Polynomial>& polys) {
    int d = -1;
    for (const auto& q : polys)
        if (auto dq = q.degree()) d = std::max(d, *dq);
    return d;
}

void require_kind(const std::vector<Polynomial>& polys, int n, VarKind kind,
                  const std::string& what) {
    for (const auto& q : polys) {
        if (q.kind() != kind || q.n() != n)
            throw std::invalid_argument("verify: " + what + " has wrong arity/kind");
        if (kind == VarKind::Radical) {
            for (const auto& [idx, c] : q.terms())
                if (idx.back() > 1)
                    throw std::invalid_argument("verify: " + what + " is not u-reduced");
        }
    }
}

}  // namespace

VerifyReport verify(const SOSCertificate& cert, const Polynomial& p, const ConstraintSet& cs,
                    double tol, int pointwise_samples) {
    if (p.kind() != VarKind::Affine || p.n() != cs.n() || cert.n != cs.n())
        throw std::invalid_argument("verify: arity/kind mismatch");
    if (static_cast<int>(cert.multiplier_squares.size()) != cs.m())
        throw std::invalid_argument("verify: certificate constraint count (" +
                                    std::to_string(cert.multiplier_squares.size()) +
                                    ") does not match " + std::to_string(cs.m()));
    if (cert.radical && static_cast<int>(cert.radical_multiplier.size()) != cs.m())
        throw std::invalid_argument("verify: radical multiplier block count mismatch");

    int n = cert.n;
    VarKind work = cert.radical ? VarKind::Radical : VarKind::Affine;
    require_kind(cert.plain_squares, n, work, "plain square");
    for (const auto& qs : cert.multiplier_squares) require_kind(qs, n, work, "multiplier square");
    require_kind(cert.radical_plain, n, work, "radical block");
    for (const auto& rs : cert.radical_multiplier) require_kind(rs, n, work, "radical block");

    VerifyReport report;
    report.plain_degree = degree_or(cert.plain_squares);
    for (const auto& qs : cert.multiplier_squares)
        report.multiplier_degrees.push_back(degree_or(qs));
    report.radical_plain_degree = degree_or(cert.radical_plain);
    for (const auto& rs : cert.radical_multiplier)
        report.radical_multiplier_degrees.push_back(degree_or(rs));

    // exact expansion of the claimed identity
    Polynomial target_aff = delta_power(n, cert.radical ? cert.b : 2 * cert.b) * p;
    Polynomial target = cert.radical ? lift_affine(target_aff, VarKind::Radical) : target_aff;
    Polynomial lhs(n, work);
    auto add_squares = [&](const std::vector<Polynomial>& qs, const Polynomial& mult) {
        for (const auto& q : qs) {
            Polynomial sq = q * q * mult;
            lhs += cert.radical ? radical_reduce(sq) : sq;
        }
    };
    Polynomial one = Polynomial::constant(n, work, 1);
    add_squares(cert.plain_squares, one);
    for (int k = 0; k < cs.m(); ++k) {
        Polynomial mult = cert.radical ? lift_affine(cs.polys()[static_cast<std::size_t>(k)],
                                                     VarKind::Radical)
                                       : cs.polys()[static_cast<std::size_t>(k)];
        add_squares(cert.multiplier_squares[static_cast<std::size_t>(k)], mult);
    }
    if (cert.radical) {
        Polynomial u = Polynomial::variable(n, VarKind::Radical, n);
        add_squares(cert.radical_plain, u);
        for (int k = 0; k < cs.m(); ++k) {
            Polynomial mult =
                lift_affine(cs.polys()[static_cast<std::size_t>(k)], VarKind::Radical) * u;
            add_squares(cert.radical_multiplier[static_cast<std::size_t>(k)], mult);
        }
    }
    Polynomial diff = lhs - target;
    double scale = max_abs_coeff(target);
    report.max_coeff_error = scale > 0 ? max_abs_coeff(diff) / scale : max_abs_coeff(diff);
    report.pass = report.max_coeff_error <= tol;

    // floating-point spot check of (4.2)/(4.5) at sample points
    if (pointwise_samples > 0) {
        std::mt19937 rng(0xC0FFEE);
        std::uniform_real_distribution<double> unif(-2.0, 2.0);
        double worst = 0.0;
        for (int s = 0; s < pointwise_samples; ++s) {
            std::vector<double> t(static_cast<std::size_t>(n));
            for (auto& v : t) v = unif(rng);
            double norm2 = 0.0;
            for (double v : t) norm2 += v * v;
            double theta = 1.0 / (1.0 + norm2);
            std::vector<double> tu(t);
            tu.push_back(std::sqrt(1.0 + norm2));  // u = sqrt(Delta)
            auto eval_work = [&](const Polynomial& q) {
                return cert.radical ? q.eval(tu) : q.eval(t);
            };
            double rhs = 0.0;
            for (const auto& q : cert.plain_squares) {
                double v = eval_work(q);
                rhs += v * v;
            }
            for (int k = 0; k < cs.m(); ++k) {
                double pk = cs.polys()[static_cast<std::size_t>(k)].eval(t);
                for (const auto& q : cert.multiplier_squares[static_cast<std::size_t>(k)]) {
                    double v = eval_work(q);
                    rhs += pk * v * v;
                }
            }
            if (cert.radical) {
                double root = std::sqrt(1.0 + norm2);
                for (const auto& r : cert.radical_plain) {
                    double v = eval_work(r);
                    rhs += root * v * v;
                }
                for (int k = 0; k < cs.m(); ++k) {
                    double pk = cs.polys()[static_cast<std::size_t>(k)].eval(t);
                    for (const auto& r : cert.radical_multiplier[static_cast<std::size_t>(k)]) {
                        double v = eval_work(r);
                        rhs += root * pk * v * v;
                    }
                }
            }
            double theta_pow = std::pow(theta, cert.radical ? cert.b : 2 * cert.b);
            double pv = p.eval(t);
            worst = std::max(worst, std::abs(pv - theta_pow * rhs) / (1.0 + std::abs(pv)));
        }
        report.pointwise_error = worst;
    }
    return report;
}

namespace {

ordered_json poly_json(const Polynomial& q) {
    return ordered_json{{"text", q.str_decimal()}, {"exact", q.str()}};
}

Polynomial poly_from_json(const ordered_json& j, int n, VarKind kind, const std::string& path) {
    try {
        if (j.is_string()) return parse_poly(j.get<std::string>(), n, kind);
        if (j.is_object()) {
            if (j.contains("exact")) return parse_poly(j["exact"].get<std::string>(), n, kind);
            if (j.contains("text")) return parse_poly(j["text"].get<std::string>(), n, kind);
        }
    } catch (const ParseError& e) {
        throw DataError("certificate: " + path + ": " + e.what());
    }
    throw DataError("certificate: " + path + ": expected a polynomial payload");
}

}  // namespace

std::string serialize(const SOSCertificate& cert, const ConstraintSet& cs) {
    if (static_cast<int>(cert.multiplier_squares.size()) != cs.m())
        throw std::invalid_argument("serialize: certificate constraint count mismatch");
    ordered_json j;
    j["version"] = 1;
    j["n"] = cert.n;
    j["b"] = cert.b;
    j["radical"] = cert.radical;
    j["constraints"] = ordered_json::array();
    for (const auto& pk : cs.polys()) j["constraints"].push_back(pk.str());
    j["plain_squares"] = ordered_json::array();
    for (const auto& q : cert.plain_squares) j["plain_squares"].push_back(poly_json(q));
    j["multiplier_squares"] = ordered_json::array();
    for (const auto& qs : cert.multiplier_squares) {
        ordered_json arr = ordered_json::array();
        for (const auto& q : qs) arr.push_back(poly_json(q));
        j["multiplier_squares"].push_back(arr);
    }
    if (cert.radical) {
        ordered_json rb;
        rb["plain"] = ordered_json::array();
        for (const auto& r : cert.radical_plain) rb["plain"].push_back(poly_json(r));
        rb["multiplier"] = ordered_json::array();
        for (const auto& rs : cert.radical_multiplier) {
            ordered_json arr = ordered_json::array();
            for (const auto& r : rs) arr.push_back(poly_json(r));
            rb["multiplier"].push_back(arr);
        }
        j["radical_blocks"] = rb;
    }
    return j.dump(2) + "\n";
}

ParsedCertificate parse_certificate(const std::string& document) {
    ordered_json j;
    try {
        j = ordered_json::parse(document);
    } catch (const std::exception& e) {
        throw DataError(std::string("certificate: invalid JSON: ") + e.what());
    }
    auto need = [&](const char* field) -> const ordered_json& {
        if (!j.contains(field)) throw DataError(std::string("certificate: missing field '") + field + "'");
        return j[field];
    };
    ParsedCertificate out;
    if (need("version").get<int>() != 1) throw DataError("certificate: unsupported version");
    out.cert.n = need("n").get<int>();
    out.cert.b = need("b").get<int>();
    out.cert.radical = need("radical").get<bool>();
    if (out.cert.n < 1 || out.cert.b < 0) throw DataError("certificate: invalid n or b");
    int n = out.cert.n;
    VarKind work = out.cert.radical ? VarKind::Radical : VarKind::Affine;

    const auto& cons = need("constraints");
    if (!cons.is_array()) throw DataError("certificate: 'constraints' must be an array");
    for (std::size_t k = 0; k < cons.size(); ++k) {
        try {
            out.constraints.push_back(parse_poly(cons[k].get<std::string>(), n, VarKind::Affine));
        } catch (const ParseError& e) {
            throw DataError("certificate: constraints[" + std::to_string(k) + "]: " + e.what());
        }
    }

    const auto& plain = need("plain_squares");
    if (!plain.is_array()) throw DataError("certificate: 'plain_squares' must be an array");
    for (std::size_t i = 0; i < plain.size(); ++i)
        out.cert.plain_squares.push_back(
            poly_from_json(plain[i], n, work, "plain_squares[" + std::to_string(i) + "]"));

    const auto& mult = need("multiplier_squares");
    if (!mult.is_array()) throw DataError("certificate: 'multiplier_squares' must be an array");
    if (mult.size() != cons.size())
        throw DataError("certificate: multiplier_squares size does not match constraints");
    for (std::size_t k = 0; k < mult.size(); ++k) {
        std::vector<Polynomial> qs;
        for (std::size_t i = 0; i < mult[k].size(); ++i)
            qs.push_back(poly_from_json(mult[k][i], n, work,
                                        "multiplier_squares[" + std::to_string(k) + "][" +
                                            std::to_string(i) + "]"));
        out.cert.multiplier_squares.push_back(std::move(qs));
    }

    if (out.cert.radical) {
        const auto& rb = need("radical_blocks");
        if (!rb.contains("plain") || !rb.contains("multiplier"))
            throw DataError("certificate: radical_blocks needs 'plain' and 'multiplier'");
        for (std::size_t i = 0; i < rb["plain"].size(); ++i)
            out.cert.radical_plain.push_back(poly_from_json(
                rb["plain"][i], n, work, "radical_blocks.plain[" + std::to_string(i) + "]"));
        if (rb["multiplier"].size() != cons.size())
            throw DataError("certificate: radical multiplier size does not match constraints");
        for (std::size_t k = 0; k < rb["multiplier"].size(); ++k) {
            std::vector<Polynomial> rs;
            for (std::size_t i = 0; i < rb["multiplier"][k].size(); ++i)
                rs.push_back(poly_from_json(rb["multiplier"][k][i], n, work,
                                            "radical_blocks.multiplier[" + std::to_string(k) +
                                                "][" + std::to_string(i) + "]"));
            out.cert.radical_multiplier.push_back(std::move(rs));
        }
    }
    return out;
}

}  // namespace msos
