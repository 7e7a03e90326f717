#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "msos/embedding.hpp"

#include <cmath>
#include <random>

using namespace msos;

namespace {

Polynomial random_ts_poly(std::mt19937& rng, int n, int max_deg) {
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> nterms(1, 6);
    Polynomial p(n, VarKind::Extension);
    int terms = nterms(rng);
    for (int t = 0; t < terms; ++t) {
        MultiIndex idx(static_cast<std::size_t>(n + 1), 0);
        int budget = std::uniform_int_distribution<int>(0, max_deg)(rng);
        for (int j = 0; j <= n && budget > 0; ++j) {
            idx[static_cast<std::size_t>(j)] =
                std::uniform_int_distribution<int>(0, budget)(rng);
            budget -= idx[static_cast<std::size_t>(j)];
        }
        int c = coeff(rng);
        if (c != 0) p.add_term(idx, Rational(c));
    }
    return p;
}

ConstraintSet sample_constraints(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> m_dist(0, 2);
    std::vector<Polynomial> polys;
    int m = m_dist(rng);
    for (int k = 0; k < m; ++k) {
        Polynomial pk(n, VarKind::Affine);
        for (const auto& idx : indices_up_to(n, 2)) {
            int c = std::uniform_int_distribution<int>(-2, 2)(rng);
            if (c != 0) pk.add_term(idx, Rational(c));
        }
        if (pk.is_zero()) pk = Polynomial::constant(n, VarKind::Affine, 1);
        polys.push_back(pk);
    }
    return ConstraintSet(n, polys);
}

}  // namespace

TEST_CASE("reduce_mod_sigma: kernel generator maps to zero") {
    ConstraintSet cs(1);
    auto q = parse_poly("s + s*t1^2 - 1", 1, VarKind::Extension);  // s(1+t1^2) - 1
    CHECK(q == cs.sigma());
    CHECK(reduce_mod_sigma(q, cs).is_zero());
}

TEST_CASE("reduce_mod_sigma: s becomes theta") {
    ConstraintSet cs(1);
    auto s = Polynomial::variable(1, VarKind::Extension, 1);
    auto form = reduce_mod_sigma(s, cs);
    CHECK(form.denom_power == 1);
    CHECK(form.numerator == Polynomial::constant(1, VarKind::Affine, 1));
}

TEST_CASE("reduce_mod_sigma: ideal members vanish") {
    ConstraintSet cs(1);
    auto t_plus_s = parse_poly("t1 + s", 1, VarKind::Extension);
    CHECK(reduce_mod_sigma(cs.sigma() * t_plus_s, cs).is_zero());
}

TEST_CASE("kernel_test: spec examples") {
    ConstraintSet cs(2, {parse_poly("t1 - t2", 2, VarKind::Affine)});
    CHECK(kernel_test(cs.sigma(), cs));
    CHECK(!kernel_test(Polynomial::constant(2, VarKind::Extension, 1), cs));
}

TEST_CASE("kernel_test: random ideal members over random constraint sets") {
    std::mt19937 rng(41);
    for (int rep = 0; rep < 20; ++rep) {
        int n = 1 + static_cast<int>(rng() % 2);
        ConstraintSet cs = sample_constraints(rng, n);
        auto r = random_ts_poly(rng, n, 3);
        CHECK(kernel_test(cs.sigma() * r, cs));
    }
}

TEST_CASE("kernel_test: shifted ideal members are nonzero") {
    std::mt19937 rng(43);
    for (int rep = 0; rep < 20; ++rep) {
        int n = 1 + static_cast<int>(rng() % 2);
        ConstraintSet cs = sample_constraints(rng, n);
        auto r = random_ts_poly(rng, n, 3);
        auto q = cs.sigma() * r + Polynomial::constant(n, VarKind::Extension, 1);
        CHECK(!kernel_test(q, cs));
    }
}

TEST_CASE("reduce_mod_sigma is linear under cross-multiplied equality") {
    std::mt19937 rng(47);
    for (int rep = 0; rep < 15; ++rep) {
        int n = 1 + static_cast<int>(rng() % 2);
        ConstraintSet cs = sample_constraints(rng, n);
        auto q1 = random_ts_poly(rng, n, 3);
        auto q2 = random_ts_poly(rng, n, 3);
        auto sum_form = reduce_mod_sigma(q1 + q2, cs);
        auto form_sum = form_add(reduce_mod_sigma(q1, cs), reduce_mod_sigma(q2, cs), cs);
        CHECK(form_equal(sum_form, form_sum, cs));
    }
}

TEST_CASE("reduce_mod_sigma: wrong variable kind") {
    ConstraintSet cs(1);
    CHECK_THROWS_AS(reduce_mod_sigma(parse_poly("t1", 1, VarKind::Affine), cs),
                    std::invalid_argument);
}

TEST_CASE("phi_map: spec examples") {
    double t0[] = {0.0};
    auto x = phi_map(t0);
    CHECK(x.coords(0, 0) == doctest::Approx(1.0));
    CHECK(x.coords(0, 1) == doctest::Approx(0.0));
    CHECK(x.coords(1, 1) == doctest::Approx(0.0));

    double t1[] = {1.0};
    auto y = phi_map(t1);
    for (int p = 0; p <= 1; ++p)
        for (int q = 0; q <= 1; ++q) CHECK(y.coords(p, q) == doctest::Approx(0.5));

    double t2[] = {1.0, 0.0};
    auto z = phi_map(t2);
    CHECK(z.coords(0, 0) == doctest::Approx(0.5));
    CHECK(z.coords(0, 1) == doctest::Approx(0.5));
    CHECK(z.coords(1, 1) == doctest::Approx(0.5));
    CHECK(z.coords(0, 2) == doctest::Approx(0.0));
    CHECK(z.coords(1, 2) == doctest::Approx(0.0));
    CHECK(z.coords(2, 2) == doctest::Approx(0.0));
}

TEST_CASE("phi_map has unit norm at 1000 random points") {
    std::mt19937 rng(53);
    std::uniform_real_distribution<double> unif(-5.0, 5.0);
    for (int n = 1; n <= 3; ++n) {
        for (int rep = 0; rep < 1000 / n; ++rep) {
            std::vector<double> t(static_cast<std::size_t>(n));
            for (auto& v : t) v = unif(rng);
            auto x = phi_map(t);
            double norm2 = 0.0;
            for (double v : x.flat()) norm2 += v * v;
            CHECK(std::abs(norm2 - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("phi_range_test: round-trip recovers the preimage") {
    std::mt19937 rng(59);
    std::uniform_real_distribution<double> unif(-3.0, 3.0);
    for (int rep = 0; rep < 100; ++rep) {
        int n = 1 + static_cast<int>(rng() % 3);
        std::vector<double> t(static_cast<std::size_t>(n));
        for (auto& v : t) v = unif(rng);
        auto x = phi_map(t);
        CHECK(phi_range_test(x, 1e-9));
        auto back = phi_preimage(x);
        for (int j = 0; j < n; ++j)
            CHECK(std::abs(back[static_cast<std::size_t>(j)] - t[static_cast<std::size_t>(j)]) <=
                  1e-12 * (1.0 + std::abs(t[static_cast<std::size_t>(j)])));
        auto again = phi_map(back);
        CHECK((again.coords - x.coords).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("phi_range_test: x_00 = 0 fails, identity pattern passes") {
    EmbeddedPoint zero{1, Eigen::MatrixXd::Zero(2, 2)};
    zero.coords(1, 1) = 1.0;
    CHECK(!phi_range_test(zero, 1e-9));

    EmbeddedPoint ident{1, Eigen::MatrixXd::Zero(2, 2)};
    ident.coords(0, 0) = 1.0;
    CHECK(phi_range_test(ident, 1e-9));
    auto t = phi_preimage(ident);
    CHECK(t[0] == doctest::Approx(0.0));
}

TEST_CASE("veronese: spec examples") {
    double x[] = {1.0, 2.0};
    auto v = veronese(x);
    CHECK(v.coords(0, 0) == doctest::Approx(1.0));
    CHECK(v.coords(0, 1) == doctest::Approx(2.0));
    CHECK(v.coords(1, 0) == doctest::Approx(2.0));
    CHECK(v.coords(1, 1) == doctest::Approx(4.0));

    double z[] = {0.0, 0.0};
    CHECK(veronese(z).coords.cwiseAbs().maxCoeff() == 0.0);

    double e[] = {0.0, 1.0, 0.0};
    auto w = veronese(e);
    CHECK(w.coords(1, 1) == doctest::Approx(1.0));
    CHECK(w.coords.cwiseAbs().sum() == doctest::Approx(1.0));
}

TEST_CASE("veronese satisfies the quadratic relations exactly") {
    std::mt19937 rng(61);
    for (int rep = 0; rep < 20; ++rep) {
        int n = 1 + static_cast<int>(rng() % 3);
        std::vector<Rational> x(static_cast<std::size_t>(n + 1));
        for (auto& v : x)
            v = Rational(std::uniform_int_distribution<int>(-9, 9)(rng),
                         1 + std::uniform_int_distribution<int>(0, 8)(rng));
        auto v = veronese_exact(x);
        for (int p = 0; p <= n; ++p) {
            CHECK(v[static_cast<std::size_t>(p)][static_cast<std::size_t>(p)] >= 0);
            for (int q = 0; q <= n; ++q)
                for (int r = 0; r <= n; ++r)
                    for (int s = 0; s <= n; ++s)
                        CHECK(v[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] *
                                  v[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] ==
                              v[static_cast<std::size_t>(p)][static_cast<std::size_t>(r)] *
                                  v[static_cast<std::size_t>(q)][static_cast<std::size_t>(s)]);
        }
    }
}

TEST_CASE("veronese_lift: pairing rule and expansion oracle") {
    auto P1 = HomogeneousPolynomial(parse_poly("x0^2*x1^2", 1, VarKind::Homogeneous), 4);
    auto L1 = veronese_lift(P1);
    // multiset {0,0,1,1} pairs as (0,0),(1,1) -> x_00 * x_11
    MultiIndex expect1(4, 0);
    expect1[0] = 1;  // cell (0,0)
    expect1[3] = 1;  // cell (1,1)
    CHECK(L1.poly().coeff(expect1) == 1);
    CHECK(L1.poly().terms().size() == 1);
    CHECK(compose_veronese(L1) == P1.poly());

    auto P2 = HomogeneousPolynomial(parse_poly("x0^4", 1, VarKind::Homogeneous), 4);
    auto L2 = veronese_lift(P2);
    MultiIndex expect2(4, 0);
    expect2[0] = 2;  // x_00^2
    CHECK(L2.poly().coeff(expect2) == 1);
    CHECK(compose_veronese(L2) == P2.poly());

    auto P3 = HomogeneousPolynomial(parse_poly("x0^3*x1", 1, VarKind::Homogeneous), 4);
    auto L3 = veronese_lift(P3);
    MultiIndex expect3(4, 0);
    expect3[0] = 1;  // (0,0)
    expect3[1] = 1;  // (0,1)
    CHECK(L3.poly().coeff(expect3) == 1);
    CHECK(compose_veronese(L3) == P3.poly());

    CHECK_THROWS_AS(
        veronese_lift(HomogeneousPolynomial(parse_poly("x0^3", 1, VarKind::Homogeneous), 3)),
        std::invalid_argument);
}

TEST_CASE("veronese_lift: expansion is exact for random forms") {
    std::mt19937 rng(67);
    for (int rep = 0; rep < 30; ++rep) {
        int n = 1 + static_cast<int>(rng() % 2);
        int d2 = 2 * (1 + static_cast<int>(rng() % 3));
        Polynomial P(n, VarKind::Homogeneous);
        for (const auto& idx : indices_of_degree(n + 1, d2)) {
            int c = std::uniform_int_distribution<int>(-3, 3)(rng);
            if (c != 0) P.add_term(idx, Rational(c));
        }
        if (P.is_zero()) continue;
        HomogeneousPolynomial H(P, d2);
        CHECK(compose_veronese(veronese_lift(H)) == P);
    }
}

TEST_CASE("identity (4.1): explicit and random checks") {
    auto P = HomogeneousPolynomial(
        parse_poly("x0^4 + 2*x0^2*x1^2 + x1^4", 1, VarKind::Homogeneous), 4);
    double t1[] = {1.0};
    CHECK(identity_41_residual(P, t1) <= 1e-10 * (1.0 + 4.0));

    double t0[] = {0.0};
    CHECK(identity_41_residual(P, t0) <= 1e-14);

    std::mt19937 rng(71);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (int rep = 0; rep < 100; ++rep) {
        Polynomial Q(2, VarKind::Homogeneous);
        for (const auto& idx : indices_of_degree(3, 4)) {
            int c = std::uniform_int_distribution<int>(-3, 3)(rng);
            if (c != 0) Q.add_term(idx, Rational(c));
        }
        if (Q.is_zero()) continue;
        HomogeneousPolynomial H(Q, 4);
        std::vector<double> t{unif(rng), unif(rng)};
        std::vector<double> x1t{1.0, t[0], t[1]};
        double lhs = H.eval(x1t);
        CHECK(identity_41_residual(H, t) <= 1e-10 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("psi_map: spec examples") {
    double t0[] = {0.0};
    auto y0 = psi_map(t0);
    CHECK(y0[0] == doctest::Approx(1.0));
    CHECK(y0[1] == doctest::Approx(0.0));

    double t1[] = {1.0};
    auto y1 = psi_map(t1);
    CHECK(y1[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(y1[1] == doctest::Approx(1.0 / std::sqrt(2.0)));

    std::mt19937 rng(73);
    std::uniform_real_distribution<double> unif(-4.0, 4.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> t{unif(rng), unif(rng), unif(rng)};
        auto y = psi_map(t);
        double norm2 = 0.0;
        for (double v : y) norm2 += v * v;
        CHECK(std::abs(norm2 - 1.0) <= 1e-14);
        CHECK(y[0] > 0.0);
    }
}

TEST_CASE("qtheta_member: the degree rule") {
    CHECK(qtheta_member(parse_poly("t1^2", 1, VarKind::Affine), 1));
    CHECK(!qtheta_member(parse_poly("t1^3", 1, VarKind::Affine), 1));
    CHECK(qtheta_member(Polynomial::constant(1, VarKind::Affine, 1), 0));
    CHECK(qtheta_member(Polynomial(1, VarKind::Affine), 0));  // zero polynomial
}
