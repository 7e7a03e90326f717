#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "msos/measure_tools.hpp"
#include "msos/moment_core.hpp"

#include <cmath>
#include <random>

using namespace msos;

namespace {

AtomicMeasure single_atom(int n, std::vector<Rational> pt, Rational w) {
    return AtomicMeasure(n, {Atom{std::move(pt), std::move(w)}});
}

// atoms sampled inside the constraint region by rejection; regenerates the
// constraints when the region looks empty
std::pair<ConstraintSet, AtomicMeasure> random_supported_measure(std::mt19937& rng, int n,
                                                                 int max_atoms) {
    for (;;) {
        std::vector<Polynomial> polys;
        int m = std::uniform_int_distribution<int>(0, 2)(rng);
        for (int k = 0; k < m; ++k) {
            Polynomial pk(n, VarKind::Affine);
            for (const auto& idx : indices_up_to(n, 2)) {
                int c = std::uniform_int_distribution<int>(-2, 2)(rng);
                if (c != 0) pk.add_term(idx, Rational(c));
            }
            if (pk.is_zero()) pk = Polynomial::constant(n, VarKind::Affine, 1);
            polys.push_back(pk);
        }
        ConstraintSet cs(n, polys);
        std::vector<Atom> atoms;
        int want = 1 + std::uniform_int_distribution<int>(0, max_atoms - 1)(rng);
        for (int tries = 0; tries < 400 && static_cast<int>(atoms.size()) < want; ++tries) {
            std::vector<Rational> pt(static_cast<std::size_t>(n));
            for (auto& c : pt)
                c = Rational(std::uniform_int_distribution<int>(-8, 8)(rng),
                             1 + std::uniform_int_distribution<int>(0, 3)(rng));
            bool inside = true;
            for (const auto& pk : cs.polys())
                if (pk.eval_exact(pt) < 0) {
                    inside = false;
                    break;
                }
            if (inside)
                atoms.push_back(
                    {std::move(pt),
                     Rational(1 + std::uniform_int_distribution<int>(0, 5)(rng), 4)});
        }
        if (!atoms.empty()) return {cs, AtomicMeasure(n, std::move(atoms))};
    }
}

}  // namespace

TEST_CASE("psd_test: spec examples") {
    Eigen::MatrixXd I = Eigen::MatrixXd::Identity(3, 3);
    auto [p1, e1] = psd_test(I, 1e-12);
    CHECK(p1);
    CHECK(e1 == doctest::Approx(1.0));

    Eigen::MatrixXd M(2, 2);
    M << 1, 2, 2, 1;
    auto [p2, e2] = psd_test(M, 1e-12);
    CHECK(!p2);
    CHECK(e2 == doctest::Approx(-1.0));

    Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(2, 2);
    auto [p3, e3] = psd_test(Z, 1e-12);
    CHECK(p3);
    CHECK(e3 == doctest::Approx(0.0));

    Eigen::MatrixXd bad(1, 1);
    bad << std::nan("");
    CHECK_THROWS_AS(psd_test(bad, 1e-12), std::invalid_argument);
}

TEST_CASE("moment_matrix: single atom at t=1 with p=(0)") {
    ConstraintSet cs(1);
    auto seq = moments_from_atoms(single_atom(1, {Rational(1)}, Rational(1)), cs, 2, 2);
    auto M = moment_matrix(seq, 1, 1);
    REQUIRE(M.basis.size() == 4);  // 1, t, s, ts
    // {1, t, s} block matches the rank-one outer product of (1, 1, 1/2)
    CHECK(M.entries(0, 0) == doctest::Approx(1.0));
    CHECK(M.entries(0, 1) == doctest::Approx(1.0));
    CHECK(M.entries(0, 2) == doctest::Approx(0.5));
    CHECK(M.entries(1, 1) == doctest::Approx(1.0));
    CHECK(M.entries(1, 2) == doctest::Approx(0.5));
    CHECK(M.entries(2, 2) == doctest::Approx(0.25));
    // rank one
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M.entries, Eigen::EigenvaluesOnly);
    int above = 0;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()(i) > 1e-8 * M.entries.trace()) ++above;
    CHECK(above == 1);
}

TEST_CASE("moment_matrix: 1x1 and symmetric atoms") {
    ConstraintSet cs(1);
    auto seq = moments_from_atoms(single_atom(1, {Rational(2)}, Rational(3, 4)), cs, 0, 0);
    auto M = moment_matrix(seq, 0, 0);
    REQUIRE(M.basis.size() == 1);
    CHECK(M.entries(0, 0) == doctest::Approx(0.75));

    AtomicMeasure pm(1, {Atom{{Rational(1)}, Rational(1, 2)}, Atom{{Rational(-1)}, Rational(1, 2)}});
    auto seq2 = moments_from_atoms(pm, cs, 2, 0);
    auto M2 = moment_matrix(seq2, 1, 0);
    REQUIRE(M2.basis.size() == 2);
    CHECK(M2.entries(0, 0) == doctest::Approx(1.0));
    CHECK(M2.entries(0, 1) == doctest::Approx(0.0));
    CHECK(M2.entries(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("moment_matrix: rectangle too small reports the missing index") {
    ConstraintSet cs(1);
    auto seq = moments_from_atoms(single_atom(1, {Rational(1)}, Rational(1)), cs, 1, 0);
    try {
        moment_matrix(seq, 1, 0);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("(2;0)") != std::string::npos);
    }
}

TEST_CASE("localizing_matrix: spec examples") {
    ConstraintSet cs(1);
    auto seq = moments_from_atoms(single_atom(1, {Rational(1)}, Rational(1)), cs, 4, 2);
    auto mm = moment_matrix(seq, 1, 1);
    auto lm = localizing_matrix(seq, Polynomial::constant(1, VarKind::Affine, 1), 1, 1);
    CHECK((mm.entries - lm.entries).cwiseAbs().maxCoeff() == 0.0);

    auto t = Polynomial::variable(1, VarKind::Affine, 0);
    auto l1 = localizing_matrix(seq, t, 0, 0);
    REQUIRE(l1.basis.size() == 1);
    CHECK(l1.entries(0, 0) == doctest::Approx(1.0));

    auto seqneg = moments_from_atoms(single_atom(1, {Rational(-1)}, Rational(1)), cs, 4, 2);
    auto l2 = localizing_matrix(seqneg, t, 0, 0);
    CHECK(l2.entries(0, 0) == doctest::Approx(-1.0));
    CHECK(!psd_test(l2.entries, 1e-12).first);
}

TEST_CASE("check_recurrence: geometric sequence passes exactly") {
    ConstraintSet cs(1);
    auto seq = moments_from_atoms(single_atom(1, {Rational(1)}, Rational(1)), cs, 4, 3);
    // delta_(a,b) = 2^-b for the atom t=1
    CHECK(seq.value_exact({0}, 2) == Rational(1, 4));
    auto violations = check_recurrence(seq, cs, 0.0);
    CHECK(violations.empty());
}

TEST_CASE("check_recurrence: injected fault is located") {
    ConstraintSet cs(1);
    auto seq = moments_from_atoms(single_atom(1, {Rational(1)}, Rational(1)), cs, 4, 3);
    seq.set({0}, 1, Rational(3, 5));  // overwrite delta_(0,1) = 0.6
    auto violations = check_recurrence(seq, cs, 1e-9);
    bool found = false;
    for (const auto& v : violations) {
        if (v.alpha == MultiIndex{0} && v.beta == 0) {
            found = true;
            CHECK(v.lhs == doctest::Approx(1.0));
            CHECK(v.rhs == doctest::Approx(1.1));
        }
    }
    CHECK(found);
}

TEST_CASE("check_recurrence: general constraint recurrence via the measure oracle") {
    auto t1 = Polynomial::variable(1, VarKind::Affine, 0);
    ConstraintSet cs(1, {t1});  // theta_p = (1 + 2 t^2)^-1
    auto seq = moments_from_atoms(single_atom(1, {Rational(1)}, Rational(1)), cs, 6, 3);
    CHECK(seq.value_exact({0}, 1) == Rational(1, 3));
    CHECK(check_recurrence(seq, cs, 1e-12).empty());
    CHECK(check_recurrence(seq, cs, 0.0).empty());  // holds exactly on rational atoms
}

TEST_CASE("check_recurrence: warns when nothing is checkable") {
    ConstraintSet cs(1);
    auto seq = moments_from_atoms(single_atom(1, {Rational(1)}, Rational(1)), cs, 1, 0);
    std::vector<std::string> warnings;
    auto violations = check_recurrence(seq, cs, 1e-9, &warnings);
    CHECK(violations.empty());
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("not checkable") != std::string::npos);
}

TEST_CASE("check_extension_general: oracle measures pass; faults fail") {
    std::mt19937 rng(101);
    for (int rep = 0; rep < 5; ++rep) {
        int n = 1 + static_cast<int>(rng() % 2);
        auto [cs, mu] = random_supported_measure(rng, n, 3);
        int maxdeg = 0;
        for (const auto& pk : cs.polys()) maxdeg = std::max(maxdeg, pk.degree().value_or(0));
        int A = 4 + 2 * maxdeg, B = 2;
        auto seq = moments_from_atoms(mu, cs, A, B);
        int deg_t = (A - maxdeg) / 2;
        auto report = check_extension_general(seq, cs, 1e-9, std::min(deg_t, 2), 1);
        CHECK(report.passed);
    }
}

TEST_CASE("check_extension_general: negative moment-matrix fault") {
    ConstraintSet cs(1);
    auto seq = moments_from_atoms(single_atom(1, {Rational(1)}, Rational(1)), cs, 4, 2);
    seq.set({2}, 0, Rational(-1));
    auto report = check_extension_general(seq, cs, 1e-9, 1, 1);
    CHECK(!report.passed);
    bool moment_failed = false;
    for (const auto& r : report.psd_results)
        if (r.label == "moment" && !r.pass && r.min_eig < 0) moment_failed = true;
    CHECK(moment_failed);
}

TEST_CASE("check_extension_general: atom outside the support fails the localizer") {
    auto t1 = Polynomial::variable(1, VarKind::Affine, 0);
    ConstraintSet cs(1, {t1});
    auto seq = moments_from_atoms(single_atom(1, {Rational(-2)}, Rational(1)), cs, 6, 2);
    auto report = check_extension_general(seq, cs, 1e-9, 2, 1);
    CHECK(!report.passed);
    bool loc_failed = false;
    for (const auto& r : report.psd_results)
        if (r.label == "localizing p1" && !r.pass) loc_failed = true;
    CHECK(loc_failed);
    CHECK(report.recurrence_violations.empty());  // the recurrence itself still holds
}

TEST_CASE("check_extension_hamburger: spec examples") {
    ConstraintSet cs2(2);
    auto origin = moments_from_atoms(single_atom(2, {Rational(0), Rational(0)}, Rational(1)),
                                     cs2, 4, 2);
    CHECK(origin.value_exact({0, 0}, 1) == 1);
    CHECK(origin.value_exact({2, 0}, 0) == 0);
    auto rep1 = check_extension_hamburger(origin, 1e-9, 2, 1);
    CHECK(rep1.passed);

    ConstraintSet cs1(1);
    AtomicMeasure pm(1, {Atom{{Rational(1)}, Rational(1, 2)}, Atom{{Rational(-1)}, Rational(1, 2)}});
    auto sym = moments_from_atoms(pm, cs1, 4, 2);
    auto rep2 = check_extension_hamburger(sym, 1e-9, 2, 1);
    CHECK(rep2.passed);

    sym.set({1}, 1, Rational(7, 10));  // perturb
    auto rep3 = check_extension_hamburger(sym, 1e-9, 2, 1);
    CHECK(!rep3.passed);
    CHECK(!rep3.recurrence_violations.empty());
}

TEST_CASE("stieltjes_rescale: spec examples and round-trip") {
    ConstraintSet cs(1);
    auto seq = moments_from_atoms(single_atom(1, {Rational(3)}, Rational(1)), cs, 3, 2);
    CHECK(seq.value_exact({1}, 0) == 3);
    auto fwd = stieltjes_rescale(seq, false);
    CHECK(fwd.value({1}, 0) == doctest::Approx(3.0 / std::sqrt(2.0)));
    CHECK(fwd.value({0}, 2) == doctest::Approx(seq.value({0}, 2)));  // |alpha| = 0 unchanged

    std::mt19937 rng(107);
    ExtendedSequence rnd(2, 3, 2);
    for (const auto& alpha : indices_up_to(2, 3))
        for (int beta = 0; beta <= 2; ++beta)
            rnd.set(alpha, beta, std::uniform_real_distribution<double>(-2.0, 2.0)(rng));
    auto back = stieltjes_rescale(stieltjes_rescale(rnd, false), true);
    for (const auto& alpha : indices_up_to(2, 3))
        for (int beta = 0; beta <= 2; ++beta) {
            double a = rnd.value(alpha, beta), b = back.value(alpha, beta);
            CHECK(std::abs(a - b) <= 1e-14 * (1.0 + std::abs(a)));
        }
}

TEST_CASE("check_extension_stieltjes: spec examples") {
    ConstraintSet cs(1);
    AtomicMeasure two(1, {Atom{{Rational(1)}, Rational(1, 2)}, Atom{{Rational(4)}, Rational(1, 2)}});
    auto seq = moments_from_atoms(two, cs, 5, 2);
    CHECK(check_extension_stieltjes(seq, 1e-9, 2, 1).passed);

    auto neg = moments_from_atoms(single_atom(1, {Rational(-1)}, Rational(1)), cs, 5, 2);
    auto rep = check_extension_stieltjes(neg, 1e-9, 2, 1);
    CHECK(!rep.passed);
    bool t_failed = false;
    for (const auto& r : rep.psd_results)
        if (r.label == "localizing t1" && !r.pass) t_failed = true;
    CHECK(t_failed);

    ConstraintSet cs2(2);
    auto at11 = moments_from_atoms(single_atom(2, {Rational(1), Rational(1)}, Rational(1)),
                                   cs2, 5, 2);
    CHECK(check_extension_stieltjes(at11, 1e-9, 2, 1).passed);
}

TEST_CASE("moment matrix rank is bounded by the atom count") {
    std::mt19937 rng(109);
    for (int rep = 0; rep < 5; ++rep) {
        auto [cs, mu] = random_supported_measure(rng, 2, 4);
        auto seq = moments_from_atoms(mu, cs, 8, 2);
        auto M = moment_matrix(seq, 2, 1);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M.entries, Eigen::EigenvaluesOnly);
        int above = 0;
        for (int i = 0; i < es.eigenvalues().size(); ++i)
            if (es.eigenvalues()(i) > 1e-8 * M.entries.trace()) ++above;
        CHECK(above <= static_cast<int>(mu.atoms().size()));
    }
}

TEST_CASE("recurrence violations are linear in the sequence") {
    ConstraintSet cs(1);
    std::mt19937 rng(113);
    auto mk = [&](double bump) {
        auto seq = moments_from_atoms(single_atom(1, {Rational(1)}, Rational(1)), cs, 4, 2);
        seq.set({0}, 1, seq.value({0}, 1) + bump);
        return seq;
    };
    auto s1 = mk(1e-3), s2 = mk(2e-3);
    auto v1 = check_recurrence(s1, cs, 1e-12);
    auto v2 = check_recurrence(s2, cs, 1e-12);
    ExtendedSequence sum(1, 4, 2);
    for (const auto& alpha : indices_up_to(1, 4))
        for (int beta = 0; beta <= 2; ++beta)
            sum.set(alpha, beta, s1.value_exact(alpha, beta) + s2.value_exact(alpha, beta));
    auto vs = check_recurrence(sum, cs, 1e-12);
    double total1 = 0, total2 = 0, totals = 0;
    for (const auto& v : v1) total1 += v.diff;
    for (const auto& v : v2) total2 += v.diff;
    for (const auto& v : vs) totals += v.diff;
    CHECK(totals <= total1 + total2 + 1e-12);
    (void)rng;
}

TEST_CASE("oracle chain: supported atoms always pass the general checker") {
    std::mt19937 rng(127);
    for (int rep = 0; rep < 8; ++rep) {
        int n = 1 + static_cast<int>(rng() % 2);
        auto [cs, mu] = random_supported_measure(rng, n, 4);
        REQUIRE(support_test(mu, cs, 0.0));
        int maxdeg = 0;
        for (const auto& pk : cs.polys()) maxdeg = std::max(maxdeg, pk.degree().value_or(0));
        int A = 4 + 2 * maxdeg;
        auto seq = moments_from_atoms(mu, cs, A, 2);
        auto report = check_extension_general(seq, cs, 1e-9, 1, 1);
        CHECK(report.passed);
        // exact recurrence on rational data
        CHECK(check_recurrence(seq, cs, 0.0).empty());
    }
}
