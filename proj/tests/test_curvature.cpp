// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch.hpp>

#include "helpers.hpp"
#include "qcurv/curvature.hpp"
#include "qcurv/parse.hpp"

using namespace qcurv;
using testutil::QR;
using testutil::XR;
using Sys = QDiffSystem<Rational>;

namespace {
XR expr(const std::string& s) { return parse_expr(s); }
PlacePtr<Rational> place(long n) { return CycloPlace<Rational>::make(n); }
}  // namespace

TEST_CASE("curvature values") {
    // theta at order 3: q^6 x^3 reduces to x^3
    auto c = curvature(Sys::scalar(expr("q*x")), place(3));
    auto x3 = reduce_xrat(expr("x^3"), place(3));
    CHECK(c.at(0, 0) == x3);

    // telescoping example reduces to 1 at every good place
    for (long n : {2L, 3L, 7L, 12L})
        CHECK(curvature(Sys::scalar(expr("(q*x+1)/(x+1)")), place(n)).at(0, 0).is_one());

    // constant 2: curvature 2^n
    auto c2 = curvature(Sys::scalar(expr("2")), place(5));
    CHECK(c2.at(0, 0) == reduce_xrat(expr("32"), place(5)));
}

TEST_CASE("classify") {
    CHECK(classify(Sys::identity(2), place(4)).kind == CurvatureKind::Zero);

    // unipotent with x: iterate [[1, [n]_q x],[0,1]] reduces to Id
    Matrix<XR> m(2, 2);
    m.at(0, 0) = expr("1");
    m.at(0, 1) = expr("x");
    m.at(1, 0) = expr("0");
    m.at(1, 1) = expr("1");
    for (long n : {2L, 3L, 5L, 8L})
        CHECK(classify(Sys(2, m), place(n)).kind == CurvatureKind::Zero);

    // a = 2: 2^n is never 1 in Q[q]/Phi_n
    for (long n : {2L, 3L, 6L})
        CHECK(classify(Sys::scalar(expr("2")), place(n)).kind == CurvatureKind::Other);

    // constant unipotent: curvature [[1, n],[0,1]], nilpotent of index 2
    Matrix<XR> u(2, 2);
    u.at(0, 0) = expr("1");
    u.at(0, 1) = expr("1");
    u.at(1, 0) = expr("0");
    u.at(1, 1) = expr("1");
    auto cls = classify(Sys(2, u), place(5));
    CHECK(cls.kind == CurvatureKind::Nilpotent);
    CHECK(cls.nilpotent_index == 2);

    // bad reduction is a class, not an error
    CHECK(classify(Sys::scalar(expr("1/(q^3-1)")), place(3)).kind == CurvatureKind::BadReduction);
}

TEST_CASE("incremental and full modes agree") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 3; ++trial) {
        Sys sys(2, testutil::rnd_invertible(rng, 2, 1, 1));
        for (long n : {2L, 3L, 5L}) {
            try {
                auto inc = curvature(sys, place(n), CurvatureMode::Incremental);
                auto full = curvature(sys, place(n), CurvatureMode::Full);
                CHECK(inc == full);
            } catch (const BadReduction&) {
                continue;
            }
        }
    }
}

TEST_CASE("zero-curvature criterion equivalence A vs G") {
    // A_n = Id mod Phi_n iff G_n = 0 mod Phi_n (the four equivalent
    // conditions); G_n = 0 at the place means every entry has positive
    // Gauss valuation there.
    auto g_vanishes = [](const Sys& sys, long n) {
        auto seq = g_matrices_pair(sys, n);
        auto pl = place(n);
        if (seq.num_of(n).is_zero()) return true;
        return gauss_valuation_matrix(seq.num_of(n), seq.den_of(n), pl) >= 1;
    };
    std::vector<Sys> samples;
    samples.push_back(Sys::scalar(expr("(q*x+1)/(x+1)")));
    samples.push_back(Sys::scalar(expr("q*x")));
    samples.push_back(Sys::scalar(expr("2")));
    samples.push_back(Sys::scalar(expr("0-1")));
    for (const auto& sys : samples)
        for (long n : {2L, 3L, 4L}) {
            bool a_zero = classify(sys, place(n)).kind == CurvatureKind::Zero;
            CHECK(a_zero == g_vanishes(sys, n));
        }
}

TEST_CASE("scan") {
    // gauge of the identity by T = x+1: all good places Zero
    Matrix<XR> t(1, 1);
    t.at(0, 0) = expr("x+1");
    Sys sys = gauge_transform(Sys::identity(1), t);
    auto rep = curvature_scan(sys, 2, 30);
    CHECK(rep.count_zero >= 25);
    CHECK(rep.count_other == 0);
    CHECK(rep.count_nilpotent == 0);
    CHECK(rep.all_good_places_zero());

    // theta: all Other
    auto rep_theta = curvature_scan(Sys::scalar(expr("q*x")), 2, 30);
    CHECK(rep_theta.count_other == 29);
    CHECK(rep_theta.first_nonzero_good_place() == 2);

    // a = -1: Zero exactly at even orders
    auto rep_neg = curvature_scan(Sys::scalar(expr("0-1")), 2, 30);
    for (const auto& [n, cls] : rep_neg.classes)
        CHECK(cls.kind == (n % 2 == 0 ? CurvatureKind::Zero : CurvatureKind::Other));

    // prime-only mode
    auto rep_p = curvature_scan(Sys::scalar(expr("q*x")), 2, 30, {true});
    for (const auto& [n, cls] : rep_p.classes) CHECK(is_prime_long(n));
    CHECK(rep_p.classes.size() == 10);

    // report covers every order exactly once, in order
    long expect = 2;
    for (const auto& [n, cls] : rep_theta.classes) CHECK(n == expect++);
}

TEST_CASE("gauge invariance of classification") {
    std::mt19937 rng(43);
    Matrix<XR> t = testutil::rnd_invertible(rng, 2, 1, 0);
    Sys sys(2, testutil::rnd_invertible(rng, 2, 1, 1));
    Sys gauged = gauge_transform(sys, t);
    for (long n : {2L, 3L, 5L, 7L}) {
        CurvatureClass a, b;
        try {
            a = classify(sys, place(n));
            b = classify(gauged, place(n));
        } catch (const BadReduction&) {
            continue;
        }
        if (a.is_bad() || b.is_bad()) continue;  // T itself may reduce badly
        CHECK(a == b);
    }
}

TEST_CASE("curvature functoriality") {
    std::mt19937 rng(47);
    Sys s1(2, testutil::rnd_invertible(rng, 2, 1, 1));
    Sys s2 = Sys::scalar(expr("q*x"));
    for (long n : {2L, 3L}) {
        auto pl = place(n);
        try {
            CHECK(curvature(tensor(s1, s2), pl) == kron(curvature(s1, pl), curvature(s2, pl)));
            CHECK(curvature(dual(s1), pl) == curvature(s1, pl).inverse().transpose());
        } catch (const BadReduction&) {
            continue;
        }
    }
}

TEST_CASE("iterative structure check") {
    // trivial system: every G_m = 0
    auto chk = iterative_structure_check(Sys::identity(2), place(3), 20);
    CHECK(chk.ok);

    // telescoping example at order 3 through m = 12
    auto chk2 = iterative_structure_check(Sys::scalar(expr("(q*x+1)/(x+1)")), place(3), 12);
    CHECK(chk2.ok);

    // theta at order 2 fails by m = 8
    auto chk3 = iterative_structure_check(Sys::scalar(expr("q*x")), place(2), 8);
    CHECK_FALSE(chk3.ok);
    CHECK(chk3.first_failure <= 8);
}
