// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch.hpp>

#include "helpers.hpp"
#include "qcurv/cyclotomic.hpp"
#include "qcurv/qdiff.hpp"

using namespace qcurv;
using testutil::QP;
using testutil::QR;
using testutil::XR;

TEST_CASE("rational canonical form") {
    Rational a(6, 4), b(3, 2);
    CHECK(a == b);
    CHECK((a - b).is_zero());
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK_THROWS_AS(Rational(1) / Rational(0), DivisionByZero);
    Rational s;
    CHECK(Rational(9, 4).try_sqrt(s));
    CHECK(s == Rational(3, 2));
    CHECK_FALSE(Rational(2).try_sqrt(s));
}

TEST_CASE("gfp arithmetic and characteristic mixing") {
    GFp a(3, 7), b(5, 7);
    CHECK((a + b) == GFp(1, 7));
    CHECK((a * b) == GFp(1, 7));
    CHECK(a.inverse() == GFp(5, 7));
    GFp c(1, 5);
    CHECK_THROWS_AS(a + c, MixedCharacteristic);
    // placeholders adopt the modulus
    CHECK((GFp::from_int(10) + GFp(0, 7)) == GFp(3, 7));
}

TEST_CASE("upoly and ratfn canonical invariants") {
    QP p{std::vector<Rational>{Rational(1), Rational(2), Rational(1)}};  // 1+2q+q^2
    QP d{std::vector<Rational>{Rational(1), Rational(1)}};               // 1+q
    QR f(p, d);
    CHECK(f.den().is_one());  // cancels to 1+q
    CHECK(f.num() == d);

    // denominator monic, gcd-free
    QP num{std::vector<Rational>{Rational(2), Rational(2)}};
    QP den{std::vector<Rational>{Rational(4), Rational(2)}};
    QR g(num, den);
    CHECK(g.den().lead().is_one());
    CHECK(g == QR(QP{std::vector<Rational>{Rational(1), Rational(1)}},
                  QP{std::vector<Rational>{Rational(2), Rational(1)}}));

    // canonical uniqueness: a - b == 0 iff identical representation
    std::mt19937 rng(42);
    for (int i = 0; i < 50; ++i) {
        QR a = testutil::rnd_qrat(rng, 3);
        QR b = testutil::rnd_qrat(rng, 3);
        if ((a - b).is_zero()) {
            CHECK(a.num() == b.num());
            CHECK(a.den() == b.den());
        } else {
            CHECK(!(a == b));
        }
        QR sum = a + b;
        CHECK(sum - b == a);
    }
}

TEST_CASE("cyclotomic polynomials") {
    // n = 1 -> q - 1
    CHECK(cyclotomic<Rational>(1) == QP(std::vector<Rational>{Rational(-1), Rational(1)}));
    // n = 6 -> q^2 - q + 1
    CHECK(cyclotomic<Rational>(6) == QP(std::vector<Rational>{Rational(1), Rational(-1), Rational(1)}));
    // prime -> 1 + q + ... + q^{l-1}
    for (long ell : {2L, 3L, 5L, 7L, 11L}) {
        std::vector<Rational> ones(static_cast<std::size_t>(ell), Rational(1));
        CHECK(cyclotomic<Rational>(ell) == QP(std::move(ones)));
    }
    // product formula for all n <= 60
    for (long n = 1; n <= 60; ++n) {
        QP prod = QP::one();
        for (long dd = 1; dd <= n; ++dd)
            if (n % dd == 0) prod *= cyclotomic<Rational>(dd);
        std::vector<Rational> c(static_cast<std::size_t>(n) + 1, Rational(0));
        c[0] = Rational(-1);
        c[static_cast<std::size_t>(n)] = Rational(1);
        CHECK(prod == QP(std::move(c)));
    }
}

TEST_CASE("cyclotomic in characteristic p") {
    using P = QPoly<GFp>;
    // q^4 - 1 factors through Phi_d mod 3
    P phi4 = cyclotomic<GFp>(4);
    CHECK(phi4.degree() == 2);
    CHECK_THROWS_AS(CycloPlace<GFp>::make(6, 3), OrderDivisibleByChar);
    auto pl = CycloPlace<GFp>::make(4, 3);
    auto q = CycloElem<GFp>::q_class(pl);
    CHECK(q.pow(4).is_one());
}

TEST_CASE("reduce_mod_place") {
    auto pl3 = CycloPlace<Rational>::make(3);
    QR q = QR::gen();

    // q^n reduces to 1
    CHECK(reduce_mod_place(q.pow(3), pl3).is_one());
    CHECK(reduce_mod_place(q.pow(6), pl3).is_one());

    // [n]_q reduces to 0 at the place of order n >= 2
    for (long n : {2L, 3L, 4L, 5L, 12L}) {
        auto pl = CycloPlace<Rational>::make(n);
        CHECK(reduce_mod_place(q_number<Rational>(n), pl).is_zero());
    }

    // denominator sharing a factor with Phi_3
    QR bad = QR::one() / (q.pow(3) - QR::one());
    CHECK_THROWS_AS(reduce_mod_place(bad, pl3), BadReduction);

    // ring homomorphism on 200 random pairs with good reduction
    std::mt19937 rng(7);
    int done = 0;
    while (done < 200) {
        QR f = testutil::rnd_qrat(rng, 3);
        QR g = testutil::rnd_qrat(rng, 3);
        try {
            auto rf = reduce_mod_place(f, pl3);
            auto rg = reduce_mod_place(g, pl3);
            CHECK(reduce_mod_place(f + g, pl3) == rf + rg);
            CHECK(reduce_mod_place(f * g, pl3) == rf * rg);
            ++done;
        } catch (const BadReduction&) {
            continue;  // excluded place for this input
        }
    }
}

TEST_CASE("cyclo_valuation") {
    QR q = QR::gen();
    auto pl2 = CycloPlace<Rational>::make(2);

    // |[m]_q!|_v = |phi_v|^{floor(m/kappa_v)}: valuation floor(m/n)
    for (long n : {2L, 3L, 5L}) {
        auto pl = CycloPlace<Rational>::make(n);
        for (long m = 0; m <= 12; ++m)
            CHECK(cyclo_valuation(q_factorial<Rational>(m), pl) == m / n);
    }
    // [5]_q! at order 2: Phi_2 divides exactly [2]_q and [4]_q
    CHECK(cyclo_valuation(q_factorial<Rational>(5), pl2) == 2);
    // q is a unit at every place
    CHECK(cyclo_valuation(q, pl2) == 0);
    CHECK_THROWS_AS(cyclo_valuation(QR::zero(), pl2), ZeroInput);

    // additivity on products
    std::mt19937 rng(11);
    for (int i = 0; i < 40; ++i) {
        QR f = testutil::rnd_qrat(rng, 4);
        QR g = testutil::rnd_qrat(rng, 4);
        if (f.is_zero() || g.is_zero()) continue;
        CHECK(cyclo_valuation(f * g, pl2) == cyclo_valuation(f, pl2) + cyclo_valuation(g, pl2));
    }
}

TEST_CASE("gauss_valuation") {
    std::mt19937 rng(13);
    QR q = QR::gen();

    for (long n : {2L, 3L, 4L}) {
        auto pl = CycloPlace<Rational>::make(n);
        QR qn = q_number<Rational>(n);
        // [n]_q * x + [n]_q^2 has valuation min(1,2) = 1
        XR f(testutil::XP(std::vector<QR>{qn * qn, qn}));
        CHECK(gauss_valuation(f, pl) == 1);
        // x/(q-1) is a unit for n >= 2
        XR g = x_gen<Rational>() / embed_q<Rational>(q - QR::one());
        CHECK(gauss_valuation(g, pl) == 0);
    }

    // multiplicativity (Gauss's lemma), random samples
    auto pl3 = CycloPlace<Rational>::make(3);
    for (int i = 0; i < 30; ++i) {
        XR f = testutil::rnd_xrat(rng, 2, 2);
        XR g = testutil::rnd_xrat(rng, 2, 2);
        if (f.is_zero() || g.is_zero()) continue;
        CHECK(gauss_valuation(f * g, pl3) == gauss_valuation(f, pl3) + gauss_valuation(g, pl3));
    }

    // pair form agrees with the canonical form
    for (int i = 0; i < 20; ++i) {
        XR f = testutil::rnd_xrat(rng, 2, 2);
        if (f.is_zero()) continue;
        auto bf = to_bifrac(f);
        CHECK(gauss_valuation_pair(bf.num, bf.den, pl3) == gauss_valuation(f, pl3));
    }
}
