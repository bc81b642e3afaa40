#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "intpts/lattice.hpp"

using namespace intpts;

static SeriesControl tight() { return SeriesControl{1e-18L, 100000}; }

TEST_CASE("eisenstein lattice sum: symmetric-lattice zeros") {
    SeriesControl loose{1e-3L, 100000};
    // i * Lambda_i = Lambda_i forces G6(i) = 0
    EisensteinValue g6 = eisenstein_G(6, TauPoint::imag_axis(1), loose);
    CHECK(std::abs(g6.value) < 2e-3L);
    // order-6 symmetry at the hexagonal point kills G4
    EisensteinValue g4 = eisenstein_G(4, TauPoint::unit_arc(kPi / 3), loose);
    CHECK(std::abs(g4.value) < 2e-3L);
}

TEST_CASE("lattice sum agrees with the q-expansion route") {
    SeriesControl loose{1e-4L, 2000000};
    for (Real b : {1.0L, 1.37L}) {
        TauPoint tau = TauPoint::imag_axis(b);
        EisensteinValue g6 = eisenstein_G(6, tau, loose);
        Complex ref = eisenstein_G_qexp(6, tau, tight());
        CHECK(std::abs(g6.value - ref) <= 2 * g6.abs_error + 1e-9L);
    }
    TauPoint t3 = TauPoint::half_line(0.93L);
    EisensteinValue g8 = eisenstein_G(8, t3, loose);
    CHECK(std::abs(g8.value - eisenstein_G_qexp(8, t3, tight())) <= 2 * g8.abs_error + 1e-9L);
}

TEST_CASE("lattice sum raises NonConvergence when max_terms is too small") {
    SeriesControl ctl{1e-12L, 1000};
    CHECK_THROWS_AS(eisenstein_G(4, TauPoint::imag_axis(1), ctl), NonConvergence);
}

TEST_CASE("|G_2k| <= 80 on a coarse fundamental-set grid") {
    SeriesControl ctl = tight();
    for (int i = 0; i <= 20; ++i) {
        Real b = 1 + i * 0.45L;
        for (int k2 : {4, 6, 8, 10, 12}) {
            CHECK(std::abs(eisenstein_G_qexp(k2, TauPoint::imag_axis(b), ctl)) <= 80);
            CHECK(std::abs(eisenstein_G_qexp(k2, TauPoint::half_line(0.87L + i * 0.45L), ctl)) <= 80);
            CHECK(std::abs(eisenstein_G_qexp(k2, TauPoint::unit_arc(kPi / 3 + i * kPi / 121), ctl)) <=
                  80);
        }
    }
}

TEST_CASE("modularity relation under tau -> -1/(tau-1) on C2") {
    SeriesControl ctl = tight();
    for (Real th : {kPi / 3 + 0.05L, 1.2L, 1.45L}) {
        Complex tau = std::polar((Real)1, th);
        Complex img = Complex(-1, 0) / (tau - Complex(1, 0));
        for (int k2 : {4, 6}) {
            Complex lhs = eisenstein_G_qexp_at(k2, tau, ctl);
            Complex rhs = eisenstein_G_qexp_at(k2, img, ctl);
            Real factor = std::pow(std::abs(tau - Complex(1, 0)), (Real)-k2);
            CHECK(std::abs(lhs) == doctest::Approx((double)(factor * std::abs(rhs))).epsilon(1e-6));
        }
    }
}

TEST_CASE("wp Laurent series basics") {
    SeriesControl ctl = tight();
    TauPoint tau = TauPoint::imag_axis(1.21L);
    Complex z{0.31L, 0.07L};
    auto [p1, dp1] = wp(tau, z, ctl);
    auto [p2, dp2] = wp(tau, -z, ctl);
    CHECK(std::abs(p1 - p2) < 1e-15L * std::abs(p1));
    CHECK(std::abs(dp1 + dp2) < 1e-15L * std::abs(dp1));

    // pole behaviour: |wp - 1/z^2| <= 100 |z|^2 + tol near 0
    Complex zs{1e-4L, 0};
    auto [ps, dps] = wp(tau, zs, ctl);
    (void)dps;
    CHECK(std::abs(ps - Complex(1, 0) / (zs * zs)) <= 100 * std::abs(zs) * std::abs(zs) + 1e-9L);

    CHECK_THROWS_AS(wp(tau, Complex(0, 0), ctl), DomainError);
}

TEST_CASE("(wp, wp'/2) satisfies the curve equation") {
    SeriesControl ctl = tight();
    for (Real b : {1.0L, 1.8L}) {
        TauPoint tau = TauPoint::imag_axis(b);
        Complex g4 = eisenstein_G_qexp(4, tau, ctl);
        Complex g6 = eisenstein_G_qexp(6, tau, ctl);
        for (Real az : {0.05L, 0.17L, 0.33L, 0.5L}) {
            Complex z{az * 0.9L, az * 0.4L};
            auto [x, dp] = wp(tau, z, ctl);
            Complex y = dp / (Real)2;
            Complex lhs = y * y;
            // with y = wp'/2 the model is y^2 = x^3 - 15 G4 x - 35 G6
            Complex rhs = x * x * x - (Real)15 * g4 * x - (Real)35 * g6;
            CHECK(std::abs(lhs - rhs) <= 1e-8L * std::max<Real>(std::abs(lhs), 1));
        }
    }
}

TEST_CASE("wp q-expansion route matches the Laurent route") {
    SeriesControl ctl = tight();
    TauPoint tau = TauPoint::half_line(1.04L);
    for (Real s : {0.08L, 0.21L, 0.37L}) {
        Complex u{s, s / 5};
        auto [pa, da] = wp(tau, u, ctl);
        auto [pb, db] = wp_qexp(tau, u, ctl);
        CHECK(std::abs(pa - pb) <= 1e-12L * std::max<Real>(std::abs(pa), 1));
        CHECK(std::abs(da - db) <= 1e-12L * std::max<Real>(std::abs(da), 1));
    }
}

TEST_CASE("delta: Jacobi product vs Eisenstein construction") {
    SeriesControl ctl = tight();
    for (int i = 0; i <= 30; ++i) {
        TauPoint taus[3] = {TauPoint::imag_axis(1 + 0.3L * i),
                            TauPoint::unit_arc(kPi / 3 + (kPi / 6 - 1e-3L) * i / 30),
                            TauPoint::half_line(0.87L + 0.3L * i)};
        for (const TauPoint& tau : taus) {
            Complex dj = delta_tau(tau, ctl);
            Complex de = delta_tau_eisenstein(tau, ctl);
            CHECK(std::abs(dj) > 0);
            CHECK(std::abs(dj - de) <= 1e-10L * std::abs(dj));
        }
    }
    // two real components <=> positive discriminant on C1, one (negative) on C3
    CHECK(delta_tau(TauPoint::imag_axis(1.5L), ctl).real() > 0);
    CHECK(delta_tau(TauPoint::half_line(1.5L), ctl).real() < 0);
}

TEST_CASE("j at the corners and on the imaginary axis") {
    SeriesControl ctl = tight();
    Complex ji = j_of_tau(TauPoint::imag_axis(1), ctl);
    CHECK(std::abs(ji - Complex(1728, 0)) <= 1e-8L * 1728);
    Complex j0 = j_of_tau(TauPoint::unit_arc(kPi / 3), ctl);
    CHECK(std::abs(j0) <= 1e-6L);
    for (int i = 0; i <= 12; ++i) {
        Complex j = j_of_tau(TauPoint::imag_axis(1 + 0.5L * i), ctl);
        CHECK(std::abs(j.imag()) <= 1e-9L * std::max<Real>(1, std::abs(j.real())));
        CHECK(j.real() >= 1728 - 1e-6L);
    }
}

TEST_CASE("exact q-expansion of j") {
    std::vector<Int> c = j_qexp_coeffs(64);
    CHECK(c[0] == 744);
    CHECK(c[1] == 196884);
    CHECK(c[2] == Int("21493760"));
    for (int n = 0; n <= 64; ++n) CHECK(c[(std::size_t)n] > 0);
    // Petersson ratio c(n) sqrt(2) n^{3/4} / e^{4 pi sqrt n} in [0.8, 1.2]
    for (int n = 10; n <= 64; ++n) {
        Real ratio = std::exp(log_abs(c[(std::size_t)n]) + 0.5L * std::log((Real)2) +
                              0.75L * std::log((Real)n) - 4 * kPi * std::sqrt((Real)n));
        CHECK(ratio >= 0.8L);
        CHECK(ratio <= 1.2L);
    }
}

TEST_CASE("associate_tau") {
    SeriesControl ctl = tight();
    SUBCASE("boundary values") {
        AssociateResult a = associate_tau(1728, ctl);
        CHECK(a.tau.region == TauRegion::C1);
        CHECK(std::abs(a.tau.value - Complex(0, 1)) < 2e-5L);  // j is quadratic at the arc end
        AssociateResult b = associate_tau(0, ctl);
        CHECK(b.tau.region == TauRegion::C2);
        CHECK(std::abs(b.tau.value - std::polar((Real)1, kPi / 3)) < 1e-4L);
    }
    SUBCASE("round trips") {
        for (Real j : {-1e6L, -1.0L, 1.0L, 1000.0L, 1728.0L, 1e6L}) {
            AssociateResult a = associate_tau(j, ctl);
            Real back = j_of_tau(a.tau, ctl).real();
            CHECK(std::abs(back - j) <= 1e-6L * std::max<Real>(1, std::abs(j)));
        }
    }
}

TEST_CASE("embedding scale power law") {
    SeriesControl ctl = tight();
    TauPoint tau = TauPoint::imag_axis(1.3L);
    Real one = embedding_scale(Int(1000), tau, ctl);
    Real scaled = embedding_scale(Int(1000) * 4096, tau, ctl);
    CHECK(scaled == doctest::Approx((double)(4 * one)).epsilon(1e-12));
    CHECK_THROWS_AS(embedding_scale(Int(0), tau, ctl), SingularCurve);
}

TEST_CASE("real locus paths per region") {
    TauPoint t1 = TauPoint::imag_axis(1.4L);
    CHECK(real_locus(t1, false).size() == 2);  // two real components
    CHECK(real_locus(t1, true).size() == 2);
    TauPoint t3 = TauPoint::half_line(1.2L);
    CHECK(real_locus(t3, false).size() == 1);  // one real component
    CHECK(real_locus(t3, true).size() == 1);
    TauPoint t2 = TauPoint::unit_arc(1.1L);
    CHECK(real_locus(t2, false).size() == 1);
    auto p = real_locus(t2, false)[0];
    CHECK(std::abs(p.dir - (Complex(1, 0) + t2.value)) < 1e-18L);  // t(1 + tau)
}

TEST_CASE("point_to_u round trips") {
    SeriesControl ctl = tight();
    struct Case {
        long A, B;
        long x;
    };
    // one per region plus both twists
    // one per region, both twists, plus the tau = i quartic-twist corner
    for (Case c : {Case{0, 1, 2}, Case{0, -1, 2}, Case{-4, 1, 2}, Case{-4, -1, 3},
                   Case{3, 2, 1}, Case{1, -6, 2}, Case{-2, 1, -1}, Case{1, 0, 2},
                   Case{4, 0, 3}}) {
        ShortCurve E{Int(c.A), Int(c.B)};
        REQUIRE(E.disc() != 0);
        Int fx = Int(c.x) * c.x * c.x + E.A * c.x + E.B;
        REQUIRE(fx >= 0);
        Invariants inv = invariants_of(E);
        Real j = to_real(inv.j);
        TauPoint tau = associate_tau(j, ctl).tau;
        FundamentalPoint u = point_to_u(E, tau, (Real)c.x, ctl);
        CHECK(u.u2 >= -1e-12L);
        Real w2 = embedding_scale(inv.disc, tau, ctl);
        RealStructure rs = resolve_real_structure(E, tau, ctl);
        Real back = real_x_on_locus(rs, w2, tau, u.u, ctl);
        CHECK(std::abs(back - (Real)c.x) <= 1e-6L * std::max<Real>(1, std::abs((Real)c.x)));
    }
}

TEST_CASE("point_to_u at a 2-torsion abscissa lands on a half-period") {
    SeriesControl ctl = tight();
    ShortCurve E{Int(-1), Int(0)};  // roots 0, +-1: full 2-torsion, two components
    Invariants inv = invariants_of(E);
    TauPoint tau = associate_tau(to_real(inv.j), ctl).tau;
    FundamentalPoint u = point_to_u(E, tau, (Real)1, ctl);  // x = 1 is the largest root
    auto [p, dp] = wp_qexp(tau, u.u, ctl);
    (void)p;
    CHECK(std::abs(dp) < 1e-5L);  // wp' vanishes at half-periods
}

TEST_CASE("point_to_u rejects x below the real locus") {
    SeriesControl ctl = tight();
    ShortCurve E{Int(0), Int(1)};  // real locus has x >= -1
    Invariants inv = invariants_of(E);
    TauPoint tau = associate_tau(to_real(inv.j), ctl).tau;
    CHECK_THROWS_AS(point_to_u(E, tau, (Real)-3, ctl), NoRoot);
}
