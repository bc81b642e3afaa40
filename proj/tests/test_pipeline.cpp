#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "intpts/pipeline.hpp"

using namespace intpts;

TEST_CASE("ev_bound_for_box builds the printed coefficient multiset") {
    // C = 2, N = 10, eps = 0: norm = |C| N^2 = 200, bound = 10^{2/3} 200^{-1/9} + 1
    LongCurve c{Int(0), Int(2), Int(0), Int(0), Int(0)};
    EvBoxBound ev = ev_bound_for_box(c, Int(10), 0);
    CHECK(ev.norm == 200);
    Real expect = std::pow((Real)10, 2.0L / 3) * std::pow((Real)200, -1.0L / 9) + 1;
    CHECK(ev.bound == doctest::Approx((double)expect).epsilon(1e-12));

    // C = D = F = 0: norm 1, bound (N^{2/3} + 1) N^eps
    LongCurve z{Int(0), Int(0), Int(0), Int(0), Int(0)};
    EvBoxBound ev0 = ev_bound_for_box(z, Int(10), 0.25L);
    CHECK(ev0.norm == 1);
    CHECK(ev0.bound ==
          doctest::Approx((double)((std::pow((Real)10, 2.0L / 3) + 1) * std::pow((Real)10, 0.25L))));

    // |C| >= N^{1+6eps} flags the large-C branch
    LongCurve big{Int(0), Int(10000), Int(0), Int(0), Int(0)};
    CHECK(ev_bound_for_box(big, Int(10), 0.1L).big_c_branch);
    CHECK(!ev_bound_for_box(c, Int(10), 0.1L).big_c_branch);
}

TEST_CASE("k tradeoff is minimized at k = 9/2") {
    Real delta = 0.05L;
    auto value = [&](Real k) {
        auto [e1, e2] = k_tradeoff_exponents(delta, k);
        return std::max(e1, e2);
    };
    Real best = value(4.5L);
    for (Real k = 3.1L; k <= 8; k += 0.1L) CHECK(value(k) >= best - 1e-12L);
    // and the two exponents balance exactly at 9/2
    auto [e1, e2] = k_tradeoff_exponents(delta, 4.5L);
    CHECK(e1 == doctest::Approx((double)e2).epsilon(1e-12));
}

TEST_CASE("main pipeline: large-C branch") {
    LongCurve c{Int(0), Int(100000000), Int(0), Int(3), Int(1)};  // |C| = N^2 at N = 10^4
    PipelineOptions po;
    po.cross_check = false;
    CountReport rep = origin_box_pipeline(c, Int(10000), po);
    CHECK(rep.branch == "ev-large-C");
    CHECK(rep.upper_bound >= 0);
    CHECK(rep.bound_constant_dependent);
}

TEST_CASE("main pipeline: soundness on small instances") {
    for (long b : {1L, 17L, -11L}) {
        LongCurve c{Int(0), Int(0), Int(0), Int(0), Int(b)};
        PipelineOptions po;
        CountReport rep = origin_box_pipeline(c, Int(1000), po);
        REQUIRE(rep.has_points);
        CHECK((Real)rep.count() <= rep.upper_bound + 1e-9L);
        CHECK(rep.bound_constant_dependent);  // packing term is constant-dependent
    }
}

TEST_CASE("main pipeline rejects bad input") {
    CHECK_THROWS_AS(
        origin_box_pipeline(LongCurve{Int(1), Int(0), Int(0), Int(0), Int(1)}, Int(100)),
        UnsupportedForm);
    CHECK_THROWS_AS(
        origin_box_pipeline(LongCurve{Int(0), Int(0), Int(0), Int(0), Int(1)}, Int(5)),
        DomainError);
    // nodal cubic: y^2 = x^3 + x^2 has a repeated root
    CHECK_THROWS_AS(
        origin_box_pipeline(LongCurve{Int(0), Int(1), Int(0), Int(0), Int(0)}, Int(100)),
        SingularCurve);
}

TEST_CASE("arbitrary box: origin delegation") {
    ShortCurve E{Int(3), Int(5)};
    CountReport rep = arbitrary_box_pipeline(E, BoxSpec{Int(-100), Int(100), Int(-100), Int(100)},
                                             0.05L);
    CHECK(rep.branch.rfind("origin-delegation", 0) == 0);
}

TEST_CASE("arbitrary box: far centre branch") {
    ShortCurve E{Int(3), Int(5)};
    Int cx = Int(10000);  // N = 10 here, so 10^4 = N^4 is far beyond N^{3+18eps}
    BoxSpec box{cx - 10, cx + 10, Int(-10), Int(10)};
    CountReport rep = arbitrary_box_pipeline(E, box, 0.01L);
    CHECK(rep.branch == "far-centre-ev");
    REQUIRE(rep.has_points);
    CHECK(rep.bound_constant_dependent);
}

TEST_CASE("arbitrary box: hypotheses unmet flags and falls back") {
    ShortCurve E{Int(-4), Int(1)};  // A < 0
    BoxSpec box{Int(-20), Int(40), Int(-30), Int(30)};
    CountReport rep = arbitrary_box_pipeline(E, box, 0.05L);
    REQUIRE(rep.has_points);
    bool flagged = false;
    for (const std::string& n : rep.notes) flagged = flagged || n.find("hypotheses unmet") != std::string::npos;
    CHECK(flagged);
    // brute fallback stays exact
    CountReport brute = enumerate_box(E, box);
    CHECK(rep.points == brute.points);
}

TEST_CASE("arbitrary box: slope ladder carries exponents and stays sound") {
    ShortCurve E{Int(6), Int(-5)};  // A > 0, j > 0
    BoxSpec box{Int(5), Int(205), Int(3), Int(203)};
    CountReport rep = arbitrary_box_pipeline(E, box, 0.05L);
    REQUIRE(rep.has_points);
    if (rep.upper_bound >= 0 && !rep.bound_constant_dependent)
        CHECK((Real)rep.count() <= rep.upper_bound);
    CHECK(rep.exponents.eta_role == ExponentProfile::EtaRole::YCoord);
    // no slope-exponent violations recorded
    for (const std::string& n : rep.notes) CHECK(n.find("FAILED") == std::string::npos);
}
