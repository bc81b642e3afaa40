#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "intpts/json_io.hpp"

using namespace intpts;

TEST_CASE("curve JSON round trip") {
    json j = json::parse(R"({"form":"short","A":"-27","B":"783"})");
    CurveSpecJson cs = curve_from_json(j);
    REQUIRE(cs.is_short);
    CHECK(cs.short_curve.A == -27);
    CHECK(cs.short_curve.B == 783);
    CHECK(curve_to_json(cs.short_curve) == j);

    json jl = json::parse(R"({"form":"long","a":["0","1","0","0","1"]})");
    CurveSpecJson cl = curve_from_json(jl);
    REQUIRE(!cl.is_short);
    CHECK(cl.long_curve.a2 == 1);
    CHECK(cl.long_curve.a6 == 1);
    CHECK(curve_to_json(cl.long_curve) == jl);

    // arbitrary precision survives
    std::string big = "123456789012345678901234567890";
    json jb = json{{"form", "short"}, {"A", big}, {"B", "1"}};
    CHECK(curve_from_json(jb).short_curve.A == Int(big));

    CHECK_THROWS_AS(curve_from_json(json::parse(R"({"form":"weird"})")), DomainError);
}

TEST_CASE("box JSON accepts both shapes") {
    BoxSpec b1 = box_from_json(json::parse(R"([-10,10,-10,10])"));
    CHECK(b1.x_lo == -10);
    CHECK(b1.y_hi == 10);
    BoxSpec b2 = box_from_json(json::parse(R"({"x":[-10,10],"y":[-10,10]})"));
    CHECK(b2.x_lo == b1.x_lo);
    CHECK_THROWS_AS(box_from_json(json::parse(R"([10,-10,0,0])")), DomainError);
    json round = box_to_json(b1);
    BoxSpec b3 = box_from_json(round);
    CHECK(b3.x_lo == b1.x_lo);
    CHECK(b3.y_lo == b1.y_lo);
}

TEST_CASE("point JSON") {
    RationalPoint p = point_from_json(json::parse(R"(["3","5"])"));
    CHECK(p.x == 3);
    CHECK(p.y == 5);
    RationalPoint q = point_from_json(json::parse(R"({"x":"1/2","y":"-3/8"})"));
    CHECK(q.x == Rat(1, 2));
    CHECK(q.y == Rat(-3, 8));
    CHECK(point_from_json(json("infinity")).infinity);
}

TEST_CASE("surface JSON") {
    DP1Surface s = surface_from_json(
        json::parse(R"({"F4":[1,0,0,0,1],"F6":[1,0,0,0,0,0,1]})"));
    CHECK(s.F4[0] == 1);
    CHECK(s.F6[6] == 1);
    CHECK_THROWS_AS(surface_from_json(json::parse(R"({"F4":[1],"F6":[1]})")), DomainError);
}

TEST_CASE("manifests digest their inputs deterministically") {
    RunManifest m;
    m.subcommand = "enumerate";
    m.config = json{{"method", "brute"}};
    m.input_digest = fnv1a_hex("abc");
    CHECK(fnv1a_hex("abc") == fnv1a_hex("abc"));
    CHECK(fnv1a_hex("abc") != fnv1a_hex("abd"));
    json j = manifest_to_json(m);
    CHECK(j.at("subcommand") == "enumerate");
    CHECK(j.at("input_digest") == fnv1a_hex("abc"));
}

TEST_CASE("count report serialization round-trips through the schema") {
    CountReport rep;
    rep.has_points = true;
    rep.points = {{Int(-1), Int(0)}, {Int(2), Int(3)}};
    rep.upper_bound = 12.5L;
    rep.branch = "brute";
    rep.notes.push_back("test");
    json j = report_to_json(rep, false);
    CHECK(j.at("count") == 2);
    CHECK(j.at("points")[1][0] == "2");
    CHECK(!j.contains("timings"));  // deterministic output by default
    json jt = report_to_json(rep, true);
    CHECK(jt.contains("timings"));
    // parses back
    json reparsed = json::parse(j.dump());
    CHECK(reparsed == j);
}

TEST_CASE("csv emitters") {
    CountReport rep;
    rep.has_points = true;
    rep.points = {{Int(7), Int(-2)}};
    std::string csv = points_to_csv(rep);
    CHECK(csv == "x,y\n7,-2\n");
}
