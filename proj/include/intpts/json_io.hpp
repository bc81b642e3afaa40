#pragma once

#include <string>

#include <json.hpp>

#include "intpts/boundslab.hpp"
#include "intpts/curves.hpp"
#include "intpts/delpezzo.hpp"
#include "intpts/enumerate.hpp"
#include "intpts/heights.hpp"
#include "intpts/lattice.hpp"
#include "intpts/sieve.hpp"

namespace intpts {

using json = nlohmann::json;

// Curve input: {"form":"short","A":"-27","B":"783"} or
// {"form":"long","a":["a1","a2","a3","a4","a6"]}, decimal strings.
struct CurveSpecJson {
    bool is_short = true;
    ShortCurve short_curve;
    LongCurve long_curve;

    LongCurve as_long() const {
        if (!is_short) return long_curve;
        return LongCurve{Int(0), Int(0), Int(0), short_curve.A, short_curve.B};
    }
};

CurveSpecJson curve_from_json(const json& j);
json curve_to_json(const ShortCurve& c);
json curve_to_json(const LongCurve& c);

// {"x":[lo,hi],"y":[lo,hi]} or the flat 4-array [xlo,xhi,ylo,yhi]
BoxSpec box_from_json(const json& j);
json box_to_json(const BoxSpec& b);

// {"x":"...","y":"..."} or [x, y]; rationals as "p/q" strings
RationalPoint point_from_json(const json& j);

DP1Surface surface_from_json(const json& j);

struct RunManifest {
    std::string subcommand;
    json config;
    std::string input_digest;
    std::string tool_version = "intpts 1.0.0";
};

json manifest_to_json(const RunManifest& m);
std::string fnv1a_hex(const std::string& data);

json report_to_json(const CountReport& rep, bool with_timings = false);
json report_to_json(const HeightBreakdown& hb);
json report_to_json(const VerificationReport& vr);
json report_to_json(const DPCountReport& rep, bool with_timings = false);
json report_to_json(const ExponentTable& t);
json tau_to_json(const TauPoint& tau, Real residual);

std::string points_to_csv(const CountReport& rep);
std::string fibers_to_csv(const DPCountReport& rep);
std::string verification_to_csv(const std::vector<VerificationReport>& reps);

}  // namespace intpts
