#include "intpts/json_io.hpp"

#include <sstream>

namespace intpts {

namespace {

Int int_from_json(const json& j) {
    if (j.is_string()) return Int(j.get<std::string>());
    if (j.is_number_integer()) return Int((long)j.get<long long>());
    throw DomainError("expected integer or decimal string");
}

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(Int((long)j.get<long long>()));
    if (j.is_string()) {
        Rat r(j.get<std::string>());
        r.canonicalize();
        return r;
    }
    throw DomainError("expected integer or rational string");
}

std::string real_str(Real v) {
    std::ostringstream os;
    os.precision(17);
    os << (double)v;
    return os.str();
}

}  // namespace

CurveSpecJson curve_from_json(const json& j) {
    if (!j.is_object() || !j.contains("form")) throw DomainError("curve: {\"form\": ...} required");
    CurveSpecJson out;
    std::string form = j.at("form").get<std::string>();
    if (form == "short") {
        out.is_short = true;
        out.short_curve.A = int_from_json(j.at("A"));
        out.short_curve.B = int_from_json(j.at("B"));
    } else if (form == "long") {
        out.is_short = false;
        const json& a = j.at("a");
        if (!a.is_array() || a.size() != 5) throw DomainError("curve: \"a\" must have 5 entries");
        out.long_curve.a1 = int_from_json(a[0]);
        out.long_curve.a2 = int_from_json(a[1]);
        out.long_curve.a3 = int_from_json(a[2]);
        out.long_curve.a4 = int_from_json(a[3]);
        out.long_curve.a6 = int_from_json(a[4]);
    } else {
        throw DomainError("curve: form must be short|long");
    }
    return out;
}

json curve_to_json(const ShortCurve& c) {
    return json{{"form", "short"}, {"A", c.A.get_str()}, {"B", c.B.get_str()}};
}

json curve_to_json(const LongCurve& c) {
    return json{{"form", "long"},
                {"a", {c.a1.get_str(), c.a2.get_str(), c.a3.get_str(), c.a4.get_str(),
                       c.a6.get_str()}}};
}

BoxSpec box_from_json(const json& j) {
    BoxSpec b;
    if (j.is_array() && j.size() == 4) {
        b.x_lo = int_from_json(j[0]);
        b.x_hi = int_from_json(j[1]);
        b.y_lo = int_from_json(j[2]);
        b.y_hi = int_from_json(j[3]);
    } else if (j.is_object() && j.contains("x") && j.contains("y")) {
        b.x_lo = int_from_json(j.at("x")[0]);
        b.x_hi = int_from_json(j.at("x")[1]);
        b.y_lo = int_from_json(j.at("y")[0]);
        b.y_hi = int_from_json(j.at("y")[1]);
    } else {
        throw DomainError("box: {\"x\":[lo,hi],\"y\":[lo,hi]} or [xlo,xhi,ylo,yhi]");
    }
    if (!b.valid()) throw DomainError("box: lo <= hi required");
    return b;
}

json box_to_json(const BoxSpec& b) {
    return json{{"x", {b.x_lo.get_str(), b.x_hi.get_str()}},
                {"y", {b.y_lo.get_str(), b.y_hi.get_str()}}};
}

RationalPoint point_from_json(const json& j) {
    if (j.is_string() && j.get<std::string>() == "infinity") return RationalPoint::at_infinity();
    if (j.is_array() && j.size() == 2)
        return RationalPoint::affine(rat_from_json(j[0]), rat_from_json(j[1]));
    if (j.is_object() && j.contains("x") && j.contains("y"))
        return RationalPoint::affine(rat_from_json(j.at("x")), rat_from_json(j.at("y")));
    throw DomainError("point: [x,y], {\"x\":..,\"y\":..} or \"infinity\"");
}

DP1Surface surface_from_json(const json& j) {
    DP1Surface s;
    const json& f4 = j.at("F4");
    const json& f6 = j.at("F6");
    if (!f4.is_array() || f4.size() != 5 || !f6.is_array() || f6.size() != 7)
        throw DomainError("surface: F4 needs 5 coefficients, F6 needs 7");
    for (int i = 0; i < 5; ++i) s.F4[(std::size_t)i] = int_from_json(f4[(std::size_t)i]);
    for (int i = 0; i < 7; ++i) s.F6[(std::size_t)i] = int_from_json(f6[(std::size_t)i]);
    return s;
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

json manifest_to_json(const RunManifest& m) {
    return json{{"subcommand", m.subcommand},
                {"config", m.config},
                {"input_digest", m.input_digest},
                {"tool_version", m.tool_version}};
}

json report_to_json(const CountReport& rep, bool with_timings) {
    json j;
    j["branch"] = rep.branch;
    j["has_points"] = rep.has_points;
    if (rep.has_points) {
        json pts = json::array();
        for (const PointPair& p : rep.points) pts.push_back({p.x.get_str(), p.y.get_str()});
        j["points"] = pts;
        j["count"] = rep.points.size();
    }
    if (!rep.point_exponents.empty()) {
        json pe = json::array();
        for (auto& [a, e] : rep.point_exponents) pe.push_back({a, e});
        j["point_exponents"] = pe;
    }
    if (rep.upper_bound >= 0) {
        j["upper_bound"] = (double)rep.upper_bound;
        j["bound_constant_dependent"] = rep.bound_constant_dependent;
    }
    j["exponents"] = {{"alpha_x", (double)rep.exponents.alpha_x},
                      {"eta", (double)rep.exponents.eta},
                      {"eta_role",
                       rep.exponents.eta_role == ExponentProfile::EtaRole::Disc ? "disc" : "ycoord"},
                      {"k", (double)rep.exponents.k},
                      {"delta", (double)rep.exponents.delta},
                      {"epsilon", (double)rep.exponents.epsilon}};
    j["notes"] = rep.notes;
    if (with_timings) j["timings"] = {{"wall_ms", rep.wall_ms}};
    return j;
}

json report_to_json(const HeightBreakdown& hb) {
    json fps = json::array();
    for (const LocalHeight& lp : hb.finite_parts)
        fps.push_back({{"p", lp.p.get_str()},
                       {"lambda_p", (double)lp.value},
                       {"coeff_logp", lp.coeff_logp.get_str()},
                       {"closed_form", lp.closed_form}});
    return json{{"lambda_inf", (double)hb.lambda_inf},
                {"finite_parts", fps},
                {"tate_bound", (double)hb.tate_bound},
                {"total", (double)hb.total},
                {"oracle", (double)hb.oracle},
                {"normalization_offset", (double)hb.normalization_offset},
                {"residual", (double)hb.residual}};
}

json report_to_json(const VerificationReport& vr) {
    json j{{"check_id", vr.check_id},
           {"samples", vr.samples},
           {"worst_case", (double)vr.worst_case},
           {"threshold", (double)vr.threshold},
           {"passed", vr.passed},
           {"grid", vr.grid},
           {"details", vr.details}};
    if (vr.has_empirical) {
        j["empirical_constant"] = (double)vr.empirical_constant;
        j["stability_delta"] = (double)vr.stability_delta;
    }
    return j;
}

json report_to_json(const DPCountReport& rep, bool with_timings) {
    json fibers = json::array();
    for (const DPFiberEntry& e : rep.per_fiber)
        fibers.push_back({{"u", e.u}, {"v", e.v}, {"count", e.count}, {"singular", e.singular}});
    json j{{"N", rep.N.get_str()},
           {"total", rep.total.get_str()},
           {"per_fiber", fibers},
           {"disc_zero_count", rep.disc_zero_count},
           {"disc_zero_reference", rep.disc_zero_reference},
           {"singular_total", rep.singular_total.get_str()},
           {"degenerate", rep.degenerate}};
    if (with_timings) j["timings"] = {{"wall_ms", rep.wall_ms}};
    return j;
}

json report_to_json(const ExponentTable& t) {
    json rows = json::array();
    for (const ExponentRow& r : t.rows) rows.push_back({{"N", r.N.get_str()}, {"count", r.count.get_str()}});
    return json{{"rows", rows},
                {"fitted_slope", (double)t.fitted_slope},
                {"reference", (double)t.reference},
                {"closed_form_ok", t.closed_form_ok},
                {"details", t.details}};
}

json tau_to_json(const TauPoint& tau, Real residual) {
    const char* region = tau.region == TauRegion::C1 ? "C1"
                         : tau.region == TauRegion::C2 ? "C2"
                                                       : "C3";
    return json{{"re", real_str(tau.value.real())},
                {"im", real_str(tau.value.imag())},
                {"region", region},
                {"q_re", real_str(tau.q.real())},
                {"q_im", real_str(tau.q.imag())},
                {"residual", real_str(residual)}};
}

std::string points_to_csv(const CountReport& rep) {
    std::ostringstream os;
    os << "x,y\n";
    for (const PointPair& p : rep.points) os << p.x.get_str() << "," << p.y.get_str() << "\n";
    return os.str();
}

std::string fibers_to_csv(const DPCountReport& rep) {
    std::ostringstream os;
    os << "u,v,count,singular\n";
    for (const DPFiberEntry& e : rep.per_fiber)
        os << e.u << "," << e.v << "," << e.count << "," << (e.singular ? 1 : 0) << "\n";
    return os.str();
}

std::string verification_to_csv(const std::vector<VerificationReport>& reps) {
    std::ostringstream os;
    os << "check_id,samples,worst_case,threshold,passed,empirical_constant\n";
    for (const VerificationReport& r : reps)
        os << r.check_id << "," << r.samples << "," << (double)r.worst_case << ","
           << (double)r.threshold << "," << (r.passed ? 1 : 0) << ","
           << (r.has_empirical ? std::to_string((double)r.empirical_constant) : "") << "\n";
    return os.str();
}

}  // namespace intpts
