#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "intpts/json_io.hpp"
#include "intpts/pipeline.hpp"

namespace py = pybind11;
using namespace intpts;

namespace {

ShortCurve short_curve(const std::string& A, const std::string& B) {
    return ShortCurve{Int(A), Int(B)};
}

std::string run_json(const std::string& kind, const std::string& payload) {
    json in = json::parse(payload);
    if (kind == "enumerate") {
        CurveSpecJson cs = curve_from_json(in.at("curve"));
        BoxSpec box = box_from_json(in.at("box"));
        CountReport rep = cs.is_short ? enumerate_box(cs.short_curve, box)
                                      : enumerate_box(cs.long_curve, box);
        return report_to_json(rep).dump();
    }
    if (kind == "height") {
        CurveSpecJson cs = curve_from_json(in.at("curve"));
        RationalPoint P = point_from_json(in.at("point"));
        SeriesControl ctl;
        return report_to_json(canonical_height_decomposed(cs.short_curve, P, ctl)).dump();
    }
    if (kind == "delpezzo") {
        DP1Surface s = surface_from_json(in.at("surface"));
        return report_to_json(count_S_N(s, Int(in.at("N").get<long>()))).dump();
    }
    throw DomainError("run_json: unknown kind " + kind);
}

}  // namespace

PYBIND11_MODULE(_intpts, m) {
    m.doc() = "integral points on elliptic curves: exact enumeration, canonical heights, "
              "large-sieve certificates";

    py::class_<ShortCurve>(m, "ShortCurve")
        .def(py::init(&short_curve), py::arg("A"), py::arg("B"))
        .def_property_readonly("A", [](const ShortCurve& c) { return c.A.get_str(); })
        .def_property_readonly("B", [](const ShortCurve& c) { return c.B.get_str(); })
        .def("disc", [](const ShortCurve& c) { return c.disc().get_str(); })
        .def("__repr__", [](const ShortCurve& c) {
            return "ShortCurve(A=" + c.A.get_str() + ", B=" + c.B.get_str() + ")";
        });

    m.def("invariants", [](const ShortCurve& c) {
        Invariants inv = invariants_of(c);
        py::dict d;
        d["disc"] = inv.disc.get_str();
        d["c4"] = inv.c4.get_str();
        d["singular"] = inv.singular;
        if (!inv.singular) d["j"] = inv.j.get_str();
        return d;
    });

    m.def(
        "enumerate_box",
        [](const ShortCurve& c, long x_lo, long x_hi, long y_lo, long y_hi) {
            CountReport rep =
                enumerate_box(c, BoxSpec{Int(x_lo), Int(x_hi), Int(y_lo), Int(y_hi)});
            std::vector<std::pair<std::string, std::string>> out;
            for (const PointPair& p : rep.points) out.push_back({p.x.get_str(), p.y.get_str()});
            return out;
        },
        py::arg("curve"), py::arg("x_lo"), py::arg("x_hi"), py::arg("y_lo"), py::arg("y_hi"));

    m.def("canonical_height", [](const ShortCurve& c, const std::string& x, const std::string& y) {
        RationalPoint P = RationalPoint::affine(Rat(x), Rat(y));
        return (double)canonical_height_doubling(c, P);
    });

    m.def("height_breakdown", [](const ShortCurve& c, const std::string& x, const std::string& y) {
        SeriesControl ctl;
        RationalPoint P = RationalPoint::affine(Rat(x), Rat(y));
        return report_to_json(canonical_height_decomposed(c, P, ctl)).dump();
    });

    m.def("associate_tau", [](double j) {
        SeriesControl ctl;
        AssociateResult ar = associate_tau((Real)j, ctl);
        return py::make_tuple((double)ar.tau.value.real(), (double)ar.tau.value.imag(),
                              (double)ar.residual);
    });

    m.def("j_of_tau", [](double re, double im) {
        SeriesControl ctl;
        TauPoint t;
        if (std::abs(re - 0.5) < 1e-12)
            t = TauPoint::half_line((Real)im);
        else if (std::abs(re) < 1e-12)
            t = TauPoint::imag_axis((Real)im);
        else
            t = TauPoint::unit_arc((Real)std::atan2(im, re));
        return (double)j_of_tau(t, ctl).real();
    });

    m.def("j_qexp_coeffs", [](int n_max) {
        std::vector<std::string> out;
        for (const Int& c : j_qexp_coeffs(n_max)) out.push_back(c.get_str());
        return out;
    });

    m.def("sieve_bound", [](const ShortCurve& c, long lo, long hi, bool exact_alpha) {
        CertifiedInterval ci = sieve_certified_interval(c, Int(lo), Int(hi), exact_alpha);
        return (double)ci.bound;
    });

    m.def("main_pipeline", [](const ShortCurve& c, long N, double delta, double k) {
        PipelineOptions po;
        po.delta = (Real)delta;
        po.k = (Real)k;
        LongCurve lc{Int(0), Int(0), Int(0), c.A, c.B};
        return report_to_json(origin_box_pipeline(lc, Int(N), po)).dump();
    });

    m.def("run_check", [](const std::string& id) {
        GridSpec g;
        g.tau_per_arc = 60;  // smoke-scale default
        return report_to_json(run_check(id, g)).dump();
    });

    m.def("run_json", &run_json, py::arg("kind"), py::arg("payload"),
          "dispatch a JSON request: enumerate | height | delpezzo");
}
