#pragma once

#include <string>
#include <vector>

#include "intpts/curves.hpp"
#include "intpts/numeric.hpp"

namespace intpts {

struct PointPair {
    Int x, y;
    bool operator==(const PointPair& o) const { return x == o.x && y == o.y; }
};

struct ExponentProfile {
    Real alpha_x = 0;   // |x| = N^alpha
    Real eta = 0;       // tagged below
    enum class EtaRole { Disc, YCoord } eta_role = EtaRole::Disc;
    Real k = 4.5L;
    Real delta = 0.01L;
    Real epsilon = 0;
};

struct CountReport {
    bool has_points = false;
    std::vector<PointPair> points;       // ascending (x, y) when enumerated
    std::vector<std::pair<double, double>> point_exponents;  // (alpha, eta) per point, when measured
    Real upper_bound = -1;               // certified/formula bound; < 0 when absent
    bool bound_constant_dependent = false;
    std::string branch;
    ExponentProfile exponents;
    std::vector<std::string> notes;
    double wall_ms = 0;

    long count() const { return (long)points.size(); }
};

struct EnumerateOptions {
    Int guard = Int(100000000);  // box side cap
    int jobs = 1;
};

// Exact integral-point list: for each x in range, exact perfect-square test
// on the cubic value, both y signs, deterministic ascending order.  The x
// range is first clipped to where the cubic can meet the y window.
CountReport enumerate_box(const ShortCurve& curve, const BoxSpec& box,
                          const EnumerateOptions& opts = {});
CountReport enumerate_box(const LongCurve& curve, const BoxSpec& box,
                          const EnumerateOptions& opts = {});

struct ResidueStats {
    Int p;
    long point_count;  // affine points + infinity
    long x_count;      // distinct affine x-coordinates
    Real alpha_p;      // x_count / p
    Real hasse_residual;  // |point_count - p - 1|
};

// Scan the reduced curve mod p (p not dividing 6*Delta); checks the Hasse
// bound and, for p > 42, the 3/4 density cap.
ResidueStats xresidues_mod_p(const ShortCurve& curve, const Int& p);

// Integer points of y = x^d inside [-N,N]^2: exactly 2 floor(N^{1/d}) + 1.
Int rational_family_count(const Int& N, int d);

}  // namespace intpts
