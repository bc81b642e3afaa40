#pragma once

#include <utility>
#include <vector>

#include "intpts/curves.hpp"
#include "intpts/lattice.hpp"
#include "intpts/numeric.hpp"

namespace intpts {

// Exact rational point; the on-curve identity holds exactly or not at all.
struct RationalPoint {
    bool infinity = true;
    Rat x, y;

    static RationalPoint at_infinity() { return {}; }
    static RationalPoint affine(Rat px, Rat py) {
        RationalPoint p;
        p.infinity = false;
        p.x = std::move(px);
        p.y = std::move(py);
        return p;
    }
    bool integral() const {
        return infinity || (x.get_den() == 1 && y.get_den() == 1);
    }
};

bool on_curve(const ShortCurve& curve, const RationalPoint& P);
RationalPoint group_negate(const RationalPoint& P);
RationalPoint group_add(const ShortCurve& curve, const RationalPoint& P, const RationalPoint& Q);
RationalPoint scalar_multiple(const ShortCurve& curve, long n, const RationalPoint& P);

struct DoublingOptions {
    int n_max = 24;
    Real tol = 1e-6L;
    long digit_budget = 20000000;  // decimal digits cap on the x-coordinates
};

// hhat(P) = (1/2) lim 4^{-n} h_x(2^n P) with h_x = log max(|num x|, |den x|),
// iterated until successive estimates differ by < tol (then geometrically
// extrapolated), or 2^n P = O (torsion: 0).
Real canonical_height_doubling(const ShortCurve& curve, const RationalPoint& P,
                               const DoublingOptions& opts = {});

// B2(x) = x^2 - x + 1/6
inline Real b2_polynomial(Real x) { return x * x - x + (Real)1 / 6; }

// lambda_inf(u) = -(1/2) B2(u2) log|q| - log|1-t| - log|prod (1-q^n t)(1-q^n t^{-1})|
// after moving u to the u2 in [0,1/2] representative.
Real lambda_infty(const TauPoint& tau, const FundamentalPoint& u, const SeriesControl& ctl);

struct LocalHeight {
    Int p;
    Rat coeff_logp;   // lambda_p = coeff_logp * log p, exact
    Real value;
    bool closed_form; // false when the tail was truncated instead of cycle-closed
};

// Exact non-archimedean local heights at the primes dividing Delta_E, for an
// integral point, in the normalization that sums with lambda_infty to hhat.
// Good-reduction primes are omitted (they contribute 0).
std::vector<LocalHeight> finite_local_heights(const ShortCurve& curve, const RationalPoint& P);

struct HeightBreakdown {
    Real lambda_inf = 0;
    std::vector<LocalHeight> finite_parts;
    Real tate_bound = 0;            // (1/12) log|Delta_E|
    Real total = 0;                 // lambda_inf + sum of finite parts
    Real oracle = 0;                // doubling-limit cross-check
    Real normalization_offset = 0;  // calibrated multiple of log|Delta_E|
    Real residual = 0;              // |total + offset*log|Delta|| - oracle|
};

HeightBreakdown canonical_height_decomposed(const ShortCurve& curve, const RationalPoint& P,
                                            const SeriesControl& ctl);

// hhat through the local decomposition only (no doubling cross-check):
// lambda_inf + sum lambda_p + offset*log|Delta|.  For integral points.
Real canonical_height_fast(const ShortCurve& curve, const RationalPoint& P,
                           const SeriesControl& ctl);

struct CalibrationStats {
    Real mean = 0;
    Real stddev = 0;
    int samples = 0;
};

// Per-point offsets (oracle - total)/log|Delta_E| over a fixed 20-curve
// corpus; the mean is the normalization_offset applied by
// canonical_height_decomposed (computed once, cached).
CalibrationStats measure_normalization_offset(const SeriesControl& ctl);
Real calibrated_normalization_offset(const SeriesControl& ctl);

// The fixed calibration corpus (20 nonsingular small curves).
std::vector<ShortCurve> calibration_corpus();

}  // namespace intpts
