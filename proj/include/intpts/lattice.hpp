#pragma once

#include <utility>
#include <vector>

#include "intpts/curves.hpp"
#include "intpts/numeric.hpp"

namespace intpts {

// The three arcs of the real-j fundamental set:
//   C1 = { ib : b >= 1 },  C2 = { e^{i theta} : pi/3 <= theta < pi/2 },
//   C3 = { 1/2 + ib : b > sqrt(3)/2 }.
enum class TauRegion { C1, C2, C3 };

struct TauPoint {
    Complex value;
    TauRegion region;
    Complex q;  // e^{2 pi i tau}, cached at construction

    static TauPoint imag_axis(Real b);   // C1
    static TauPoint unit_arc(Real th);   // C2 (th = pi/2 accepted as closure point)
    static TauPoint half_line(Real b);   // C3

    Real im() const { return value.imag(); }
};

// u = u1 + u2*tau with u1, u2 in (-1/2, 1/2]; t = e^{2 pi i u} cached.
struct FundamentalPoint {
    Real u1 = 0, u2 = 0;
    Complex u{0, 0};
    Complex t{1, 0};
};

FundamentalPoint make_fundamental(const TauPoint& tau, Complex u_raw);

// the u -> -u representative with u2 in [0, 1/2] (the one the archimedean
// series statements are phrased for)
FundamentalPoint fold_representative(const TauPoint& tau, const FundamentalPoint& u);

struct EisensteinValue {
    Complex value;
    Real abs_error;  // estimated truncation bound
    long terms;
};

// Weight-k2 Eisenstein value as the raw lattice sum over |m|,|n| <= R with
// R chosen from the shell tail bound 16 R^{2-k2}.  Slow; the honest route.
EisensteinValue eisenstein_G(int k2, const TauPoint& tau, const SeriesControl& ctl);

// Same value through the divisor-sum q-expansion
//   G_{2k}(tau) = 2 zeta(2k) + 2 (2 pi i)^{2k} / (2k-1)! * sum sigma_{2k-1}(n) q^n,
// which converges geometrically on all of C (|q| <= e^{-pi sqrt 3}).
Complex eisenstein_G_qexp(int k2, const TauPoint& tau, const SeriesControl& ctl);
Complex eisenstein_G_qexp_at(int k2, Complex tau, const SeriesControl& ctl);

// Weierstrass p and its derivative by the Laurent series
//   p(z) = 1/z^2 + sum_{k>0} (2k+1) G_{2k+2} z^{2k}
// (series radius 1; intended for |z| <= 1/2).
std::pair<Complex, Complex> wp(const TauPoint& tau, Complex z, const SeriesControl& ctl);

// p and p' through the t = e^{2 pi i u} expansion, valid on the whole
// fundamental parallelogram.
std::pair<Complex, Complex> wp_qexp(const TauPoint& tau, Complex u, const SeriesControl& ctl);

// Modular discriminant by the Jacobi product (2 pi)^12 q prod (1-q^n)^24.
Complex delta_tau(const TauPoint& tau, const SeriesControl& ctl);

// g2^3 - 27 g3^2 with g2 = 60 G4, g3 = 140 G6, evaluated through the
// normalized series E4 = 1 + x, E6 = 1 + y so the 1-1 cancellation is done
// algebraically:  Delta = (64 pi^12 / 27)(3x - 2y + 3x^2 + x^3 - y^2).
Complex delta_tau_eisenstein(const TauPoint& tau, const SeriesControl& ctl);

// j(tau) = 1728 (60 G4)^3 / Delta(tau), Delta from the Jacobi product.
Complex j_of_tau(const TauPoint& tau, const SeriesControl& ctl);

// Exact integer q-expansion coefficients c(0..n_max) of j (c(-1) = 1 term
// excluded), by exact power-series arithmetic on E4^3 / (q prod (1-q^n)^24).
std::vector<Int> j_qexp_coeffs(int n_max);

struct AssociateResult {
    TauPoint tau;
    Real residual;  // |j(tau) - j_target|
};

// Unique tau in C with j(E_tau) = j, found by bracketed bisection along the
// arc selected by j (j >= 1728: C1, 0 <= j < 1728: C2, j < 0: C3).
AssociateResult associate_tau(Real j_real, const SeriesControl& ctl,
                              Real tol_abs = 1e-10L, Real tol_rel = 1e-12L);

// |w^2| = |Delta_E|^{1/6} |Delta(tau)|^{-1/6} from |w^12 Delta(tau)| = |Delta_E|.
Real embedding_scale(const Int& disc_E, const TauPoint& tau, const SeriesControl& ctl);

// One straight segment u(s) = base + dir*s, s in (0, s_max], of the locus in
// P_tau mapping onto E(R) (untwisted) or the image of E'(R) (twisted).
struct LocusPath {
    Complex base{0, 0};
    Complex dir{1, 0};
    Real s_max = 0.5L;
};

std::vector<LocusPath> real_locus(const TauPoint& tau, bool twisted);

// How a short real curve sits against E_tau: x(Q) = sign * |w^2| * P(u) with
// P(u) = Re(frame * p(u)) real along the paths.
struct RealStructure {
    int sign = 1;          // +1: E ~ E_tau over R; -1: E ~ twist of E_tau
    Complex frame{1, 0};   // 1 on C1/C3; tau on C2; i at the tau = i corner with A > 0
    std::vector<LocusPath> paths;
};

RealStructure resolve_real_structure(const ShortCurve& curve, const TauPoint& tau,
                                     const SeriesControl& ctl);

// Evaluate the real coordinate function sign*|w2|*Re(frame*p) at u.
Real real_x_on_locus(const RealStructure& rs, Real w2_abs, const TauPoint& tau,
                     Complex u, const SeriesControl& ctl);

// Invert x(Q) = sign*|w^2|*P(u) along the real locus; returns the
// representative with parameters in [0, 1/2].
FundamentalPoint point_to_u(const ShortCurve& curve, const TauPoint& tau, Real x_coord,
                            const SeriesControl& ctl);

}  // namespace intpts
