#pragma once

#include <utility>

#include "intpts/curves.hpp"
#include "intpts/enumerate.hpp"
#include "intpts/sieve.hpp"

namespace intpts {

struct EvBoxBound {
    Int norm;         // max of {1, 1, |C| N^2, |D| N, |F|}
    Real bound;       // (N^{2/3} norm^{-1/9} + 1) N^eps
    bool big_c_branch;  // |C| >= N^{1+6 eps}, hence norm >= N^{3+6 eps}
};

// Norm-weighted point bound for the weighted homogenization of
// y^2 = x^3 + C x^2 + D x + F over an N-box (d = 3).
EvBoxBound ev_bound_for_box(const LongCurve& cubic, const Int& N, Real eps);

// e^{h (1 - delta) + eps}: the cited sphere-packing cap, evaluated as a
// formula only (its proof is a black box here).
Real hv_bound_expression(Real h, Real delta, Real eps);

// the two branch exponents whose max the pipeline balances:
//   1/3 - delta/(2k)   and   1/3 - delta (k-3)/(3k)
std::pair<Real, Real> k_tradeoff_exponents(Real delta, Real k);

struct PipelineOptions {
    Real delta = 0.01L;
    Real k = 4.5L;
    Real eps = -1;  // < 0: use delta / k
    int jobs = 1;
    bool cross_check = true;  // brute-force comparison when the box is desk-scale
};

// The origin-box decision tree: (i) the large-|C| norm branch, else depress to
// short form and split into (ii) the large-sieve region and (iii) the
// bounded-height residual with the sphere-packing cap.
CountReport origin_box_pipeline(const LongCurve& curve, const Int& N,
                                  const PipelineOptions& opts = {});

// The arbitrary-box ladder: far-centre EV branch, Heath-Brown disc cap,
// per-point slope/exponent analysis, and the reduction back to the origin
// pipeline; curves failing the A > 0 / j > eps hypotheses are flagged and
// brute-forced.
CountReport arbitrary_box_pipeline(const ShortCurve& curve, const BoxSpec& box, Real eps,
                                   const PipelineOptions& opts = {});

}  // namespace intpts
