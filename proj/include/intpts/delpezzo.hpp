#pragma once

#include <array>
#include <vector>

#include "intpts/curves.hpp"
#include "intpts/enumerate.hpp"
#include "intpts/numeric.hpp"

namespace intpts {

// Degree-1 del Pezzo surface y^2 = x^3 + F4(u,v) x + F6(u,v) in P(3,2,1,1):
// F4 coefficients c0..c4 of u^4, u^3 v, ..., v^4; F6 likewise of degree 6.
struct DP1Surface {
    std::array<Int, 5> F4{};
    std::array<Int, 7> F6{};
};

Int eval_form(const Int* coeffs, int degree, const Int& u, const Int& v);

// Delta(u,v) = -16 (4 F4^3 + 27 F6^2) as the zero polynomial.
bool identically_singular(const DP1Surface& s);

struct Fiber {
    ShortCurve curve;
    bool singular;
};

Fiber specialize(const DP1Surface& s, const Int& u, const Int& v);

struct DPFiberEntry {
    long u, v;
    long count;
    bool singular;
};

struct DPCountReport {
    Int N;
    Int total = 0;
    std::vector<DPFiberEntry> per_fiber;  // every (u,v), |u|,|v| <= N
    long disc_zero_count = 0;
    double disc_zero_reference = 0;  // N^{1/12 + 0.1}, the cited degree-12 curve scale
    Int singular_total = 0;  // points found on singular fibers (direct scan)
    bool degenerate = false;  // every fiber singular
    double wall_ms = 0;
};

// |S(N)|: for each (u,v) in [-N,N]^2 count integral (x, y) on the fiber with
// |x| <= N^2, |y| <= N^3; fibers deduplicated by (A, B).
DPCountReport count_S_N(const DP1Surface& s, const Int& N, int jobs = 1);

struct DPExponentRow {
    Int N;
    Int total;
    long max_fiber;
};

struct DPExponentTable {
    std::vector<DPExponentRow> rows;
    Real total_slope = 0;
    Real per_fiber_slope = 0;
    Real reference_total = 3;        // the stated N^{3-delta} quality
    Real reference_proof = 2;        // the proof text's N^{2-delta} target
    bool degenerate = false;
};

DPExponentTable dp_exponent_experiment(const DP1Surface& s, const std::vector<Int>& Ns,
                                       int jobs = 1);

}  // namespace intpts
