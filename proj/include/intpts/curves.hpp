#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "intpts/numeric.hpp"

namespace intpts {

// y^2 + a1*xy + a3*y = x^3 + a2*x^2 + a4*x + a6, integer coefficients,
// no minimality assumed.
struct LongCurve {
    Int a1, a2, a3, a4, a6;
};

// y^2 = x^3 + A*x + B
struct ShortCurve {
    Int A, B;

    Int disc() const { return Int(-16) * (4 * A * A * A + 27 * B * B); }
    bool singular() const { return disc() == 0; }
};

struct Invariants {
    Int disc;
    Rat c4;                  // -A/27 normalization; only its sign is consumed downstream
    bool singular = false;   // disc == 0: j undefined
    Rat j;                   // valid iff !singular
};

// Closed integer box [x_lo,x_hi] x [y_lo,y_hi].
struct BoxSpec {
    Int x_lo, x_hi, y_lo, y_hi;

    bool valid() const { return x_lo <= x_hi && y_lo <= y_hi; }
    Int width() const { return x_hi - x_lo; }
    Int height() const { return y_hi - y_lo; }
};

// X = x_scale*x + x_shift, Y = y_scale*y + y_shift with nonzero scales.
struct AffineChange {
    Rat x_scale = 1, x_shift = 0, y_scale = 1, y_shift = 0;

    std::pair<Rat, Rat> apply(const Rat& x, const Rat& y) const {
        return {x_scale * x + x_shift, y_scale * y + y_shift};
    }
    AffineChange inverse() const {
        if (x_scale == 0 || y_scale == 0) throw DomainError("AffineChange: zero scale");
        AffineChange inv;
        inv.x_scale = 1 / x_scale;
        inv.x_shift = -x_shift / x_scale;
        inv.y_scale = 1 / y_scale;
        inv.y_shift = -y_shift / y_scale;
        return inv;
    }
    // this after other: (this ∘ other)(P) = this(other(P))
    AffineChange compose(const AffineChange& other) const {
        AffineChange c;
        c.x_scale = x_scale * other.x_scale;
        c.x_shift = x_scale * other.x_shift + x_shift;
        c.y_scale = y_scale * other.y_scale;
        c.y_shift = y_scale * other.y_shift + y_shift;
        return c;
    }
    bool is_identity() const {
        return x_scale == 1 && y_scale == 1 && x_shift == 0 && y_shift == 0;
    }
};

Invariants invariants_of(const ShortCurve& curve);

// Reduction of y^2 + a3*y = x^3 + a2*x^2 + a4*x + a6 to short Weierstrass
// form over the integers, with the exact point map.  Rejects a1 != 0.
std::pair<ShortCurve, AffineChange> to_short_form(const LongCurve& curve);

struct TranslatedBox {
    LongCurve curve;
    BoxSpec box;
    AffineChange change;
};

// Recentre box at the origin, pulling the curve back along x -> x + cx,
// y -> y + cy.  Odd side lengths take the floor of the midpoint and the
// returned box is widened by at most 1 to stay symmetric.
TranslatedBox translate_box_to_origin(const LongCurve& curve, const BoxSpec& box);

Int coefficient_norm(const ShortCurve& curve);
Int coefficient_norm(const LongCurve& curve);

struct HeathBrownReport {
    int d = 3;
    Int norm;                    // ||F||
    Int threshold;               // N^{d(d+1)(d+2)/2}
    long threshold_exponent;     // d(d+1)(d+2)/2
    bool count_bounded;          // true: "count <= d^2"; false: "norm-bounded"
    long count_cap;              // d^2 when count_bounded
    Real log_ratio;              // log(||F|| / N^threshold_exponent)
    Real disc_cap_log;           // log of the N^{180}-type disc cap (d = 3 only)
};

// Decide which disjunct of the norm-vs-count dichotomy applies, with
// implied constant 1; callers get the raw ratio to apply their own.
HeathBrownReport heath_brown_case(const ShortCurve& curve, const Int& N, int d = 3);
HeathBrownReport heath_brown_case(const LongCurve& curve, const Int& N, int d = 3);

}  // namespace intpts
