#include "intpts/curves.hpp"

namespace intpts {

Invariants invariants_of(const ShortCurve& curve) {
    Invariants inv;
    inv.disc = curve.disc();
    inv.c4 = Rat(-curve.A, 27);
    inv.c4.canonicalize();
    if (inv.disc == 0) {
        inv.singular = true;
        return inv;
    }
    Int fourA = 4 * curve.A;
    inv.j = Rat(Int(-1728) * fourA * fourA * fourA, inv.disc);
    inv.j.canonicalize();
    return inv;
}

std::pair<ShortCurve, AffineChange> to_short_form(const LongCurve& curve) {
    if (curve.a1 != 0)
        throw UnsupportedForm("to_short_form: a1 != 0 is rejected (box distortion defeats the method)");

    // Already short: identity change.
    if (curve.a2 == 0 && curve.a3 == 0) {
        return {ShortCurve{curve.a4, curve.a6}, AffineChange{}};
    }

    // Step 1 (only if a3 != 0): scale by 4 and complete the square with
    // Y = 2y + a3, then X = 4x to restore a monic cubic:
    //   Y'^2 = X^3 + 4*a2*X^2 + 16*a4*X + (64*a6 + 16*a3^2),  Y' = 8y + 4a3.
    Int C = curve.a2, D = curve.a4, F = curve.a6;
    AffineChange pre;  // maps input points to monic-cubic points
    if (curve.a3 != 0) {
        C = 4 * curve.a2;
        D = 16 * curve.a4;
        F = 64 * curve.a6 + 16 * curve.a3 * curve.a3;
        pre.x_scale = 4;
        pre.y_scale = 8;
        pre.y_shift = 4 * curve.a3;
    }

    // Step 2: depress the cubic over Z via X = 9x + 3C, Y = 27y.
    //   A = 27(3D - C^2),  B = 27(2C^3 - 9CD + 27F).
    ShortCurve out;
    out.A = 27 * (3 * D - C * C);
    out.B = 27 * (2 * C * C * C - 9 * C * D + 27 * F);
    AffineChange depress;
    depress.x_scale = 9;
    depress.x_shift = 3 * C;
    depress.y_scale = 27;
    return {out, depress.compose(pre)};
}

TranslatedBox translate_box_to_origin(const LongCurve& curve, const BoxSpec& box) {
    if (curve.a1 != 0) throw UnsupportedForm("translate_box_to_origin: a1 != 0");
    Int cx = (box.x_lo + box.x_hi) >> 1;  // floor of midpoint
    Int cy = (box.y_lo + box.y_hi) >> 1;

    // Pullback along x = X + cx, y = Y + cy:
    //   (Y+cy)^2 + a3(Y+cy) = f(X+cx)
    // with f(x) = x^3 + a2 x^2 + a4 x + a6.
    TranslatedBox out;
    const Int &a2 = curve.a2, &a3 = curve.a3, &a4 = curve.a4, &a6 = curve.a6;
    out.curve.a1 = 0;
    out.curve.a2 = a2 + 3 * cx;
    out.curve.a3 = a3 + 2 * cy;
    out.curve.a4 = 3 * cx * cx + 2 * a2 * cx + a4;
    Int fcx = cx * cx * cx + a2 * cx * cx + a4 * cx + a6;
    out.curve.a6 = fcx - cy * cy - a3 * cy;

    Int wx = box.x_hi - cx;
    if (cx - box.x_lo > wx) wx = cx - box.x_lo;
    Int wy = box.y_hi - cy;
    if (cy - box.y_lo > wy) wy = cy - box.y_lo;
    out.box = BoxSpec{-wx, wx, -wy, wy};

    out.change.x_shift = Rat(-cx);
    out.change.y_shift = Rat(-cy);
    return out;
}

Int coefficient_norm(const ShortCurve& curve) {
    // coefficients of y^2 - x^3 - Ax - B
    Int n = 1;
    if (abs(curve.A) > n) n = abs(curve.A);
    if (abs(curve.B) > n) n = abs(curve.B);
    return n;
}

Int coefficient_norm(const LongCurve& curve) {
    Int n = 1;
    for (const Int* c : {&curve.a1, &curve.a2, &curve.a3, &curve.a4, &curve.a6})
        if (abs(*c) > n) n = abs(*c);
    return n;
}

static HeathBrownReport heath_brown_impl(Int norm, const Int& N, int d) {
    if (d < 1 || N < 1) throw DomainError("heath_brown_case: d >= 1, N >= 1 required");
    HeathBrownReport rep;
    rep.d = d;
    rep.norm = norm;
    rep.threshold_exponent = (long)d * (d + 1) * (d + 2) / 2;
    mpz_pow_ui(rep.threshold.get_mpz_t(), N.get_mpz_t(), (unsigned long)rep.threshold_exponent);
    rep.count_bounded = norm > rep.threshold;
    rep.count_cap = (long)d * d;
    rep.log_ratio = log_abs(norm) - (Real)rep.threshold_exponent * log_abs(N);
    rep.disc_cap_log = (d == 3) ? (Real)180 * log_abs(N) : (Real)0;
    return rep;
}

HeathBrownReport heath_brown_case(const ShortCurve& curve, const Int& N, int d) {
    return heath_brown_impl(coefficient_norm(curve), N, d);
}

HeathBrownReport heath_brown_case(const LongCurve& curve, const Int& N, int d) {
    return heath_brown_impl(coefficient_norm(curve), N, d);
}

}  // namespace intpts
