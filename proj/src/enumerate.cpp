#include "intpts/enumerate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace intpts {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 u128_isqrt(u128 n) {
    if (n == 0) return 0;
    u128 r = (u128)sqrtl((long double)n);  // 64-bit mantissa: off by at most a few
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool fits_i128(const Int& n) {
    return mpz_sizeinbase(n.get_mpz_t(), 2) <= 120;
}

i128 to_i128(const Int& n) {
    i128 r = 0;
    Int a = abs(n);
    // 60-bit limbs
    Int hi = a >> 60;
    r = (i128)mpz_get_ui(hi.get_mpz_t());
    r <<= 60;
    Int lo = a & Int((Int(1) << 60) - 1);
    r += (i128)mpz_get_ui(lo.get_mpz_t());
    return n < 0 ? -r : r;
}

Int from_i128(i128 v) {
    bool neg = v < 0;
    u128 a = neg ? (u128)(-v) : (u128)v;
    Int hi = Int((unsigned long)(a >> 64));
    Int out = (hi << 64) + Int((unsigned long)(a & ~0ULL));
    return neg ? -out : out;
}

// Monic-quartic-free description of the square test: points satisfy
// (2y + a3)^2 = 4 f(x) + a3^2 =: g(x) with f = x^3 + a2 x^2 + a4 x + a6.
struct SquareForm {
    Int c3, c2, c1, c0;  // g(x) = c3 x^3 + c2 x^2 + c1 x + c0  (c3 = 4)
    Int a3;              // parity shift: 2y + a3 = +-sqrt(g)

    Int g(const Int& x) const { return ((c3 * x + c2) * x + c1) * x + c0; }
};

SquareForm square_form(const LongCurve& c) {
    SquareForm s;
    s.c3 = 4;
    s.c2 = 4 * c.a2;
    s.c1 = 4 * c.a4;
    s.c0 = 4 * c.a6 + c.a3 * c.a3;
    s.a3 = c.a3;
    return s;
}

// first x in [lo, hi] with g(x) >= target (g increasing on the range), or hi+1
Int bsearch_first_ge(const SquareForm& s, Int lo, Int hi, const Int& target) {
    if (lo > hi) return hi + 1;
    if (s.g(hi) < target) return hi + 1;
    while (lo < hi) {
        Int mid = (lo + hi) >> 1;
        if (s.g(mid) >= target)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

// last x in [lo, hi] with g(x) <= target (g increasing), or lo-1
Int bsearch_last_le(const SquareForm& s, Int lo, Int hi, const Int& target) {
    if (lo > hi) return lo - 1;
    if (s.g(lo) > target) return lo - 1;
    while (lo < hi) {
        Int mid = (lo + hi + 1) >> 1;
        if (s.g(mid) <= target)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

void scan_range_exact(const SquareForm& s, const Int& xa, const Int& xb, const Int& y_lo,
                      const Int& y_hi, std::vector<PointPair>& out) {
    Int w, y;
    for (Int x = xa; x <= xb; ++x) {
        Int gx = s.g(x);
        if (gx < 0) continue;
        if (!is_perfect_square(gx, w)) continue;
        for (int sgn = 0; sgn < (w == 0 ? 1 : 2); ++sgn) {
            Int ww = sgn ? -w : w;
            Int num = ww - s.a3;
            if (mpz_odd_p(num.get_mpz_t())) continue;
            y = num >> 1;
            if (y < y_lo || y > y_hi) continue;
            out.push_back({x, y});
        }
    }
}

void scan_range_fast(const SquareForm& s, long xa, long xb, i128 y_lo, i128 y_hi,
                     std::vector<PointPair>& out) {
    i128 c3 = to_i128(s.c3), c2 = to_i128(s.c2), c1 = to_i128(s.c1), c0 = to_i128(s.c0);
    i128 a3 = to_i128(s.a3);
    for (long x = xa; x <= xb; ++x) {
        i128 gx = ((c3 * x + c2) * x + c1) * x + c0;
        if (gx < 0) continue;
        u128 w = u128_isqrt((u128)gx);
        if ((i128)(w * w) != gx) continue;
        for (int sgn = 0; sgn < (w == 0 ? 1 : 2); ++sgn) {
            i128 ww = sgn ? -(i128)w : (i128)w;
            i128 num = ww - a3;
            if (num & 1) continue;
            i128 y = num >> 1;
            if (y < y_lo || y > y_hi) continue;
            out.push_back({Int(x), from_i128(y)});
        }
    }
}

CountReport enumerate_impl(const LongCurve& curve, const BoxSpec& box,
                           const EnumerateOptions& opts) {
    if (curve.a1 != 0) throw UnsupportedForm("enumerate_box: a1 != 0");
    if (!box.valid()) throw DomainError("enumerate_box: empty box spec");
    if (box.width() > opts.guard || box.height() > opts.guard)
        throw BoxTooLarge("enumerate_box: box side exceeds the desk-scale guard");

    auto t0 = std::chrono::steady_clock::now();
    SquareForm s = square_form(curve);

    // y window for 2y + a3
    Int w_lo = 2 * box.y_lo + s.a3, w_hi = 2 * box.y_hi + s.a3;
    Int wmax2 = std::max<Int>(w_lo * w_lo, w_hi * w_hi);

    // beyond |x| > x_t the cubic g is strictly increasing
    Int x_t = 1 + abs(curve.a2) + isqrt_floor(abs(curve.a4)) + 1;

    // clip the scan range: on the increasing tails points need 0 <= g <= wmax2
    Int xa = box.x_lo, xb = box.x_hi;
    std::vector<std::pair<Int, Int>> segments;
    Int mid_lo = std::max<Int>(xa, -x_t);
    Int mid_hi = std::min(xb, x_t);
    if (xb > x_t) {
        Int lo = std::max<Int>(xa, x_t + 1);
        Int hi = bsearch_last_le(s, lo, xb, wmax2);
        if (lo <= hi) segments.push_back({lo, hi});
    }
    if (xa < -x_t) {
        Int hi = std::min<Int>(xb, -x_t - 1);
        Int lo = bsearch_first_ge(s, xa, hi, Int(0));
        if (lo <= hi) segments.push_back({lo, hi});
    }
    if (mid_lo <= mid_hi) segments.push_back({mid_lo, mid_hi});

    // fast path applies when every value fits comfortably in 128 bits
    Int worst = std::max<Int>(abs(box.x_lo), abs(box.x_hi)) + x_t + 2;
    Int bound_g = 4 * worst * worst * worst + abs(s.c2) * worst * worst + abs(s.c1) * worst +
                  abs(s.c0) + wmax2;
    bool fast = fits_i128(bound_g) && fits_i128(w_lo) && fits_i128(w_hi) &&
                mpz_sizeinbase(worst.get_mpz_t(), 2) <= 40;

    std::vector<PointPair> pts;
    for (auto& [lo, hi] : segments) {
        Int len = hi - lo + 1;
        if (opts.jobs > 1 && len > 4096) {
            long chunks = opts.jobs * 4;
            std::vector<std::vector<PointPair>> part((std::size_t)chunks);
            Int step = len / chunks + 1;
            parallel_for((std::size_t)chunks, opts.jobs, [&](std::size_t ci) {
                Int a = lo + step * (long)ci;
                Int b = std::min<Int>(hi, a + step - 1);
                if (a > hi) return;
                if (fast)
                    scan_range_fast(s, mpz_get_si(a.get_mpz_t()), mpz_get_si(b.get_mpz_t()),
                                    to_i128(box.y_lo), to_i128(box.y_hi), part[ci]);
                else
                    scan_range_exact(s, a, b, box.y_lo, box.y_hi, part[ci]);
            });
            for (auto& v : part) pts.insert(pts.end(), v.begin(), v.end());
        } else {
            if (fast)
                scan_range_fast(s, mpz_get_si(lo.get_mpz_t()), mpz_get_si(hi.get_mpz_t()),
                                to_i128(box.y_lo), to_i128(box.y_hi), pts);
            else
                scan_range_exact(s, lo, hi, box.y_lo, box.y_hi, pts);
        }
    }
    std::sort(pts.begin(), pts.end(), [](const PointPair& a, const PointPair& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });

    CountReport rep;
    rep.has_points = true;
    rep.points = std::move(pts);
    rep.branch = "brute";
    rep.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace

CountReport enumerate_box(const ShortCurve& curve, const BoxSpec& box,
                          const EnumerateOptions& opts) {
    LongCurve lc{Int(0), Int(0), Int(0), curve.A, curve.B};
    return enumerate_impl(lc, box, opts);
}

CountReport enumerate_box(const LongCurve& curve, const BoxSpec& box,
                          const EnumerateOptions& opts) {
    return enumerate_impl(curve, box, opts);
}

ResidueStats xresidues_mod_p(const ShortCurve& curve, const Int& p) {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 32) == 0)
        throw DomainError("xresidues_mod_p: p must be prime");
    Int six_disc = 6 * curve.disc();
    if (six_disc % p == 0) throw BadReduction("xresidues_mod_p: p divides 6*Delta");
    long pl = mpz_get_si(p.get_mpz_t());
    if (pl > 50000000) throw BoxTooLarge("xresidues_mod_p: p beyond the desk-scale guard");

    std::vector<unsigned char> is_sq((std::size_t)pl, 0);
    for (long y = 0; y <= pl / 2; ++y) {
        long r = (long)(((i128)y * y) % pl);
        is_sq[(std::size_t)r] = 1;
    }
    long a = (long)mpz_fdiv_ui(curve.A.get_mpz_t(), (unsigned long)pl);
    long b = (long)mpz_fdiv_ui(curve.B.get_mpz_t(), (unsigned long)pl);
    long points = 1;  // infinity
    long xs = 0;
    for (long x = 0; x < pl; ++x) {
        long fx = (long)((((i128)x * x % pl) * x + (i128)a * x + b) % pl);
        if (fx == 0) {
            points += 1;
            xs += 1;
        } else if (is_sq[(std::size_t)fx]) {
            points += 2;
            xs += 1;
        }
    }
    ResidueStats st;
    st.p = p;
    st.point_count = points;
    st.x_count = xs;
    st.alpha_p = (Real)xs / (Real)pl;
    st.hasse_residual = std::abs((Real)points - (Real)pl - 1);
    if (st.hasse_residual * st.hasse_residual > 4.0L * (Real)pl + 1e-9L)
        throw DomainError("xresidues_mod_p: Hasse bound violated (internal error)");
    if (pl > 42 && 4 * xs > 3 * pl)
        throw DomainError("xresidues_mod_p: 3/4 density cap violated (internal error)");
    return st;
}

Int rational_family_count(const Int& N, int d) {
    if (d < 1 || N < 0) throw DomainError("rational_family_count: d >= 1, N >= 0");
    return 2 * iroot_floor(N, (unsigned long)d) + 1;
}

}  // namespace intpts
