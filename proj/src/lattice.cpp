#include "intpts/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>

namespace intpts {

namespace {

constexpr Real kSqrt3Half = 0.86602540378443864676372317075293618L;

// zeta(k) for even k >= 4, Euler-Maclaurin tail at R = 1000.
Real zeta_even(int k) {
    static std::array<Real, 130> cache{};
    static std::once_flag flag;
    std::call_once(flag, [] {
        const int R = 1000;
        for (int kk = 4; kk < 130; kk += 2) {
            Real s = 0;
            for (int n = R; n >= 1; --n) s += std::pow((Real)n, (Real)-kk);
            // Euler-Maclaurin tail for sum_{n > R} n^{-k}
            Real rkm = std::pow((Real)R, (Real)(1 - kk));
            s += rkm / (kk - 1);                      // integral part
            s -= rkm / (Real)R / 2;                   // - R^{-k}/2
            s += rkm / (Real)R / (Real)R * kk / 12;   // + k R^{-k-1}/12
            cache[(std::size_t)kk] = s;
        }
    });
    if (k < 4 || k >= 130 || k % 2) throw DomainError("zeta_even: even k in [4,128] required");
    return cache[(std::size_t)k];
}

Real sigma_real(int k, int n) {
    Real s = 0;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) s += std::pow((Real)d, (Real)k);
    return s;
}

Complex exp2pii(Complex z) {
    // e^{2 pi i z} with the magnitude computed separately for accuracy at
    // large Im z.
    Real mag = std::exp(-2 * kPi * z.imag());
    Real ph = 2 * kPi * z.real();
    return Complex(mag * std::cos(ph), mag * std::sin(ph));
}

Complex G_qexp_from_q(int k2, Complex q, const SeriesControl& ctl) {
    if (k2 < 4 || k2 % 2) throw DomainError("eisenstein_G: even k2 >= 4 required");
    // c = 2 (2 pi i)^{k2} / (k2-1)!
    Real c = 2;
    for (int i = 0; i < k2; ++i) c *= 2 * kPi;
    for (int i = 1; i < k2; ++i) c /= (Real)i;
    if ((k2 / 2) % 2) c = -c;  // i^{k2} = (-1)^{k2/2}
    Complex s = 2 * zeta_even(k2);
    Complex qn = q;
    Real qabs = std::abs(q);
    for (int n = 1;; ++n) {
        Complex term = c * sigma_real(k2 - 1, n) * qn;
        s += term;
        if (std::abs(term) < ctl.term_tolerance * std::max<Real>(1, std::abs(s)) && n >= 3) break;
        if (n > 400) throw NonConvergence("eisenstein q-series");
        qn *= q;
        (void)qabs;
    }
    return s;
}

}  // namespace

TauPoint TauPoint::imag_axis(Real b) {
    if (b < 1) throw DomainError("C1 requires b >= 1");
    TauPoint t;
    t.value = Complex(0, b);
    t.region = TauRegion::C1;
    t.q = Complex(std::exp(-2 * kPi * b), 0);
    return t;
}

TauPoint TauPoint::unit_arc(Real th) {
    if (th < kPi / 3 - 1e-15L || th > kPi / 2 + 1e-15L)
        throw DomainError("C2 requires theta in [pi/3, pi/2]");
    TauPoint t;
    t.value = Complex(std::cos(th), std::sin(th));
    t.region = TauRegion::C2;
    t.q = exp2pii(t.value);
    return t;
}

TauPoint TauPoint::half_line(Real b) {
    if (b <= kSqrt3Half) throw DomainError("C3 requires b > sqrt(3)/2");
    TauPoint t;
    t.value = Complex(0.5L, b);
    t.region = TauRegion::C3;
    t.q = Complex(-std::exp(-2 * kPi * b), 0);  // e^{i pi} exactly -1
    return t;
}

FundamentalPoint make_fundamental(const TauPoint& tau, Complex u_raw) {
    Real im_tau = tau.value.imag();
    Real u2 = u_raw.imag() / im_tau;
    Real u1 = u_raw.real() - u2 * tau.value.real();
    auto reduce = [](Real x) {
        Real r = x - std::floor(x);       // [0,1)
        if (r > 0.5L) r -= 1;             // (-1/2, 1/2]
        if (r <= -0.5L) r += 1;
        return r;
    };
    FundamentalPoint f;
    f.u1 = reduce(u1);
    f.u2 = reduce(u2);
    f.u = Complex(f.u1, 0) + Complex(f.u2, 0) * tau.value;
    f.t = exp2pii(f.u);
    return f;
}

FundamentalPoint fold_representative(const TauPoint& tau, const FundamentalPoint& u) {
    if (u.u2 < 0 || (u.u2 == 0 && u.u1 < 0)) return make_fundamental(tau, -u.u);
    return u;
}

EisensteinValue eisenstein_G(int k2, const TauPoint& tau, const SeriesControl& ctl) {
    if (k2 < 4 || k2 % 2) throw DomainError("eisenstein_G: even k2 >= 4 required");
    // tail over |omega| > R is below 16 R^{2-k2}
    Real R_real = std::pow(16 / ctl.term_tolerance, (Real)1 / (k2 - 2));
    long R = (long)std::ceil(R_real);
    if (R < 2) R = 2;
    long terms = (2 * R + 1) * (2 * R + 1) - 1;
    if (terms > ctl.max_terms)
        throw NonConvergence("eisenstein_G lattice sum: needs " + std::to_string(terms) +
                             " terms, max " + std::to_string(ctl.max_terms));
    Complex s = 0;
    for (long m = -R; m <= R; ++m) {
        for (long n = -R; n <= R; ++n) {
            if (m == 0 && n == 0) continue;
            Complex w = Complex((Real)m, 0) + Complex((Real)n, 0) * tau.value;
            Complex w2 = w * w;
            Complex wp2k = w2;
            for (int i = 2; i < k2 / 2 + 1; ++i) wp2k *= w2;  // w^{k2}
            s += Complex(1, 0) / wp2k;
        }
    }
    return {s, 16 * std::pow((Real)R, (Real)(2 - k2)), terms};
}

Complex eisenstein_G_qexp(int k2, const TauPoint& tau, const SeriesControl& ctl) {
    return G_qexp_from_q(k2, tau.q, ctl);
}

Complex eisenstein_G_qexp_at(int k2, Complex tau, const SeriesControl& ctl) {
    if (tau.imag() < 0.3L) throw DomainError("eisenstein_G_qexp_at: Im tau too small");
    return G_qexp_from_q(k2, exp2pii(tau), ctl);
}

std::pair<Complex, Complex> wp(const TauPoint& tau, Complex z, const SeriesControl& ctl) {
    if (z == Complex(0, 0)) throw DomainError("wp: z = 0");
    Real az = std::abs(z);
    if (az >= 0.999L) throw DomainError("wp: |z| must be < 1 (series radius)");
    Complex z2 = z * z;
    Complex p = Complex(1, 0) / z2;
    Complex pp = Complex(-2, 0) / (z2 * z);
    Complex zpow = z2;  // z^{2k}
    for (int k = 1;; ++k) {
        Complex G = G_qexp_from_q(2 * k + 2, tau.q, ctl);
        Complex term = (Real)(2 * k + 1) * G * zpow;
        p += term;
        pp += (Real)(2 * k + 1) * (Real)(2 * k) * G * zpow / z;
        // |G| <= 80 on C bounds the tail
        Real bound = 80 * (Real)(2 * k + 3) * std::pow(az, (Real)(2 * k + 2)) /
                     std::max<Real>(1e-30L, 1 - az * az);
        if (bound < ctl.term_tolerance && k >= 3) break;
        if (2 * k + 4 >= 128) throw NonConvergence("wp Laurent series: |z| too close to 1");
        zpow *= z2;
    }
    return {p, pp};
}

std::pair<Complex, Complex> wp_qexp(const TauPoint& tau, Complex u, const SeriesControl& ctl) {
    Complex t = exp2pii(u);
    if (t == Complex(1, 0)) throw DomainError("wp_qexp: u is a lattice point");
    const Complex one{1, 0};
    Complex q = tau.q;
    Complex s = Complex(1.0L / 12.0L, 0) + t / ((one - t) * (one - t));
    Complex ps = t * (one + t) / ((one - t) * (one - t) * (one - t));
    Complex qn = q;
    for (int n = 1;; ++n) {
        Complex a = qn * t, b = qn / t;
        Complex term = a / ((one - a) * (one - a)) + b / ((one - b) * (one - b)) -
                       (Real)2 * qn / ((one - qn) * (one - qn));
        s += term;
        ps += a * (one + a) / ((one - a) * (one - a) * (one - a)) -
              b * (one + b) / ((one - b) * (one - b) * (one - b));
        if (std::abs(a) + std::abs(b) < ctl.term_tolerance && n >= 2) break;
        if (n > 2000) throw NonConvergence("wp_qexp");
        qn *= q;
    }
    Complex twopii{0, 2 * kPi};
    Complex f1 = twopii * twopii;
    return {f1 * s, f1 * twopii * ps};
}

Complex delta_tau(const TauPoint& tau, const SeriesControl& ctl) {
    Complex q = tau.q;
    const Complex one{1, 0};
    Complex prod = one;
    Complex qn = q;
    Real qabs = std::abs(q);
    Real qnabs = qabs;
    for (int n = 1; qnabs >= ctl.term_tolerance; ++n) {
        prod *= (one - qn);
        qn *= q;
        qnabs *= qabs;
        if (n > 4000) break;
    }
    Complex p24 = prod;
    Complex acc = one;
    for (int i = 0; i < 24; ++i) acc *= p24;  // prod^24
    Real twopi12 = 1;
    for (int i = 0; i < 12; ++i) twopi12 *= 2 * kPi;
    return twopi12 * q * acc;
}

Complex delta_tau_eisenstein(const TauPoint& tau, const SeriesControl& ctl) {
    // x = E4 - 1 = 240 sum sigma_3(n) q^n,  y = E6 - 1 = -504 sum sigma_5(n) q^n
    Complex q = tau.q;
    Complex x = 0, y = 0, qn = q;
    for (int n = 1;; ++n) {
        Complex tx = (Real)240 * sigma_real(3, n) * qn;
        Complex ty = (Real)-504 * sigma_real(5, n) * qn;
        x += tx;
        y += ty;
        if (std::abs(tx) + std::abs(ty) < ctl.term_tolerance * std::max<Real>(std::abs(x) + std::abs(y), 1e-300L) && n >= 3)
            break;
        if (n > 400) throw NonConvergence("delta_tau_eisenstein");
        qn *= q;
    }
    // E4^3 - E6^2 = 3x - 2y + 3x^2 + x^3 - y^2, free of the 1 - 1 cancellation
    Complex diff = (Real)3 * x - (Real)2 * y + (Real)3 * x * x + x * x * x - y * y;
    Real pi12 = 1;
    for (int i = 0; i < 12; ++i) pi12 *= kPi;
    return (64 * pi12 / 27) * diff;
}

Complex j_of_tau(const TauPoint& tau, const SeriesControl& ctl) {
    Complex g2 = (Real)60 * G_qexp_from_q(4, tau.q, ctl);
    Complex d = delta_tau(tau, ctl);
    return (Real)1728 * g2 * g2 * g2 / d;
}

std::vector<Int> j_qexp_coeffs(int n_max) {
    if (n_max < 0 || n_max > 64) throw DomainError("j_qexp_coeffs: n_max in [0, 64]");
    int len = n_max + 2;  // track q^0 .. q^{n_max+1}; j*q = E4^3 / prod^24
    auto mul = [len](const std::vector<Int>& a, const std::vector<Int>& b) {
        std::vector<Int> c((std::size_t)len);
        for (int i = 0; i < len; ++i) {
            if (a[(std::size_t)i] == 0) continue;
            for (int j = 0; i + j < len; ++j)
                c[(std::size_t)(i + j)] += a[(std::size_t)i] * b[(std::size_t)j];
        }
        return c;
    };

    std::vector<Int> e4((std::size_t)len);
    e4[0] = 1;
    for (int n = 1; n < len; ++n) {
        Int s3 = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) s3 += Int(d) * d * d;
        e4[(std::size_t)n] = 240 * s3;
    }
    std::vector<Int> e43 = mul(mul(e4, e4), e4);

    std::vector<Int> prod((std::size_t)len);
    prod[0] = 1;
    for (int n = 1; n < len; ++n) {
        // multiply by (1 - q^n)
        for (int i = len - 1; i >= n; --i) prod[(std::size_t)i] -= prod[(std::size_t)(i - n)];
    }
    std::vector<Int> p24 = prod;
    for (int i = 1; i < 24; ++i) p24 = mul(p24, prod);

    // reciprocal of p24 (constant term 1), exact integer recurrence
    std::vector<Int> rec((std::size_t)len);
    rec[0] = 1;
    for (int n = 1; n < len; ++n) {
        Int acc = 0;
        for (int k = 1; k <= n; ++k) acc += p24[(std::size_t)k] * rec[(std::size_t)(n - k)];
        rec[(std::size_t)n] = -acc;
    }

    std::vector<Int> series = mul(e43, rec);  // sum c(n-1) q^n with c(-1) = 1
    std::vector<Int> out((std::size_t)(n_max + 1));
    for (int n = 0; n <= n_max; ++n) out[(std::size_t)n] = series[(std::size_t)(n + 1)];
    return out;
}

namespace {

Real j_real_at(const TauPoint& tau, const SeriesControl& ctl) {
    Complex j = j_of_tau(tau, ctl);
    return j.real();
}

TauPoint tau_on_arc(TauRegion region, Real param) {
    switch (region) {
        case TauRegion::C1: return TauPoint::imag_axis(param);
        case TauRegion::C2: return TauPoint::unit_arc(param);
        default: return TauPoint::half_line(param);
    }
}

}  // namespace

AssociateResult associate_tau(Real j_target, const SeriesControl& ctl, Real tol_abs, Real tol_rel) {
    if (!std::isfinite((double)j_target)) throw DomainError("associate_tau: j must be finite");
    // j is quadratic in the arc parameter at the two arc junctions, so
    // bisection only recovers tau to ~sqrt(tol) there; snap exact boundary
    // values to the exact corner points.
    if (std::abs(j_target) <= 1e-9L) {
        TauPoint t = TauPoint::unit_arc(kPi / 3);
        return {t, std::abs(j_of_tau(t, ctl).real() - j_target)};
    }
    if (std::abs(j_target - 1728) <= 1e-6L) {
        TauPoint t = TauPoint::imag_axis(1);
        return {t, std::abs(j_of_tau(t, ctl).real() - j_target)};
    }
    TauRegion region;
    Real lo, hi;
    bool increasing;
    Real cap = std::max<Real>(10, std::log(2 * std::abs(j_target) + 2) / (2 * kPi) + 2);
    if (j_target >= 1728) {
        region = TauRegion::C1;
        lo = 1;
        hi = cap;
        increasing = true;
    } else if (j_target >= 0) {
        region = TauRegion::C2;
        lo = kPi / 3;
        hi = kPi / 2;
        increasing = true;
    } else {
        region = TauRegion::C3;
        lo = kSqrt3Half + 1e-9L;
        hi = cap;
        increasing = false;
    }
    Real tol = std::max(tol_abs, tol_rel * std::abs(j_target));
    Real flo = j_real_at(tau_on_arc(region, lo), ctl);
    Real fhi = j_real_at(tau_on_arc(region, hi), ctl);
    if (increasing ? (flo > fhi) : (flo < fhi))
        throw BracketFailure("associate_tau: arc not monotone at endpoints");
    Real fmin = std::min(flo, fhi), fmax = std::max(flo, fhi);
    if (j_target < fmin - tol || j_target > fmax + tol)
        throw BracketFailure("associate_tau: target outside arc range up to the Im cap");

    for (int it = 0; it < 200; ++it) {
        Real mid = (lo + hi) / 2;
        Real fm = j_real_at(tau_on_arc(region, mid), ctl);
        // monotonicity along the arc is assumed; verify the bracket stays ordered
        if (fm < std::min(flo, fhi) - 1e-6L * (1 + std::abs(fm)) ||
            fm > std::max(flo, fhi) + 1e-6L * (1 + std::abs(fm)))
            throw BracketFailure("associate_tau: monotonicity violated inside bracket");
        if (std::abs(fm - j_target) <= tol || hi - lo < 1e-17L * std::max<Real>(1, std::abs(mid))) {
            TauPoint t = tau_on_arc(region, mid);
            return {t, std::abs(fm - j_target)};
        }
        bool go_right = increasing ? (fm < j_target) : (fm > j_target);
        if (go_right) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    TauPoint t = tau_on_arc(region, (lo + hi) / 2);
    return {t, std::abs(j_real_at(t, ctl) - j_target)};
}

Real embedding_scale(const Int& disc_E, const TauPoint& tau, const SeriesControl& ctl) {
    if (disc_E == 0) throw SingularCurve("embedding_scale: disc = 0");
    Real log_de = log_abs(disc_E);
    Real log_dt = std::log(std::abs(delta_tau(tau, ctl)));
    return std::exp((log_de - log_dt) / 6);
}

std::vector<LocusPath> real_locus(const TauPoint& tau, bool twisted) {
    const Complex t = tau.value;
    std::vector<LocusPath> paths;
    switch (tau.region) {
        case TauRegion::C1:
            if (!twisted) {
                paths.push_back({Complex(0, 0), Complex(1, 0), 0.5L});     // identity component
                paths.push_back({t * 0.5L, Complex(1, 0), 0.5L});          // egg
            } else {
                paths.push_back({Complex(0, 0), t, 0.5L});
                paths.push_back({Complex(0.5L, 0), t, 0.5L});
            }
            break;
        case TauRegion::C3:
            if (!twisted) {
                paths.push_back({Complex(0, 0), Complex(1, 0), 0.5L});
            } else {
                // single circle u = i y, y in (0, b], through both vertical lines
                paths.push_back({Complex(0, 0), (Real)2 * t - Complex(1, 0), 0.5L});
            }
            break;
        case TauRegion::C2:
            if (!twisted) {
                paths.push_back({Complex(0, 0), Complex(1, 0) + t, 0.5L});
            } else {
                paths.push_back({Complex(0, 0), Complex(1, 0) - t, 0.5L});
            }
            break;
    }
    return paths;
}

RealStructure resolve_real_structure(const ShortCurve& curve, const TauPoint& tau,
                                     const SeriesControl& ctl) {
    RealStructure rs;
    Complex g4 = G_qexp_from_q(4, tau.q, ctl);
    Complex g6 = G_qexp_from_q(6, tau.q, ctl);
    Complex frame{1, 0};
    if (tau.region == TauRegion::C2) frame = tau.value;

    // tau = i corner with A > 0: the 45-degree rotated real form (the
    // quartic twist); frame i makes Re(i*p) the real coordinate there.
    bool corner = tau.region == TauRegion::C1 && std::abs(tau.value - Complex(0, 1)) < 1e-9L &&
                  curve.A > 0;
    if (corner) {
        rs.frame = Complex(0, 1);
        rs.sign = 1;
        rs.paths.push_back({Complex(0, 0), Complex(1, 1), 0.5L});
        return rs;
    }

    // reference coefficients of the curve cut out by the (possibly rotated)
    // lattice frame: y^2 = x^3 - 15 G4' x - 35 G6' for y = p'/2
    Real a_ref = -15 * (frame * frame * g4).real();
    Real b_ref = -35 * (frame * frame * frame * g6).real();
    int sgn = 1;
    if (curve.B != 0 && std::abs(b_ref) > 1e-12L) {
        sgn = (curve.B > 0) == (b_ref > 0) ? 1 : -1;
    } else if (curve.A != 0 && std::abs(a_ref) > 1e-12L) {
        sgn = (curve.A > 0) == (a_ref > 0) ? 1 : -1;
    }
    rs.frame = frame;
    rs.sign = sgn;
    rs.paths = real_locus(tau, sgn < 0);
    return rs;
}

Real real_x_on_locus(const RealStructure& rs, Real w2_abs, const TauPoint& tau, Complex u,
                     const SeriesControl& ctl) {
    Complex p = wp_qexp(tau, u, ctl).first;
    return (Real)rs.sign * w2_abs * (rs.frame * p).real();
}

FundamentalPoint point_to_u(const ShortCurve& curve, const TauPoint& tau, Real x_coord,
                            const SeriesControl& ctl) {
    Invariants inv = invariants_of(curve);
    if (inv.singular) throw SingularCurve("point_to_u: singular curve");
    Real w2 = embedding_scale(inv.disc, tau, ctl);
    RealStructure rs = resolve_real_structure(curve, tau, ctl);

    const Real s_min = 1e-9L;
    Real best_err = -1;
    Complex best_u;
    for (const LocusPath& path : rs.paths) {
        auto x_at = [&](Real s) {
            return real_x_on_locus(rs, w2, tau, path.base + path.dir * s, ctl);
        };
        Real a = s_min, b = path.s_max;
        Real fa = x_at(a) - x_coord, fb = x_at(b) - x_coord;
        auto consider = [&](Real s, Real err) {
            if (best_err < 0 || err < best_err) {
                best_err = err;
                best_u = path.base + path.dir * s;
            }
        };
        if ((fa > 0) == (fb > 0) && fa != 0 && fb != 0) {
            // no sign change: the root may still sit at a path endpoint
            // (2-torsion abscissae land exactly on s_max)
            consider(a, std::abs(fa));
            consider(b, std::abs(fb));
            continue;
        }
        if (fa == 0) b = a;
        else if (fb == 0) a = b;
        for (int it = 0; it < 120 && b - a > 1e-19L * std::max<Real>(1, b); ++it) {
            Real mid = (a + b) / 2;
            Real fm = x_at(mid) - x_coord;
            if (fm == 0) { a = b = mid; break; }
            if ((fm > 0) == (fa > 0)) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
                fb = fm;
            }
        }
        Real s = (a + b) / 2;
        consider(s, std::abs(x_at(s) - x_coord));
    }
    if (best_err < 0 || best_err > 1e-5L * std::max<Real>(1, std::abs(x_coord)))
        throw NoRoot("point_to_u: x not on the real locus to tolerance");
    FundamentalPoint f = make_fundamental(tau, best_u);
    // u and -u carry the same x and the same lambda_inf; prefer u2 in [0, 1/2]
    if (f.u2 < 0 || (f.u2 == 0 && f.u1 < 0)) f = make_fundamental(tau, -f.u);
    return f;
}

}  // namespace intpts
