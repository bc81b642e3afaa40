#include "intpts/sieve.hpp"

#include <algorithm>
#include <cmath>

namespace intpts {

Real large_sieve_bound(const SieveSetup& setup) {
    if (setup.primes.empty()) throw DegenerateSieve("large_sieve_bound: empty prime set");
    if (!(setup.alpha > 0) || setup.alpha >= 1)
        throw DegenerateSieve("large_sieve_bound: alpha must lie in (0,1)");
    for (const Int& p : setup.primes)
        if (p > setup.X) throw DomainError("large_sieve_bound: prime exceeds X");
    Real N = to_real(setup.N_len);
    Real X = to_real(setup.X);
    return setup.alpha * (N + X * X) / ((1 - setup.alpha) * (Real)setup.primes.size());
}

std::vector<long> primes_up_to(long n) {
    std::vector<long> out;
    if (n < 2) return out;
    std::vector<unsigned char> sieve((std::size_t)n + 1, 1);
    sieve[0] = sieve[1] = 0;
    for (long i = 2; i * i <= n; ++i)
        if (sieve[(std::size_t)i])
            for (long j = i * i; j <= n; j += i) sieve[(std::size_t)j] = 0;
    for (long i = 2; i <= n; ++i)
        if (sieve[(std::size_t)i]) out.push_back(i);
    return out;
}

long prime_count_up_to(long n) { return (long)primes_up_to(n).size(); }

SieveSpecialization large_sieve_special(const Int& N, Real alpha) {
    if (!(alpha > 0) || alpha >= 1) throw DegenerateSieve("alpha in (0,1) required");
    SieveSpecialization sp;
    Real Nr = to_real(N);
    if (N > Int("2500000000000000"))
        throw BoxTooLarge("large_sieve_special: sqrt(N) beyond the deterministic sieve guard");
    long root = mpz_get_si(isqrt_floor(N).get_mpz_t());
    auto ps = primes_up_to(root);
    long cnt = 0;
    Int Xmax = 0;
    std::vector<Int> setp;
    for (long p : ps)
        if (p > 43) {
            ++cnt;
            setp.push_back(Int(p));
            if (p > Xmax) Xmax = p;
        }
    sp.prime_count = cnt;
    Real logN = std::log(Nr);
    sp.premise_ok = (Real)cnt > std::sqrt(Nr) / logN;
    sp.bound = alpha * 2 * std::sqrt(Nr) * logN / (1 - alpha);
    if (cnt > 0) {
        SieveSetup st{setp, alpha, Xmax, N};
        sp.full_formula = large_sieve_bound(st);
    } else {
        sp.full_formula = Nr + 1;
    }
    return sp;
}

CertifiedInterval sieve_certified_interval(const ShortCurve& curve, const Int& lo, const Int& hi,
                                           bool exact_alpha) {
    if (hi - lo < 2) throw DomainError("sieve_certified_interval: interval length >= 2 required");
    CertifiedInterval ci;
    Int len = hi - lo;
    if (len > Int("2500000000000000"))
        throw BoxTooLarge("sieve_certified_interval: interval beyond the sieve guard");
    long root = mpz_get_si(isqrt_floor(len).get_mpz_t());
    Int six_disc = 6 * curve.disc();
    long excluded = 0;
    Int Xmax = 0;
    for (long p : primes_up_to(root)) {
        if (p <= 43) continue;
        if (six_disc % p == 0) {
            ++excluded;
            continue;
        }
        ci.primes.push_back(Int(p));
        if (p > Xmax) Xmax = p;
    }
    ci.notes.push_back("excluded_bad_primes=" + std::to_string(excluded));
    if (ci.primes.empty()) {
        ci.trivial = true;
        ci.bound = to_real(len) + 1;
        ci.alpha_used = 1;
        ci.prime_count = 0;
        ci.notes.push_back("no usable primes; trivial bound = interval length");
        return ci;
    }
    Real alpha = 0.75L;
    if (exact_alpha) {
        Real amax = 0;
        for (const Int& p : ci.primes) {
            ResidueStats st = xresidues_mod_p(curve, p);
            if (st.alpha_p > amax) amax = st.alpha_p;
        }
        alpha = amax;
        if (alpha <= 0) alpha = Real(1) / to_real(ci.primes.back());
    }
    SieveSetup setup{ci.primes, alpha, Xmax, len};
    ci.bound = large_sieve_bound(setup);
    ci.alpha_used = alpha;
    ci.prime_count = (long)ci.primes.size();
    return ci;
}

namespace {

Int ceil_real(Real x) {
    return Int(std::ceil((double)x));
}

// subtract the union of closed intervals `cut` from [lo,hi]
std::vector<XInterval> subtract(const Int& lo, const Int& hi, std::vector<XInterval> cut) {
    std::vector<XInterval> out;
    std::sort(cut.begin(), cut.end(), [](const XInterval& a, const XInterval& b) { return a.lo < b.lo; });
    Int cur = lo;
    for (auto& c : cut) {
        if (c.hi < cur || c.lo > hi) continue;
        if (c.lo > cur) out.push_back({cur, std::min<Int>(c.lo - 1, hi)});
        cur = std::max<Int>(cur, c.hi + 1);
        if (cur > hi) break;
    }
    if (cur <= hi) out.push_back({cur, hi});
    return out;
}

}  // namespace

IntervalDecomposition gradient_decomposition(const ShortCurve& curve, const Int& N, Real eps,
                                             const Int& M) {
    if (M <= 0 || M > N) throw DomainError("gradient_decomposition: 0 < M <= N required");
    IntervalDecomposition dec;
    Real Nr = to_real(N);
    Real thr = std::pow(Nr, 4.0L / 3 + eps);            // slope certificate |3x^2+A| >= thr
    Real x_steep = std::pow(Nr, 2.0L / 3 + eps / 2);    // A >= 0: |x| >= this is steep
    dec.flat_length_cap = (4.0L / std::sqrt((Real)3)) * std::pow(Nr, 2.0L / 3 - eps);

    std::vector<XInterval> flats;
    const Int& A = curve.A;
    Real Ar = to_real(A);

    if (A >= 0) {
        dec.hypotheses_met = Ar >= thr || to_real(M) > x_steep;
        if (!dec.hypotheses_met) {
            // residual window [M, N^{2/3+eps/2}] and mirror (premises unmet)
            Int cut = std::min(N, ceil_real(x_steep));
            if (cut >= M) {
                flats.push_back({M, cut});
                flats.push_back({-cut, -M});
            }
        }
    } else {
        Int C = -A;
        Real Cr = to_real(C);
        Real big_c = std::pow(Nr, 4.0L / 3 + 4 * eps);
        if (Cr <= big_c) {
            dec.hypotheses_met = to_real(M) > std::pow(Nr, 2.0L / 3 + 2 * eps);
            if (!dec.hypotheses_met) {
                // certify directly: 3x^2 - C >= thr iff x^2 >= (thr + C)/3
                Real xcut = std::sqrt((thr + Cr) / 3);
                Int cut = std::min(N, ceil_real(xcut));
                if (cut >= M) {
                    flats.push_back({M, cut});
                    flats.push_back({-cut, -M});
                }
            }
        } else {
            dec.hypotheses_met = true;
            // failure zones around +-sqrt(C/3): x = +-sqrt(C/3) + t with
            // |t| < h outward, |t| <= 2h inward, h = N^{4/3+eps}/sqrt(3C)
            Real c = std::sqrt(Cr / 3);
            Real h = std::pow(Nr, 4.0L / 3 + eps) / std::sqrt(3 * Cr);
            Int plo = Int(std::floor((double)(c - 2 * h)));
            Int phi = ceil_real(c + h);
            flats.push_back({plo, phi});
            flats.push_back({-phi, -plo});
        }
    }

    // clip flats to the requested ranges and emit the steep complement
    std::vector<XInterval> clipped;
    auto clip_to = [&](const Int& lo, const Int& hi) {
        std::vector<XInterval> cut;
        for (auto& f : flats) {
            Int a = std::max(f.lo, lo);
            Int b = std::min(f.hi, hi);
            if (a <= b) cut.push_back({a, b});
        }
        for (auto& c : cut) clipped.push_back(c);
        for (auto& st : subtract(lo, hi, cut)) dec.steep_arcs.push_back(st);
    };
    clip_to(-N, -M);
    clip_to(M, N);
    // merge adjacent flats
    std::sort(clipped.begin(), clipped.end(),
              [](const XInterval& a, const XInterval& b) { return a.lo < b.lo; });
    for (auto& f : clipped) {
        if (!dec.flat_intervals.empty() && f.lo <= dec.flat_intervals.back().hi + 1)
            dec.flat_intervals.back().hi = std::max(dec.flat_intervals.back().hi, f.hi);
        else
            dec.flat_intervals.push_back(f);
    }
    return dec;
}

}  // namespace intpts
