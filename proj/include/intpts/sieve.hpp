#pragma once

#include <string>
#include <vector>

#include "intpts/curves.hpp"
#include "intpts/enumerate.hpp"
#include "intpts/numeric.hpp"

namespace intpts {

struct SieveSetup {
    std::vector<Int> primes;  // each <= X
    Real alpha = 0.75L;       // |S_p| <= alpha p for every p
    Int X;                    // prime cap
    Int N_len;                // interval length (S inside {M, ..., M+N})
};

// |S| <= alpha (N + X^2) / ((1 - alpha) |P|)
Real large_sieve_bound(const SieveSetup& setup);

struct SieveSpecialization {
    Real bound;             // alpha 2 N^{1/2} log N / (1 - alpha)
    long prime_count;       // exact #{43 < p <= sqrt(N)}
    bool premise_ok;        // |P| > sqrt(N)/log N
    Real full_formula;      // the full sieve bound with the exact prime count
};

// The primes-in-(43, sqrt(N)] specialization with the premise checked
// against an exact prime count.
SieveSpecialization large_sieve_special(const Int& N, Real alpha = 0.75L);

std::vector<long> primes_up_to(long n);
long prime_count_up_to(long n);

struct CertifiedInterval {
    Real bound;                 // certified cap on #x in [lo,hi] admitting integral points
    Real alpha_used;
    long prime_count;
    std::vector<Int> primes;
    std::vector<std::string> notes;
    bool trivial = false;       // fell back to the interval length (no usable primes)
};

// Large-sieve certificate over an x-interval: P = primes in (43, sqrt(len)]
// excluding p | 6 Delta, alpha = 3/4 (proved for p > 42) or the measured
// max alpha_p when exact_alpha is set.
CertifiedInterval sieve_certified_interval(const ShortCurve& curve, const Int& lo, const Int& hi,
                                           bool exact_alpha = false);

struct XInterval {
    Int lo, hi;
    Int length() const { return hi - lo; }
};

struct IntervalDecomposition {
    std::vector<XInterval> steep_arcs;      // certified |3x^2 + A| >= N^{4/3+eps}
    std::vector<XInterval> flat_intervals;  // residual windows
    Real flat_length_cap;                   // (4/sqrt 3) N^{2/3-eps} when A < 0 hypotheses hold
    bool hypotheses_met;                    // M > N^{2/3+eps/2}-type premises
};

// Split [-N,-M] u [M,N] into slope-certified arcs and residual flat windows
// around +-sqrt(|A|/3), following the sign-of-A case analysis.
IntervalDecomposition gradient_decomposition(const ShortCurve& curve, const Int& N, Real eps,
                                             const Int& M);

}  // namespace intpts
