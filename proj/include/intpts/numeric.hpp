#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <gmpxx.h>

namespace intpts {

// Extended binary floating point (64-bit mantissa on x86-64) for all
// analytic work; exact integer/rational arithmetic everywhere else.
using Real = long double;
using Complex = std::complex<Real>;
using Int = mpz_class;
using Rat = mpq_class;

inline constexpr Real kPi = 3.14159265358979323846264338327950288L;

// Truncation control shared by all q- and lattice-series.
struct SeriesControl {
    Real term_tolerance = 1e-18L;
    long max_terms = 100000;
};

struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& m) : std::runtime_error("NonConvergence: " + m) {}
};
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& m) : std::runtime_error("DomainError: " + m) {}
};
struct UnsupportedForm : std::runtime_error {
    explicit UnsupportedForm(const std::string& m) : std::runtime_error("UnsupportedForm: " + m) {}
};
struct BracketFailure : std::runtime_error {
    explicit BracketFailure(const std::string& m) : std::runtime_error("BracketFailure: " + m) {}
};
struct PrecisionOverflow : std::runtime_error {
    explicit PrecisionOverflow(const std::string& m) : std::runtime_error("PrecisionOverflow: " + m) {}
};
struct SingularCurve : std::runtime_error {
    explicit SingularCurve(const std::string& m) : std::runtime_error("SingularCurve: " + m) {}
};
struct BoxTooLarge : std::runtime_error {
    explicit BoxTooLarge(const std::string& m) : std::runtime_error("BoxTooLarge: " + m) {}
};
struct BadReduction : std::runtime_error {
    explicit BadReduction(const std::string& m) : std::runtime_error("BadReduction: " + m) {}
};
struct DegenerateSieve : std::runtime_error {
    explicit DegenerateSieve(const std::string& m) : std::runtime_error("DegenerateSieve: " + m) {}
};
struct NoRoot : std::runtime_error {
    explicit NoRoot(const std::string& m) : std::runtime_error("NoRoot: " + m) {}
};

// log|n| for arbitrary-size integers without overflowing double range.
inline Real log_abs(const Int& n) {
    if (n == 0) throw DomainError("log_abs(0)");
    long exp2;
    double d = mpz_get_d_2exp(&exp2, n.get_mpz_t());
    return std::log(std::abs((Real)d)) + (Real)exp2 * 0.69314718055994530941723212145818L;
}

inline Real to_real(const Int& n) { return (Real)mpz_get_d(n.get_mpz_t()); }
inline Real to_real(const Rat& q) {
    // mpq_get_d only gives double; split for extended precision when needed.
    return (Real)mpq_get_d(q.get_mpq_t());
}

inline Int isqrt_floor(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Int& n, Int& root) {
    if (n < 0) return false;
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return true;
}

// floor of the d-th root
inline Int iroot_floor(const Int& n, unsigned long d) {
    Int r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), d);
    return r;
}

// splitmix64: deterministic cross-platform stream for seeded corpora.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Data-parallel map over [0, n) with deterministic, input-ordered assembly.
// jobs <= 1 runs inline.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
    if (jobs <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::size_t nthreads = std::min<std::size_t>((std::size_t)jobs, n);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([t, n, nthreads, &fn] {
            for (std::size_t i = t; i < n; i += nthreads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace intpts
