#include "intpts/delpezzo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

namespace intpts {

Int eval_form(const Int* coeffs, int degree, const Int& u, const Int& v) {
    // sum c_i u^{degree-i} v^i
    Int acc = 0;
    std::vector<Int> upow((std::size_t)degree + 1), vpow((std::size_t)degree + 1);
    upow[0] = 1;
    vpow[0] = 1;
    for (int i = 1; i <= degree; ++i) {
        upow[(std::size_t)i] = upow[(std::size_t)i - 1] * u;
        vpow[(std::size_t)i] = vpow[(std::size_t)i - 1] * v;
    }
    for (int i = 0; i <= degree; ++i)
        acc += coeffs[i] * upow[(std::size_t)(degree - i)] * vpow[(std::size_t)i];
    return acc;
}

bool identically_singular(const DP1Surface& s) {
    // Delta(u, 1) has degree <= 18; 19 distinct sample roots plus the leading
    // (u,v)=(1,0) value force the zero polynomial.
    auto delta_at = [&](const Int& u, const Int& v) -> Int {
        Int f4 = eval_form(s.F4.data(), 4, u, v);
        Int f6 = eval_form(s.F6.data(), 6, u, v);
        return 4 * f4 * f4 * f4 + 27 * f6 * f6;
    };
    if (delta_at(1, 0) != 0) return false;
    for (long u = -9; u <= 9; ++u)
        if (delta_at(Int(u), Int(1)) != 0) return false;
    return true;
}

Fiber specialize(const DP1Surface& s, const Int& u, const Int& v) {
    Fiber f;
    f.curve.A = eval_form(s.F4.data(), 4, u, v);
    f.curve.B = eval_form(s.F6.data(), 6, u, v);
    f.singular = f.curve.disc() == 0;
    return f;
}

DPCountReport count_S_N(const DP1Surface& s, const Int& N, int jobs) {
    if (N < 0) throw DomainError("count_S_N: N >= 0");
    if (N > 30) throw BoxTooLarge("count_S_N: N <= 30 (total work is O(N^4))");
    auto t0 = std::chrono::steady_clock::now();
    DPCountReport rep;
    rep.N = N;
    long Nl = mpz_get_si(N.get_mpz_t());
    Int x_cap = N * N, y_cap = N * N * N;
    BoxSpec box{-x_cap, x_cap, -y_cap, y_cap};

    long side = 2 * Nl + 1;
    std::vector<Fiber> fibers((std::size_t)(side * side));
    for (long ui = 0; ui < side; ++ui)
        for (long vi = 0; vi < side; ++vi)
            fibers[(std::size_t)(ui * side + vi)] = specialize(s, Int(ui - Nl), Int(vi - Nl));

    // deduplicate by (A, B): enumerate each distinct fiber once
    std::map<std::pair<Int, Int>, long> counts;
    std::vector<std::pair<Int, Int>> keys;
    for (auto& f : fibers) {
        auto key = std::make_pair(f.curve.A, f.curve.B);
        if (counts.emplace(key, -1).second) keys.push_back(key);
    }
    EnumerateOptions eo;
    std::vector<long> key_counts(keys.size());
    parallel_for(keys.size(), jobs, [&](std::size_t i) {
        ShortCurve c{keys[i].first, keys[i].second};
        key_counts[i] = enumerate_box(c, box, eo).count();
    });
    for (std::size_t i = 0; i < keys.size(); ++i) counts[keys[i]] = key_counts[i];

    rep.degenerate = true;
    for (long ui = 0; ui < side; ++ui)
        for (long vi = 0; vi < side; ++vi) {
            const Fiber& f = fibers[(std::size_t)(ui * side + vi)];
            long c = counts[{f.curve.A, f.curve.B}];
            DPFiberEntry e;
            e.u = ui - Nl;
            e.v = vi - Nl;
            e.count = c;
            e.singular = f.singular;
            rep.per_fiber.push_back(e);
            rep.total += c;
            if (f.singular) {
                ++rep.disc_zero_count;
                rep.singular_total += c;
            } else {
                rep.degenerate = false;
            }
        }
    rep.disc_zero_reference = std::pow((double)std::max(1L, Nl), 1.0 / 12 + 0.1);
    rep.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

DPExponentTable dp_exponent_experiment(const DP1Surface& s, const std::vector<Int>& Ns,
                                       int jobs) {
    DPExponentTable t;
    t.degenerate = identically_singular(s);
    for (const Int& N : Ns) {
        DPCountReport rep = count_S_N(s, N, jobs);
        long mx = 0;
        for (auto& e : rep.per_fiber) mx = std::max(mx, e.count);
        t.rows.push_back({N, rep.total, mx});
    }
    auto slope = [&](auto value_of) {
        Real sx = 0, sy = 0, sxx = 0, sxy = 0;
        long n = 0;
        for (auto& row : t.rows) {
            Int v = value_of(row);
            if (v <= 0) continue;
            Real lx = log_abs(row.N), ly = log_abs(v);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++n;
        }
        if (n < 2) return (Real)0;
        return ((Real)n * sxy - sx * sy) / ((Real)n * sxx - sx * sx);
    };
    t.total_slope = slope([](const DPExponentRow& r) { return r.total; });
    t.per_fiber_slope = slope([](const DPExponentRow& r) { return Int(r.max_fiber); });
    return t;
}

}  // namespace intpts
