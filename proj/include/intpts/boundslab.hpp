#pragma once

#include <string>
#include <vector>

#include "intpts/curves.hpp"
#include "intpts/numeric.hpp"

namespace intpts {

struct GridSpec {
    int tau_per_arc = 200;
    Real im_max = 10;
    int u_samples = 200;
    long coeff_bound = 20;  // curve family half-width for P1
    Int N = Int(10000);
    Real delta = 0.1L;
    int jobs = 1;

    std::string describe() const;
};

struct VerificationReport {
    std::string check_id;
    long samples = 0;
    Real worst_case = 0;
    Real threshold = 0;
    bool passed = false;
    Real empirical_constant = 0;
    bool has_empirical = false;
    Real stability_delta = 0;  // relative gap between half-grid constants
    std::string grid;
    std::vector<std::string> details;
};

std::vector<std::string> bounds_check_ids();

// One numerical verification of a printed constant or inequality.
// Deterministic given the grid.
VerificationReport run_check(const std::string& check_id, const GridSpec& grid = {});

struct ExponentRow {
    Int N;
    Int count;
};

struct ExponentTable {
    std::vector<ExponentRow> rows;
    Real fitted_slope = 0;
    Real reference = 0;
    bool closed_form_ok = true;
    std::vector<std::string> details;
};

// y = x^d family: exact counts against 2 floor(N^{1/d}) + 1.
ExponentTable exponent_experiment_rational(int d, const std::vector<Int>& Ns);

// max integral-point count over {y^2 = x^3 + Ax + B : |A|,|B| <= bound},
// fitted log-log slope against the 1/3 reference.
ExponentTable exponent_experiment_elliptic(long coeff_bound, const std::vector<Int>& Ns,
                                           int jobs = 1);

// Pointwise eta/3 <= alpha/2 + eps on a seeded curve sample meeting the
// |j| > eps1, |A| <= N^{4 eta/3 - eps0} hypotheses, plus the |B| cap forms.
VerificationReport verify_slope_exponent_inequality(long coeff_bound, const Int& N, Real eps, Real eps0, Real eps1,
                                  std::uint64_t seed = 0);

}  // namespace intpts
