#pragma once

#include "tccc/cellular.hpp"
#include "tccc/divisors.hpp"
#include "tccc/microlocal.hpp"
#include "tccc/twisted_sheaf.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace tccc {

struct WeightCohomology {
    LatticeVector m;
    GradedDims dims;
};

struct CohomologyReport {
    Divisor divisor;
    std::vector<WeightCohomology> per_weight; // nonzero weights only
    GradedDims total;
    bool shell_zero = true; // weights just outside the search box contribute nothing
};

/// H^*(X, O(D)) weight by weight: H^p_m is the reduced cohomology in degree
/// p - 1 of the fan subcomplex on the rays with <m, v_rho> > a_rho.
/// Throws InputError for non-integral divisors.
CohomologyReport toric_cohomology(const Divisor& d);

struct InstanceResult {
    std::string key;
    bool pass = false;
    std::string transcript;
};

struct VerificationResult {
    std::string suite;
    std::vector<InstanceResult> instances;

    std::size_t passed() const;
    std::size_t failed() const { return instances.size() - passed(); }
    bool ok() const { return failed() == 0; }
    void add(std::string key, bool pass, std::string transcript = {});
    void merge(const VerificationResult& other);
};

std::string describe(const Divisor& d);
std::string describe(const RationalVector& x);

/// torus_hom(D1, D2) against toric_cohomology(D2 - D1), totals only.
VerificationResult verify_ccc_hom(const Divisor& d1, const Divisor& d2);

/// Stalk of the torus sheaf: sum over lattice m of stalk_P(chi, x + m).
GradedDims torus_stalk(const Divisor& chi, const RationalVector& x);

/// The shift k with stalk = hom(P(D_[x]), F) shifted by k, measured on
/// P1 at theta = 0 with F the skyscraper. Placement in degree -n predicts 1 = n.
int calibrate_shift();

/// Compares torus_stalk(D', x) with torus_hom(D_[x], D') shifted by
/// calibrated * n.
VerificationResult verify_corepresentability(const RationalVector& theta, const Divisor& dprime);

/// Grid of theta in [0,1)^n with all denominators at most max_denom.
std::vector<RationalVector> theta_grid(std::size_t n, int max_denom);

/// Classes (class_key) of D_[x] over the grid.
std::set<std::vector<Rational>> probe_collection(FanPtr fan, const std::vector<RationalVector>& grid);

/// Graded stalk of P(F) * P(G) at x on the line, from the compactly
/// supported cochains of the fiber over x. One-dimensional fans only.
GradedDims convolution_stalk_1d(const BlockComplex& f, const BlockComplex& g, const Rational& x);

/// Every integral divisor with coefficients in [-range, range].
std::vector<Divisor> divisors_in_range(FanPtr fan, int range);

struct SuiteConfig {
    std::string fan;      // empty: suite default
    int range = -1;       // -1: suite default
    int denom = -1;       // -1: suite default
    std::uint64_t seed = 20240601;
    int samples = -1;     // -1: suite default
};

std::vector<std::string> suite_names();
/// Throws InputError for an unknown suite.
VerificationResult run_suite(const std::string& name, const SuiteConfig& config = {});

} // namespace tccc
