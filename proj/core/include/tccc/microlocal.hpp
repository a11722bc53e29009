#pragma once

#include "tccc/divisors.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace tccc {

/// One piece (sigma^perp + M) x sigma of Lambda_Sigma.
struct LambdaPiece {
    std::size_t cone = 0;
    std::vector<LatticeVector> perp_basis; // basis of sigma^perp cap M
};

struct LambdaSigma {
    FanPtr fan;
    std::vector<LambdaPiece> pieces; // one per cone, zero cone first
};

LambdaSigma lambda_sigma(FanPtr fan);

/// True iff p lies in some cone sigma with x in sigma^perp + M.
bool lambda_contains(const Fan& fan, const RationalVector& x, const RationalVector& p);

/// Piece (chi_sigma + sigma^perp) x sigma of the singular support bound.
struct SSPiece {
    std::size_t cone = 0;
    RationalVector apex;
    std::size_t affine_dim = 0; // n - dim sigma
};

struct SSEstimate {
    std::vector<SSPiece> pieces; // one per cone, zero cone first
};

SSEstimate ss_estimate(const Divisor& chi);

enum class Verdict { True, Unknown };

struct DisjointnessReport {
    Verdict verdict = Verdict::Unknown;
    /// For True: every ray with its non-integral coefficient. For Unknown: the
    /// first ray whose coefficient is an integer.
    std::vector<std::size_t> rays;
};

DisjointnessReport disjoint_at_infinity(const Divisor& d);

struct RayBreakpoints {
    std::size_t ray = 0;
    std::vector<Rational> breakpoints; // s with a_{rho,s} integral, within [0, 1]
    bool in_unit_interval = false;     // some breakpoint in the open interval
    bool lower_ok = true;              // <x,v> + eps0 a < a_{rho,s} - R a on (0,1)
    bool upper_ok = true;              // a_{rho,s} - R a < floor(<x,v>) + 1 on (0,1)
};

struct PathCertificate {
    std::vector<RayBreakpoints> rays;
    bool convex_at_samples = true; // D_s strictly convex for s in {0, 1/2, 1}
    bool pass = false;
    std::string failure; // names the ray and s of the first violation
};

PathCertificate validate_path(const DeformationPath& p);

} // namespace tccc
