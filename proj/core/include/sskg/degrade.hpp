#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sskg/probcore.hpp"
#include "sskg/special.hpp"

namespace sskg {

/// Outcome of a degradedness decision. Physical verdicts also carry the LP
/// witness (a Markov triple always factorizes exactly), so downstream code
/// can verify the factorization no matter which kind was decided.
struct DegradednessVerdict {
    enum class Kind { Physical, Stochastic, None };
    Kind kind;
    std::optional<Channel> witness; // row-stochastic W with P_{Z|X} ~= P_{Y|X} W
    double residual;                // optimal slack L1 of the feasibility program
    double tol;                     // residual tolerance the decision used
};

/// True iff I(X;Z|Y) <= tol: the triple is (within tolerance) a Markov chain
/// X - Y - Z, i.e. physically degraded.
bool markov_test(const JointDist3& j, double tol = 1e-10);

/// Searches for a row-stochastic W with P_{Z|X} = P_{Y|X} W by linear
/// feasibility: min sum of slacks subject to P_{Y|X} W + s+ - s- = P_{Z|X},
/// W row-stochastic, slacks >= 0. Two-phase dense simplex, Bland's rule.
/// Zero-mass X rows are dropped before the solve; throws validation_error
/// when no X symbol has positive mass.
/// Verdict kind is Stochastic when the optimal residual is <= tol, else None.
DegradednessVerdict stochastic_degradedness_test(const JointDist3& j, double tol = 1e-8);

/// markov_test first (kind Physical when it passes), then the LP to attach
/// witness and residual; falls back to the LP verdict otherwise.
DegradednessVerdict classify_degradedness(const JointDist3& j, double markovTol = 1e-10,
                                          double lpTol = 1e-8);

/// True iff B's CCDF >= A's CCDF at every grid point (B stochastically
/// dominates A in the usual order). Grids must match exactly.
bool usual_order_check(const GridCcdf& a, const GridCcdf& b);

struct OrderReport {
    bool dominated;                       // X-power CCDF >= Z-power CCDF everywhere
    std::optional<double> firstViolation; // smallest grid x where domination fails
    std::size_t gridPoints;
};

/// Evaluates both power CCDFs on the given grid and reports whether the
/// X law dominates the Z law at every point.
OrderReport nakagami_order_report(const NakagamiSpec& specX, const NakagamiSpec& specZ,
                                  const std::vector<double>& grid);

bool nakagami_order_check(const NakagamiSpec& specX, const NakagamiSpec& specZ,
                          const std::vector<double>& grid);

/// Pairs (ax^2, az^2) drawn through a common uniform variate, so the
/// dominated coordinate never exceeds the dominating one.
struct CouplingPair {
    std::uint64_t seed;
    std::vector<std::pair<double, double>> pairs; // (x-power, z-power) per draw
};

/// Comonotone coupling via the shared-uniform quantile transform. Requires
/// the order check to pass on the default grid; throws guard_error otherwise
/// (and when a drawn pair still violates domination off-grid).
CouplingPair construct_coupling(const NakagamiSpec& specX, const NakagamiSpec& specZ,
                                std::size_t n, std::uint64_t seed);

/// Equivalent single-letter wiretap channel of the key agreement scheme:
/// from a source triple (X, Y, Z) and uniform U on the X alphabet, builds
/// the joint of (U, Y', Z') with Y' = (Y, V), Z' = (Z, V), V = U (+) X,
/// (+) being addition modulo |X| on alphabet indices. Pair labels "y|v".
JointDist3 cwtc_build(const JointDist3& j, const FiniteDist& uDist);

/// True iff I(U;Z'|Y') <= tol on a built triple: the equivalent wiretap
/// channel is degraded, so its secrecy capacity results apply.
bool cwtc_degraded_check(const JointDist3& cwtcJoint, double tol = 1e-10);

} // namespace sskg
