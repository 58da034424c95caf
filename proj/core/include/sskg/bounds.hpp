#pragma once

#include <cstddef>
#include <optional>

#include "sskg/probcore.hpp"

namespace sskg {

/// Secret-key rate bounds for a source triple under the combined secrecy
/// and stealth constraint. All four components are kept so consumers can
/// reproduce the max/min instead of trusting the extremes.
struct SkBounds {
    double lowerXY; // I(X;Y) - I(X;Z)
    double lowerYX; // I(Y;X) - I(Y;Z)
    double upperMI; // I(X;Y)
    double upperCMI; // I(X;Y|Z)
    double lower() const { return lowerXY > lowerYX ? lowerXY : lowerYX; }
    double upper() const { return upperMI < upperCMI ? upperMI : upperCMI; }
};

SkBounds sk_bounds(const JointDist3& j);

/// Key capacity when X - Y - Z is Markov: I(X;Y) - I(X;Z). Returns nullopt
/// (no capacity claim) when the Markov test fails at markovTol; throws
/// numeric_error if the collapsed bounds fail to agree within 1e-9.
std::optional<double> markov_capacity(const JointDist3& j, double markovTol = 1e-10);

/// Blocklength and scaling inputs of the covert key budget.
struct BudgetParams {
    std::size_t n;  // blocklength, >= 1
    double xi;      // slack in (0, 1)
    double omega_n; // scaling sequence value at n, > 0
    BudgetParams(std::size_t n_, double xi_, double omega_);
};

/// True iff omega_n sqrt(n) < n, the regime where the scaling sequence is
/// still vanishing relative to the blocklength. Callers warn otherwise.
bool budget_regime_ok(const BudgetParams& p);

/// Key bits needed to keep a covert transmission unlinkable:
/// omega_n sqrt(n) [(1+xi) dZ - (1-xi) dY]^+, with dZ, dY the output
/// divergences at the adversary and the legitimate receiver.
double covert_key_budget(double dZ, double dY, const BudgetParams& p);

/// Sufficient secret-key rate for the discussion phase: 1 + c / sqrt(n).
/// The constant c stands in for an unspecified vanishing term; the default
/// 0 never invents a constant silently.
double sskg_rate_sufficient(std::size_t n, double c = 0.0);

/// Two-phase key ledger: bits spent hiding the discussion (phase 1), bits
/// spent on the covert payload (phase 2), and bits the source can generate.
struct KeySchedule {
    double phase1KeyBits;
    double phase2KeyBits;
    double totalGeneratedBits;
    bool feasible;      // totalGeneratedBits >= phase1 + phase2
    bool perBlockPhase1; // nonstandard costing: 1 bit per block instead of per symbol
};

/// phase1 = n bits (one indicator bit per discussion symbol; the per-block
/// alternative sits behind perBlockPhase1 and is not the reference
/// behavior), phase2 = covert_key_budget(dZ, dY, p), total = n times the
/// nonnegative part of the sk_bounds lower bound.
KeySchedule key_schedule(const JointDist3& j, const BudgetParams& p, double dZ, double dY,
                         bool perBlockPhase1 = false);

/// Smallest confusion rate that saturates the adversary's decoder:
/// H(U) - H(X|Z). Simulations must pick R1 strictly above it.
double confusion_rate_threshold(const JointDist3& j, double hU);

/// Per-symbol cap on R + R1 for reliable decoding: H(U) - H(X|Y).
double total_rate_bound(const JointDist3& j, double hU);

} // namespace sskg
