#include "sskg/bounds.hpp"

#include <cmath>

#include "sskg/degrade.hpp"

namespace sskg {

SkBounds sk_bounds(const JointDist3& j) {
    const double ixy = mutual_information(marginal_xy(j));
    const double ixz = mutual_information(marginal_xz(j));
    const double iyz = mutual_information(marginal_yz(j));
    SkBounds b;
    b.lowerXY = ixy - ixz;
    b.lowerYX = ixy - iyz;
    b.upperMI = ixy;
    b.upperCMI = conditional_mutual_information(j, Conditioning::OnZ);
    return b;
}

std::optional<double> markov_capacity(const JointDist3& j, double markovTol) {
    if (!markov_test(j, markovTol)) return std::nullopt;
    const auto b = sk_bounds(j);
    const double c = b.lowerXY;
    if (std::fabs(c - b.lower()) > 1e-9 || std::fabs(c - b.upper()) > 1e-9) {
        throw numeric_error("markov_capacity: bounds fail to collapse on a Markov triple");
    }
    return c;
}

BudgetParams::BudgetParams(std::size_t n_, double xi_, double omega_)
    : n(n_), xi(xi_), omega_n(omega_) {
    if (n == 0) throw validation_error("BudgetParams: n must be >= 1");
    if (!(xi > 0.0) || !(xi < 1.0)) throw validation_error("BudgetParams: xi must lie in (0, 1)");
    if (!(omega_n > 0.0) || !std::isfinite(omega_n)) {
        throw validation_error("BudgetParams: omega_n must be positive and finite");
    }
}

bool budget_regime_ok(const BudgetParams& p) {
    const double root = std::sqrt(static_cast<double>(p.n));
    return p.omega_n * root < static_cast<double>(p.n);
}

double covert_key_budget(double dZ, double dY, const BudgetParams& p) {
    if (!(dZ >= 0.0) || !(dY >= 0.0)) {
        throw validation_error("covert_key_budget: divergences must be nonnegative");
    }
    const double inner = (1.0 + p.xi) * dZ - (1.0 - p.xi) * dY;
    if (inner <= 0.0) return 0.0;
    return p.omega_n * std::sqrt(static_cast<double>(p.n)) * inner;
}

double sskg_rate_sufficient(std::size_t n, double c) {
    if (n == 0) throw validation_error("sskg_rate_sufficient: n must be >= 1");
    if (!(c >= 0.0)) throw validation_error("sskg_rate_sufficient: c must be >= 0");
    return 1.0 + c / std::sqrt(static_cast<double>(n));
}

KeySchedule key_schedule(const JointDist3& j, const BudgetParams& p, double dZ, double dY,
                         bool perBlockPhase1) {
    KeySchedule s;
    s.perBlockPhase1 = perBlockPhase1;
    s.phase1KeyBits = perBlockPhase1 ? 1.0 : static_cast<double>(p.n);
    s.phase2KeyBits = covert_key_budget(dZ, dY, p);
    const double rate = sk_bounds(j).lower();
    s.totalGeneratedBits = static_cast<double>(p.n) * (rate > 0.0 ? rate : 0.0);
    s.feasible = s.totalGeneratedBits >= s.phase1KeyBits + s.phase2KeyBits;
    return s;
}

double confusion_rate_threshold(const JointDist3& j, double hU) {
    const auto jxz = marginal_xz(j);
    const double hxz = entropy_bits(jxz.probs());
    const double hz = entropy(marginal_z(j));
    return hU - (hxz - hz); // H(U) - H(X|Z)
}

double total_rate_bound(const JointDist3& j, double hU) {
    const auto jxy = marginal_xy(j);
    const double hxy = entropy_bits(jxy.probs());
    const double hy = entropy(marginal_y(j));
    return hU - (hxy - hy); // H(U) - H(X|Y)
}

} // namespace sskg
