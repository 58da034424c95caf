#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sskg/probcore.hpp"

namespace sskg {

/// Shape of a wiretap codebook: L = 2^ceil(nR) key bins of L1 = 2^ceil(nR1)
/// confusion words each, over length-n strings from a q-ary alphabet.
struct CodebookSpec {
    std::size_t n;
    double rateKey;       // R, bits/symbol
    double rateConfusion; // R1, bits/symbol
    std::size_t alphabetSize;
    std::uint64_t seed;

    CodebookSpec(std::size_t n_, double rateKey_, double rateConfusion_,
                 std::size_t alphabetSize_, std::uint64_t seed_);

    std::size_t num_secure() const;    // L
    std::size_t num_confusion() const; // L1

    /// Exact enumeration is allowed while L * L1 * alphabetSize^(3n) stays
    /// within 2^30 elementary probability evaluations.
    bool exact_guard_ok() const;
};

/// Throws guard_error unless exact_guard_ok().
void require_exact_guard(const CodebookSpec& spec);

/// Materialized codebook: one length-n word per (bin, confusion) index,
/// each symbol drawn i.i.d. from the generating law pU.
class Codebook {
public:
    Codebook(CodebookSpec spec, FiniteDist pU, std::vector<std::uint8_t> words);

    const CodebookSpec& spec() const { return spec_; }
    const FiniteDist& p_u() const { return pU_; }
    std::span<const std::uint8_t> word(std::size_t m, std::size_t w) const {
        const std::size_t off = (m * spec_.num_confusion() + w) * spec_.n;
        return {words_.data() + off, spec_.n};
    }

private:
    CodebookSpec spec_;
    FiniteDist pU_;
    std::vector<std::uint8_t> words_;
};

/// Reproducible under spec.seed. Refuses books too large to materialize.
Codebook generate_codebook(const CodebookSpec& spec, const FiniteDist& pU);

/// All protocol constraints evaluated for one codebook on one source.
struct ProtocolReport {
    double pe = 0.0;             // P(Bob's bin estimate != the key bin)
    double uniformityGap = 0.0;  // log2(L) - H(K), bits
    double effSecrecy = 0.0;     // D(P_{K Z^n F} || P_K Q_{Z^n F}), bits
    double combinedMetric = 0.0; // D(P_{K Z^n F} || P_unif Q_{Z^n F}), bits
    double nonConfusion = 0.0;   // D(P_{K Z^n F} || P_K P_{Z^n F}) = I(K; Z^n F), bits
    double nonStealth = 0.0;     // D(P_{Z^n F} || Q_{Z^n F}), bits
    std::string mode;      // "exact" | "monte-carlo"
    std::size_t trials = 0;
    double peStdErr = 0.0;
    bool pluginDivergences = false; // divergences are biased plug-in estimates
    bool degenerate = false;        // too few trials to mean anything
};

/// Full enumeration of the discussion protocol: Alice draws key bin m and
/// confusion index w uniformly, observes x^n, publishes f^n = u^n(m,w) (+)
/// x^n; Bob maximum-likelihood-decodes (m,w) from (y^n, f^n), ties broken
/// toward the lexicographically smallest pair; Willie holds (z^n, f^n).
/// All probabilities are exact sums over the outcome space.
ProtocolReport run_protocol_exact(const JointDist3& j, const Codebook& cb);

/// Sampled variant for configurations past the exact guard: unbiased pe
/// with binomial standard error, divergences by plug-in over the sampled
/// (m, z^n, f^n) and flagged as such.
ProtocolReport run_protocol_mc(const JointDist3& j, const Codebook& cb, std::size_t trials,
                               std::uint64_t seed);

/// Single-letter channel from a codeword symbol u to Willie's pair (z, f):
/// p(z, f | u) = P_{XZ}(f (-) u, z). Output labels "z|f", z-major.
Channel zf_channel(const JointDist3& j);

/// What Willie actually sees: the codebook-uniform average of the channel
/// output over all (m, w). JointDist2 coordinates: A = z^n, B = f^n.
JointDist2 induced_output_dist(const Codebook& cb, const Channel& zfChannel);

/// What Willie should see under the innocent-traffic model: the full
/// product-law marginalization of the same channel.
JointDist2 target_output_dist(const FiniteDist& pU, const Channel& zfChannel, std::size_t n);

/// Chain-rule split of D(induced || target) into the f-marginal part and
/// the conditional part; total is computed independently of the parts.
struct StealthDecomposition {
    double dF;        // D(P_F || Q_F)
    double dZgivenF;  // sum_f P_F(f) D(P_{Z|f} || Q_{Z|f})
    double total;     // D(P_{ZF} || Q_{ZF})
};
StealthDecomposition stealth_decomposition(const JointDist2& induced, const JointDist2& target);

/// Joint of (F^n, X^n) for a fixed codebook under uniform (m, w):
/// P(f, x) = rho(f (-) x) pX^n(x) with rho the codeword empirical law.
JointDist2 fx_joint_exact(const Codebook& cb, const FiniteDist& pX);

/// Discrepancy of the published sequence from the one-time-pad ideal when
/// the pad symbol is drawn from pU: largest deviation of P_F from uniform,
/// and of P_{FX} from P_F x P_X, over the whole product space.
struct CryptoLemmaGaps {
    double uniformityGap;   // L_inf(P_F, uniform)
    double independenceGap; // L_inf(P_{FX}, P_F x P_X)
};
CryptoLemmaGaps crypto_lemma_gaps(const FiniteDist& pU, const FiniteDist& pX, std::size_t n);

/// Point estimate with sampling error; exact results carry stdErr 0.
struct Estimate {
    double value;
    double stdErr;
    std::size_t trials;
    bool exact;
};

/// E[log2(P_{Z^n F | U^n} / (L1 Q_{Z^n F}) + 1)] over the product joint of
/// (u^n, z^n, f^n): the random-coding bound on Willie's resolvability gap.
Estimate resolvability_rhs_exact(const FiniteDist& pU, const Channel& zfChannel, std::size_t L1,
                                 std::size_t n);

/// Monte Carlo version of the same expectation.
Estimate resolvability_rhs_estimate(const FiniteDist& pU, const Channel& zfChannel,
                                    std::size_t L1, std::size_t n, std::size_t trials,
                                    std::uint64_t seed);

/// Robustness radius for typicality splits; eps feeds the epsPrime
/// convention and defaults to delta (the linkage is a reported choice, not
/// a derived fact).
struct TypicalityParams {
    double delta;
    double eps;
    explicit TypicalityParams(double delta_);
    TypicalityParams(double delta_, double eps_);
};

/// eps (1 + hU): the rate slack added on top of I(F;UZ) in the d1 bound.
double eps_prime(double eps, double hU);

/// True iff |N(a|seq)/n - P(a)| <= delta P(a) for every symbol a. Any
/// occurrence of a zero-mass symbol disqualifies the sequence.
bool robust_typical(std::span<const std::size_t> seq, const FiniteDist& p, double delta);

/// The exact resolvability expectation partitioned by robust typicality of
/// the (u, z, f) triple sequence: d1 over typical terms, d2 over the rest.
struct ResolvabilitySplit {
    double d1;
    double d2;
};
ResolvabilitySplit d1_d2_split(const FiniteDist& pU, const Channel& zfChannel, std::size_t L1,
                               std::size_t n, const TypicalityParams& params);

/// Single-letter joint of (U, Z, F) under pU and the channel; coordinates
/// in that order.
JointDist3 uzf_joint(const FiniteDist& pU, const Channel& zfChannel);

/// I(F; U, Z) in bits under the single-letter joint.
double mi_f_uz(const FiniteDist& pU, const Channel& zfChannel);

/// Large-deviation bound e^{-delta^2 P(a) n / 3} on one symbol's empirical
/// frequency escaping its robustness band. Requires P(a) > 0.
double chernoff_single_bound(const FiniteDist& p, std::size_t a, double delta, std::size_t n);

/// Union bound 2 |S| e^{-delta^2 mu n / 3} on a length-n sequence being
/// non-typical; mu is the smallest positive mass, |S| the support size.
double nontypical_prob_bound(std::size_t supportSize, double mu, double delta, std::size_t n);

/// log2(2^{-n (R1 - iFUZ - epsPrime)} + 1): what remains of d1 once the
/// confusion rate clears the threshold by epsPrime.
double analytic_d1_bound(double r1, double iFUZ, double epsPrime, std::size_t n);

/// Non-typical contribution cap: 2 |S_ZUF| e^{-delta^2 mu_ZUF n / 3}
/// log2(1 / mu_F + 1). Vacuous whenever the probability factor reaches 1.
double analytic_d2_bound(std::size_t supportSizeZUF, double muZUF, double muF, double delta,
                         std::size_t n);

} // namespace sskg
