// Acceptance gate for the library: every release-blocking behavior gets one
// numbered check that prints a single [PASS]/[FAIL] line with the measured
// values. Run with no arguments for all checks, or pass criterion numbers.
// Exit status is the number of failures.

#include <sskg/bounds.hpp>
#include <sskg/degrade.hpp>
#include <sskg/errors.hpp>
#include <sskg/probcore.hpp>
#include <sskg/protocol.hpp>
#include <sskg/rng.hpp>
#include <sskg/sources.hpp>
#include <sskg/special.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace sskg;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& label) {
        if (!cond) {
            pass = false;
            detail << " FAILED{" << label << "}";
        }
    }
};

double h2(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

std::vector<std::string> index_labels(std::size_t k) {
    std::vector<std::string> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back(std::to_string(i));
    return out;
}

JointDist3 random_joint3(Rng& rng, std::size_t nx, std::size_t ny, std::size_t nz) {
    std::vector<double> p(nx * ny * nz);
    double total = 0.0;
    for (auto& v : p) {
        v = -std::log(1.0 - rng.uniform01());
        total += v;
    }
    for (auto& v : p) v /= total;
    return JointDist3(index_labels(nx), index_labels(ny), index_labels(nz), p);
}

// X = Z exactly, Y an independent fair coin.
JointDist3 xz_copy_fixture() {
    std::vector<double> cells(8, 0.0);
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y) cells[(x * 2 + y) * 2 + x] = 0.25;
    return JointDist3({"0", "1"}, {"0", "1"}, {"0", "1"}, cells);
}

// Ternary chain with fixed hand-picked channels.
JointDist3 ternary_markov_fixture() {
    const std::vector<double> px = {0.5, 0.3, 0.2};
    const double w1[3][3] = {{0.7, 0.2, 0.1}, {0.1, 0.8, 0.1}, {0.2, 0.3, 0.5}};
    const double w2[3][3] = {{0.6, 0.3, 0.1}, {0.2, 0.6, 0.2}, {0.1, 0.2, 0.7}};
    std::vector<double> cells(27);
    for (std::size_t x = 0; x < 3; ++x)
        for (std::size_t y = 0; y < 3; ++y)
            for (std::size_t z = 0; z < 3; ++z)
                cells[(x * 3 + y) * 3 + z] = px[x] * w1[x][y] * w2[y][z];
    return JointDist3(index_labels(3), index_labels(3), index_labels(3), cells);
}

JointDist3 reversed_cascade() {
    const auto j = bsc_cascade(0.1, 0.2);
    std::vector<double> swapped(8);
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y)
            for (std::size_t z = 0; z < 2; ++z)
                swapped[(x * 2 + z) * 2 + y] = j.at(x, y, z);
    return JointDist3({"0", "1"}, {"0", "1"}, {"0", "1"}, swapped);
}

double max_factorization_error(const JointDist3& j, const Channel& w) {
    const auto py_x = channel_from_joint(marginal_xy(j));
    const auto pz_x = channel_from_joint(marginal_xz(j));
    double worst = 0.0;
    for (std::size_t x = 0; x < py_x.in_size(); ++x) {
        double rowErr = 0.0;
        for (std::size_t z = 0; z < pz_x.out_size(); ++z) {
            double composed = 0.0;
            for (std::size_t y = 0; y < py_x.out_size(); ++y)
                composed += py_x.at(x, y) * w.at(y, z);
            rowErr += std::abs(composed - pz_x.at(x, z));
        }
        worst = std::max(worst, rowErr);
    }
    return worst;
}

double ks_statistic(std::vector<double> samples, const NakagamiSpec& spec) {
    std::sort(samples.begin(), samples.end());
    const double n = double(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = nakagami_power_cdf(spec, samples[i]);
        d = std::max(d, std::abs(f - double(i) / n));
        d = std::max(d, std::abs(double(i + 1) / n - f));
    }
    return d;
}

// ---------------------------------------------------------------------------

// 1. On the physically degraded binary cascade both rate bounds collapse to
//    the closed-form entropy difference.
void criterion1(Outcome& o) {
    const auto b = sk_bounds(bsc_cascade(0.1, 0.2));
    const double oracle = h2(0.26) - h2(0.1);
    o.detail << "lower=" << b.lower() << " upper=" << b.upper() << " oracle=" << oracle
             << " tol=1e-9";
    o.require(std::abs(b.lower() - oracle) <= 1e-9, "lower vs oracle");
    o.require(std::abs(b.upper() - oracle) <= 1e-9, "upper vs oracle");
}

// 2. The lower bound never exceeds the upper bound on random triples.
void criterion2(Outcome& o) {
    Rng rng(2026);
    double worstGap = -1e300;
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t nx = 2 + rng.uniform_index(3);
        const std::size_t ny = 2 + rng.uniform_index(3);
        const std::size_t nz = 2 + rng.uniform_index(3);
        const auto b = sk_bounds(random_joint3(rng, nx, ny, nz));
        worstGap = std::max(worstGap, b.lower() - b.upper());
    }
    o.detail << "trials=10000 worst(lower-upper)=" << worstGap << " tol=1e-9";
    o.require(worstGap <= 1e-9, "ordering");
}

// Shared exact-run sweep for criteria 3, 4 and 11.
struct ExactRun {
    std::size_t n;
    Codebook cb;
    ProtocolReport report;
};

const std::vector<ExactRun>& exact_runs() {
    static const std::vector<ExactRun> runs = [] {
        const auto j = bsc_cascade(0.1, 0.2);
        const auto pU = FiniteDist::uniform(2);
        std::vector<ExactRun> out;
        for (std::size_t n : {1u, 2u, 3u}) {
            for (std::uint64_t seed = 1; seed <= 20; ++seed) {
                const CodebookSpec spec(n, 0.5, 0.5, 2, seed);
                auto cb = generate_codebook(spec, pU);
                auto report = run_protocol_exact(j, cb);
                out.push_back({n, std::move(cb), std::move(report)});
            }
        }
        return out;
    }();
    return runs;
}

// 3. The secrecy metric equals key leakage plus stealth loss, and folding the
//    key bias into the reference law adds exactly the uniformity gap.
void criterion3(Outcome& o) {
    double worstSplit = 0.0, worstCombined = 0.0;
    for (const auto& run : exact_runs()) {
        const auto& r = run.report;
        worstSplit = std::max(worstSplit,
                              std::abs(r.nonConfusion + r.nonStealth - r.effSecrecy));
        worstCombined = std::max(worstCombined,
                                 std::abs(r.combinedMetric - (r.effSecrecy + r.uniformityGap)));
    }
    o.detail << "runs=" << exact_runs().size() << " worstSplit=" << worstSplit
             << " worstCombined=" << worstCombined << " tol=1e-12";
    o.require(worstSplit <= 1e-12, "three-way split");
    o.require(worstCombined <= 1e-12, "combined identity");
}

// 4. The adversary divergence decomposes along the chain rule into the
//    published-sequence part plus the conditional part.
void criterion4(Outcome& o) {
    const auto j = bsc_cascade(0.1, 0.2);
    const auto ch = zf_channel(j);
    double worstChain = 0.0, worstTie = 0.0;
    for (const auto& run : exact_runs()) {
        const auto induced = induced_output_dist(run.cb, ch);
        const auto target = target_output_dist(run.cb.p_u(), ch, run.n);
        const auto split = stealth_decomposition(induced, target);
        worstChain = std::max(worstChain, std::abs(split.dF + split.dZgivenF - split.total));
        worstTie = std::max(worstTie, std::abs(split.total - run.report.nonStealth));
    }
    o.detail << "runs=" << exact_runs().size() << " worstChain=" << worstChain
             << " worstReportTie=" << worstTie << " tol=1e-12";
    o.require(worstChain <= 1e-12, "chain decomposition");
    o.require(worstTie <= 1e-12, "report agreement");
}

// 5. The typicality split partitions the exact resolvability expectation,
//    and the non-typical part respects its analytic cap wherever that cap
//    is informative (below the vacuous level 1).
void criterion5(Outcome& o) {
    const auto j = bsc_cascade(0.1, 0.2);
    const auto ch = zf_channel(j);
    const auto pU = FiniteDist::uniform(2);
    const std::size_t L1 = 4;
    const auto triple = uzf_joint(pU, ch);
    double muZUF = 1.0;
    std::size_t support = 0;
    for (double p : triple.probs()) {
        if (p > 0.0) {
            ++support;
            muZUF = std::min(muZUF, p);
        }
    }
    const auto pF = marginal_z(triple);
    double muF = 1.0;
    for (std::size_t f = 0; f < pF.size(); ++f)
        if (pF.p(f) > 0.0) muF = std::min(muF, pF.p(f));

    double worstPartition = 0.0;
    std::size_t informative = 0, violations = 0;
    for (std::size_t n : {2u, 4u}) {
        const auto exact = resolvability_rhs_exact(pU, ch, L1, n);
        for (double delta : {0.1, 0.2, 0.5}) {
            const auto split = d1_d2_split(pU, ch, L1, n, TypicalityParams(delta));
            worstPartition = std::max(worstPartition,
                                      std::abs(split.d1 + split.d2 - exact.value));
            const double probFactor =
                nontypical_prob_bound(support, muZUF, delta, n);
            if (probFactor < 1.0) {
                ++informative;
                if (split.d2 > analytic_d2_bound(support, muZUF, muF, delta, n) + 1e-12) {
                    ++violations;
                }
            }
        }
    }
    o.detail << "combos=6 worstPartition=" << worstPartition << " tol=1e-12"
             << " informativeCaps=" << informative << " capViolations=" << violations;
    o.require(worstPartition <= 1e-12, "partition");
    o.require(violations == 0, "analytic cap");
}

// 6. Mean per-symbol secrecy leakage falls with blocklength once the
//    confusion rate clears the threshold, and does not fall below it.
void criterion6(Outcome& o) {
    const auto j = bsc_cascade(0.1, 0.2);
    const auto pU = FiniteDist::uniform(2);
    const double threshold = confusion_rate_threshold(j, 1.0);
    const double above = threshold + 0.25;
    const double below = std::max(threshold - 0.25, 0.0);
    const std::vector<std::size_t> ns = {2, 4, 6, 8};
    auto meanLeak = [&](double r1, std::size_t n) {
        double acc = 0.0;
        for (std::uint64_t seed = 1; seed <= 32; ++seed) {
            const CodebookSpec spec(n, 0.1, r1, 2, seed);
            const auto cb = generate_codebook(spec, pU);
            acc += run_protocol_exact(j, cb).effSecrecy / double(n);
        }
        return acc / 32.0;
    };
    std::vector<double> aboveMeans, belowMeans;
    for (std::size_t n : ns) {
        aboveMeans.push_back(meanLeak(above, n));
        belowMeans.push_back(meanLeak(below, n));
    }
    o.detail << "threshold=" << threshold << " above:";
    for (double v : aboveMeans) o.detail << ' ' << v;
    o.detail << " below:";
    for (double v : belowMeans) o.detail << ' ' << v;
    o.require(aboveMeans.back() < aboveMeans.front(), "decreasing above threshold");
    o.require(belowMeans.back() >= belowMeans.front() - 1e-9, "not decreasing below");
}

// 7. The equivalent pad channel is degraded exactly for chain-structured
//    sources and measurably not degraded for the copying counterexample.
void criterion7(Outcome& o) {
    const std::vector<JointDist3> markovFixtures = {
        bsc_cascade(0.1, 0.2), bsc_cascade(0.0, 0.0), bsc_cascade(0.3, 0.15),
        ternary_markov_fixture()};
    double worst = 0.0;
    for (const auto& j : markovFixtures) {
        const auto cw = cwtc_build(j, FiniteDist::uniform(j.nx()));
        worst = std::max(worst, conditional_mutual_information(cw, Conditioning::OnY));
    }
    const auto counter = cwtc_build(xz_copy_fixture(), FiniteDist::uniform(2));
    const double leak = conditional_mutual_information(counter, Conditioning::OnY);
    o.detail << "worstMarkovLeak=" << worst << " tol=1e-10 counterexampleLeak=" << leak
             << " floor=0.01";
    o.require(worst <= 1e-10, "markov fixtures");
    o.require(leak > 0.01, "counterexample");
}

// 8. Chain-structured fixtures always produce a verifiable factorization
//    witness; the reversed cascade is certified infeasible against an
//    exhaustive grid over all binary-input witnesses.
void criterion8(Outcome& o) {
    const std::vector<JointDist3> fixtures = {bsc_cascade(0.1, 0.2), bsc_cascade(0.0, 0.0),
                                              bsc_cascade(0.3, 0.15), ternary_markov_fixture()};
    double worstResidual = 0.0, worstWitness = 0.0;
    bool allPhysical = true;
    for (const auto& j : fixtures) {
        const auto v = classify_degradedness(j);
        allPhysical = allPhysical && v.kind == DegradednessVerdict::Kind::Physical &&
                      v.witness.has_value();
        if (!v.witness) continue;
        worstResidual = std::max(worstResidual, v.residual);
        for (std::size_t y = 0; y < v.witness->in_size(); ++y) {
            double row = 0.0;
            for (std::size_t z = 0; z < v.witness->out_size(); ++z) {
                worstWitness = std::max(worstWitness, -v.witness->at(y, z));
                row += v.witness->at(y, z);
            }
            worstWitness = std::max(worstWitness, std::abs(row - 1.0));
        }
        worstWitness = std::max(worstWitness, max_factorization_error(j, *v.witness));
    }

    const auto rev = reversed_cascade();
    const auto verdict = stochastic_degradedness_test(rev, 1e-6);
    // Exhaustive 2x2 witness grid W = [[1-a, a], [b, 1-b]], step 1e-3.
    const auto a = channel_from_joint(marginal_xy(rev));
    const auto b = channel_from_joint(marginal_xz(rev));
    double gridMin = 1e300;
    for (int ia = 0; ia <= 1000; ++ia) {
        for (int ib = 0; ib <= 1000; ++ib) {
            const double wa = ia / 1000.0, wb = ib / 1000.0;
            double res = 0.0;
            for (std::size_t x = 0; x < 2; ++x) {
                const double lhs0 = a.at(x, 0) * (1.0 - wa) + a.at(x, 1) * wb;
                const double lhs1 = a.at(x, 0) * wa + a.at(x, 1) * (1.0 - wb);
                res += std::abs(lhs0 - b.at(x, 0)) + std::abs(lhs1 - b.at(x, 1));
            }
            gridMin = std::min(gridMin, res);
        }
    }
    o.detail << "fixtures=4 worstResidual=" << worstResidual << " worstWitnessDefect="
             << worstWitness << " reversedResidual=" << verdict.residual
             << " gridMin=" << gridMin;
    o.require(allPhysical, "physical kinds");
    o.require(worstResidual <= 1e-8, "residuals");
    o.require(worstWitness <= 1e-8, "witness checks");
    o.require(verdict.kind == DegradednessVerdict::Kind::None, "reversed verdict");
    o.require(gridMin > 1e-6, "grid infeasibility");
    o.require(std::abs(verdict.residual - gridMin) <= 1e-2, "grid vs solver agreement");
}

// 9. The canonical fading parameter pair orders the right way on the shared
//    quantile grid, and the reversed pair reports where domination fails.
void criterion9(Outcome& o) {
    const NakagamiSpec strong(1.0, 3.0);
    const NakagamiSpec weak(1.0, 2.0);
    const auto grid = order_check_grid(strong, weak, 256);
    const bool forward = nakagami_order_check(strong, weak, grid);
    const auto reversed = nakagami_order_report(weak, strong, grid);
    o.detail << "gridPoints=" << grid.size() << " forward=" << (forward ? "true" : "false")
             << " reversedDominated=" << (reversed.dominated ? "true" : "false")
             << " firstViolation="
             << (reversed.firstViolation ? std::to_string(*reversed.firstViolation)
                                         : std::string("none"));
    o.require(grid.size() == 514, "grid size");
    o.require(forward, "forward domination");
    o.require(!reversed.dominated, "reversed rejected");
    o.require(reversed.firstViolation.has_value(), "violation point");
}

// 10. The common-uniform coupling dominates pathwise in every single draw
//     and both sample marginals match their analytic laws.
void criterion10(Outcome& o) {
    const NakagamiSpec strong(1.0, 3.0);
    const NakagamiSpec weak(1.0, 2.0);
    const std::size_t n = 100000;
    const auto cp = construct_coupling(strong, weak, n, 2026);
    std::size_t dominated = 0;
    std::vector<double> xs, zs;
    xs.reserve(n);
    zs.reserve(n);
    for (const auto& [px, pz] : cp.pairs) {
        if (px >= pz) ++dominated;
        xs.push_back(px);
        zs.push_back(pz);
    }
    const double ksX = ks_statistic(xs, strong);
    const double ksZ = ks_statistic(zs, weak);
    o.detail << "pairs=" << n << " dominated=" << dominated << " ksX=" << ksX
             << " ksZ=" << ksZ << " tol=0.01";
    o.require(dominated == n, "pathwise domination");
    o.require(ksX <= 0.01, "x marginal");
    o.require(ksZ <= 0.01, "z marginal");
}

// 11. With a uniform source the published sequence is exactly uniform in
//     every run, and at the codebook-ensemble level it is independent of
//     the source word.
void criterion11(Outcome& o) {
    const auto pX = FiniteDist::uniform(2);
    double worstUniform = 0.0;
    for (const auto& run : exact_runs()) {
        const auto fx = fx_joint_exact(run.cb, pX);
        const auto pf = marginal_a(fx);
        const double flat = 1.0 / double(pf.size());
        for (std::size_t f = 0; f < pf.size(); ++f)
            worstUniform = std::max(worstUniform, std::abs(pf.p(f) - flat));
    }
    double worstEnsemble = 0.0;
    for (std::size_t n : {1u, 2u, 3u}) {
        const auto gaps = crypto_lemma_gaps(FiniteDist::uniform(2), pX, n);
        worstEnsemble = std::max(worstEnsemble,
                                 std::max(gaps.uniformityGap, gaps.independenceGap));
    }
    o.detail << "runs=" << exact_runs().size() << " worstUniformGap=" << worstUniform
             << " worstEnsembleGap=" << worstEnsemble << " tol=1e-12";
    o.require(worstUniform <= 1e-12, "per-run uniformity");
    o.require(worstEnsemble <= 1e-12, "ensemble independence");
}

// 12. The covert budget clamps to exactly zero on the wrong side of the
//     divergence comparison and reproduces the worked arithmetic case.
void criterion12(Outcome& o) {
    const BudgetParams p(10000, 0.1, 0.05);
    const double clamped = covert_key_budget(0.01, 0.5, p);
    const double worked = covert_key_budget(0.1, 0.02, p);
    o.detail << "clamped=" << clamped << " worked=" << worked << " oracle=0.46 tol=1e-12";
    o.require(clamped == 0.0, "exact clamp");
    o.require(std::abs(worked - 0.46) <= 1e-12, "worked case");
}

// 13. Equal constant fades make the two receivers statistically identical,
//     so the degraded-direction rate difference vanishes; the legitimate
//     channel information matches the closed-form Gaussian value.
void criterion13(Outcome& o) {
    const SatelliteSpec spec(1.0, FadeSpec::constant(1.0), FadeSpec::constant(1.0));
    const auto samples = satellite_sample(spec, 1000000, 2026);
    const auto coarse = quantize(samples, gaussian_quantizer(samples, 16));
    const auto b = sk_bounds(coarse);
    const auto fine = quantize(samples, gaussian_quantizer(samples, 64));
    const double ixy = mutual_information(marginal_xy(fine));
    o.detail << "bins16EavesdropperGap=" << b.lowerXY << " tol=0.02"
             << " bins64Ixy=" << ixy << " oracle=0.5 tol=0.02";
    o.require(std::abs(b.lowerXY) <= 0.02, "symmetric rate difference");
    o.require(std::abs(ixy - 0.5) <= 0.02, "legitimate channel information");
}

struct Criterion {
    int id;
    const char* name;
    std::function<void(Outcome&)> fn;
    double maxSeconds; // 0: no runtime requirement
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "degraded cascade bound collapse", criterion1, 1.0},
        {2, "bound ordering on random triples", criterion2, 30.0},
        {3, "secrecy metric identities", criterion3, 60.0},
        {4, "stealth chain decomposition", criterion4, 0.0},
        {5, "resolvability partition and cap", criterion5, 0.0},
        {6, "confusion threshold trend", criterion6, 600.0},
        {7, "pad channel degradedness", criterion7, 0.0},
        {8, "degradedness witnesses and infeasibility", criterion8, 0.0},
        {9, "fading order parameters", criterion9, 1.0},
        {10, "comonotone coupling", criterion10, 0.0},
        {11, "one-time-pad exactness", criterion11, 0.0},
        {12, "covert budget arithmetic", criterion12, 0.0},
        {13, "satellite symmetry", criterion13, 120.0},
    };
    return all;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& c : criteria()) {
        if (!wanted.empty() &&
            std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) {
            continue;
        }
        Outcome outcome;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.fn(outcome);
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail << " exception: " << e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.maxSeconds > 0.0 && seconds > c.maxSeconds) {
            outcome.pass = false;
            outcome.detail << " OVER TIME LIMIT " << c.maxSeconds << "s";
        }
        std::printf("[%s] criterion %2d: %s (%s; %.2fs)\n", outcome.pass ? "PASS" : "FAIL",
                    c.id, c.name, outcome.detail.str().c_str(), seconds);
        if (!outcome.pass) ++failures;
    }
    return failures;
}
