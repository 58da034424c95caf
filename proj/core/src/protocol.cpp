#include "sskg/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "sskg/rng.hpp"

namespace sskg {

namespace {

constexpr double kLog2e = 1.4426950408889634074; // 1 / ln 2

double kl_term(double p, double q) {
    if (p == 0.0) return 0.0;
    if (q == 0.0) return std::numeric_limits<double>::infinity();
    return p * std::log2(p / q);
}

std::size_t ceil_bits(double v) {
    if (v <= 0.0) return 0;
    return static_cast<std::size_t>(std::ceil(v - 1e-9));
}

double pow_count(std::size_t base, std::size_t exp) {
    return std::pow(static_cast<double>(base), static_cast<double>(exp));
}

std::size_t checked_pow(std::size_t base, std::size_t exp, double limit, const char* what) {
    const double d = pow_count(base, exp);
    if (d > limit) {
        std::ostringstream os;
        os << what << ": " << base << "^" << exp << " exceeds the enumeration guard";
        throw guard_error(os.str());
    }
    std::size_t v = 1;
    for (std::size_t i = 0; i < exp; ++i) v *= base;
    return v;
}

// Length-n digit counter in a given base; runs through base^n states.
struct Odometer {
    std::vector<std::size_t> digits;
    std::size_t base;
    explicit Odometer(std::size_t n, std::size_t b) : digits(n, 0), base(b) {}
    bool advance() {
        for (std::size_t i = digits.size(); i-- > 0;) {
            if (++digits[i] < base) return true;
            digits[i] = 0;
        }
        return false;
    }
};

std::vector<std::string> sequence_labels(std::size_t base, std::size_t n, std::size_t count) {
    static const char* hexDigits = "0123456789abcdef";
    std::vector<std::string> labels;
    labels.reserve(count);
    Odometer od(n, base);
    do {
        std::string s;
        if (base <= 16) {
            s.reserve(n);
            for (std::size_t d : od.digits) s.push_back(hexDigits[d]);
        } else {
            for (std::size_t i = 0; i < od.digits.size(); ++i) {
                if (i) s.push_back('.');
                s += std::to_string(od.digits[i]);
            }
        }
        labels.push_back(std::move(s));
    } while (od.advance());
    return labels;
}

std::size_t draw_from_cdf(const std::vector<double>& cdf, Rng& rng) {
    const double u = rng.uniform01();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto idx = static_cast<std::size_t>(it - cdf.begin());
    return idx < cdf.size() ? idx : cdf.size() - 1;
}

std::vector<double> cumulative(const std::vector<double>& p) {
    std::vector<double> cdf(p.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        cdf[i] = acc;
    }
    cdf.back() = std::max(cdf.back(), 1.0); // seal the top against roundoff
    return cdf;
}

// Per-symbol target law q(z, f) = sum_u pU(u) p(z, f | u), stored out-major.
std::vector<double> per_symbol_target(const FiniteDist& pU, const Channel& ch) {
    std::vector<double> q(ch.out_size(), 0.0);
    for (std::size_t u = 0; u < ch.in_size(); ++u) {
        for (std::size_t o = 0; o < ch.out_size(); ++o) q[o] += pU.p(u) * ch.at(u, o);
    }
    return q;
}

void check_zf_shape(const FiniteDist& pU, const Channel& ch) {
    if (pU.size() != ch.in_size()) {
        throw validation_error("zf channel: input alphabet does not match pU");
    }
    if (ch.out_size() % ch.in_size() != 0) {
        throw validation_error("zf channel: output is not a (z, f) pair alphabet");
    }
}

// Walks every (u^n, (z,f)^n) cell of the resolvability expectation and
// hands the visitor the joint weight pieces. The visitor receives the
// digit views, pU^n(u), P(zf-seq | u-seq) and Q(zf-seq).
template <typename Visitor>
void for_each_resolvability_cell(const FiniteDist& pU, const Channel& ch, std::size_t n,
                                 Visitor&& visit) {
    check_zf_shape(pU, ch);
    const std::size_t q = ch.in_size();
    const std::size_t nzq = ch.out_size();
    const double cells = pow_count(q, n) * pow_count(nzq, n);
    if (cells > static_cast<double>(1u << 28)) {
        throw guard_error("resolvability: exact enumeration exceeds 2^28 cells");
    }
    const auto qzf = per_symbol_target(pU, ch);
    Odometer useq(n, q);
    do {
        double pun = 1.0;
        for (std::size_t d : useq.digits) pun *= pU.p(d);
        if (pun == 0.0) continue;
        Odometer oseq(n, nzq);
        do {
            double p = 1.0, qq = 1.0;
            for (std::size_t i = 0; i < n; ++i) {
                p *= ch.at(useq.digits[i], oseq.digits[i]);
                qq *= qzf[oseq.digits[i]];
            }
            visit(useq.digits, oseq.digits, pun, p, qq);
        } while (oseq.advance());
    } while (useq.advance());
}

} // namespace

CodebookSpec::CodebookSpec(std::size_t n_, double rateKey_, double rateConfusion_,
                           std::size_t alphabetSize_, std::uint64_t seed_)
    : n(n_), rateKey(rateKey_), rateConfusion(rateConfusion_), alphabetSize(alphabetSize_),
      seed(seed_) {
    if (n == 0) throw validation_error("CodebookSpec: n must be >= 1");
    if (!(rateKey >= 0.0) || !std::isfinite(rateKey) || !(rateConfusion >= 0.0) ||
        !std::isfinite(rateConfusion)) {
        throw validation_error("CodebookSpec: rates must be finite and nonnegative");
    }
    if (alphabetSize < 2 || alphabetSize > 255) {
        throw validation_error("CodebookSpec: alphabet size must lie in [2, 255]");
    }
    if (ceil_bits(static_cast<double>(n) * rateKey) > 40 ||
        ceil_bits(static_cast<double>(n) * rateConfusion) > 40) {
        throw validation_error("CodebookSpec: requested codebook has over 2^40 words");
    }
}

std::size_t CodebookSpec::num_secure() const {
    return std::size_t{1} << ceil_bits(static_cast<double>(n) * rateKey);
}

std::size_t CodebookSpec::num_confusion() const {
    return std::size_t{1} << ceil_bits(static_cast<double>(n) * rateConfusion);
}

bool CodebookSpec::exact_guard_ok() const {
    const double bits = std::log2(static_cast<double>(num_secure())) +
                        std::log2(static_cast<double>(num_confusion())) +
                        3.0 * static_cast<double>(n) * std::log2(static_cast<double>(alphabetSize));
    return bits <= 30.0 + 1e-9;
}

void require_exact_guard(const CodebookSpec& spec) {
    if (!spec.exact_guard_ok()) {
        throw guard_error("protocol: L * L1 * alphabet^(3n) exceeds the 2^30 exact-mode guard");
    }
}

Codebook::Codebook(CodebookSpec spec, FiniteDist pU, std::vector<std::uint8_t> words)
    : spec_(spec), pU_(std::move(pU)), words_(std::move(words)) {
    if (pU_.size() != spec_.alphabetSize) {
        throw validation_error("Codebook: pU alphabet does not match the spec");
    }
    if (words_.size() != spec_.num_secure() * spec_.num_confusion() * spec_.n) {
        throw validation_error("Codebook: word storage does not match the spec dimensions");
    }
    for (std::uint8_t s : words_) {
        if (s >= spec_.alphabetSize) {
            throw validation_error("Codebook: symbol outside the alphabet");
        }
    }
}

Codebook generate_codebook(const CodebookSpec& spec, const FiniteDist& pU) {
    if (pU.size() != spec.alphabetSize) {
        throw validation_error("generate_codebook: pU alphabet does not match the spec");
    }
    const double total = static_cast<double>(spec.num_secure()) *
                         static_cast<double>(spec.num_confusion()) * static_cast<double>(spec.n);
    if (total > static_cast<double>(1u << 26)) {
        throw guard_error("generate_codebook: book too large to materialize");
    }
    const auto cdf = cumulative(pU.probs());
    std::vector<std::uint8_t> words(spec.num_secure() * spec.num_confusion() * spec.n);
    Rng rng(spec.seed);
    for (auto& s : words) s = static_cast<std::uint8_t>(draw_from_cdf(cdf, rng));
    return Codebook(spec, pU, std::move(words));
}

ProtocolReport run_protocol_exact(const JointDist3& j, const Codebook& cb) {
    const auto& spec = cb.spec();
    if (spec.alphabetSize != j.nx()) {
        throw validation_error("run_protocol_exact: codebook alphabet does not match the source");
    }
    require_exact_guard(spec);
    const std::size_t q = j.nx(), ny = j.ny(), nz = j.nz(), n = spec.n;
    const std::size_t L = spec.num_secure(), L1 = spec.num_confusion();
    const std::size_t QN = checked_pow(q, n, 1u << 20, "run_protocol_exact (x)");
    [[maybe_unused]] const std::size_t YN =
        checked_pow(ny, n, 1u << 20, "run_protocol_exact (y)");
    const std::size_t ZN = checked_pow(nz, n, 1u << 20, "run_protocol_exact (z)");
    if (static_cast<double>(L) * static_cast<double>(ZN) * static_cast<double>(QN) >
        static_cast<double>(1u << 24)) {
        throw guard_error("run_protocol_exact: key-output joint exceeds 2^24 cells");
    }

    const auto jxy = marginal_xy(j);
    const auto jxz = marginal_xz(j);
    const double invBook = 1.0 / (static_cast<double>(L) * static_cast<double>(L1));

    // One pass over (y^n, f^n): likelihood of every (m, w), the ML argmax
    // with lexicographic tie-break, and the exact error mass in one go.
    double pe = 0.0;
    std::vector<double> like(L * L1);
    {
        Odometer yseq(n, ny);
        do {
            Odometer fseq(n, q);
            do {
                double best = -1.0;
                std::size_t bestM = 0;
                for (std::size_t m = 0; m < L; ++m) {
                    for (std::size_t w = 0; w < L1; ++w) {
                        const auto u = cb.word(m, w);
                        double prod = 1.0;
                        for (std::size_t i = 0; i < n; ++i) {
                            const std::size_t x = (fseq.digits[i] + q - u[i]) % q;
                            prod *= jxy.at(x, yseq.digits[i]);
                        }
                        like[m * L1 + w] = prod;
                        if (prod > best) {
                            best = prod;
                            bestM = m;
                        }
                    }
                }
                for (std::size_t m = 0; m < L; ++m) {
                    if (m == bestM) continue;
                    for (std::size_t w = 0; w < L1; ++w) pe += like[m * L1 + w];
                }
            } while (fseq.advance());
        } while (yseq.advance());
        pe *= invBook;
    }

    // Exact key-output joint P_{K Z^n F^n} and the per-symbol product target.
    std::vector<double> pkzf(L * ZN * QN, 0.0);
    std::vector<double> qzf(ZN * QN);
    const auto perTarget = per_symbol_target(cb.p_u(), zf_channel(j));
    {
        Odometer zseq(n, nz);
        std::size_t zi = 0;
        do {
            Odometer fseq(n, q);
            std::size_t fi = 0;
            do {
                const std::size_t cell = zi * QN + fi;
                double qprod = 1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    qprod *= perTarget[zseq.digits[i] * q + fseq.digits[i]];
                }
                qzf[cell] = qprod;
                for (std::size_t m = 0; m < L; ++m) {
                    double acc = 0.0;
                    for (std::size_t w = 0; w < L1; ++w) {
                        const auto u = cb.word(m, w);
                        double prod = 1.0;
                        for (std::size_t i = 0; i < n; ++i) {
                            const std::size_t x = (fseq.digits[i] + q - u[i]) % q;
                            prod *= jxz.at(x, zseq.digits[i]);
                        }
                        acc += prod;
                    }
                    pkzf[m * ZN * QN + cell] += acc * invBook;
                }
                ++fi;
            } while (fseq.advance());
            ++zi;
        } while (zseq.advance());
    }

    std::vector<double> pk(L, 0.0), pzf(ZN * QN, 0.0);
    for (std::size_t m = 0; m < L; ++m) {
        for (std::size_t c = 0; c < ZN * QN; ++c) {
            pk[m] += pkzf[m * ZN * QN + c];
            pzf[c] += pkzf[m * ZN * QN + c];
        }
    }

    ProtocolReport r;
    r.mode = "exact";
    r.pe = std::clamp(pe, 0.0, 1.0);
    const double log2L = std::log2(static_cast<double>(L));
    r.uniformityGap = log2L - entropy_bits(pk);
    double eff = 0.0, conf = 0.0, comb = 0.0, stealth = 0.0;
    for (std::size_t m = 0; m < L; ++m) {
        for (std::size_t c = 0; c < ZN * QN; ++c) {
            const double p = pkzf[m * ZN * QN + c];
            eff += kl_term(p, pk[m] * qzf[c]);
            conf += kl_term(p, pk[m] * pzf[c]);
            comb += kl_term(p, qzf[c] / static_cast<double>(L));
        }
    }
    for (std::size_t c = 0; c < ZN * QN; ++c) stealth += kl_term(pzf[c], qzf[c]);
    r.effSecrecy = std::max(eff, 0.0);
    r.nonConfusion = std::max(conf, 0.0);
    r.combinedMetric = std::max(comb, 0.0);
    r.nonStealth = std::max(stealth, 0.0);
    return r;
}

ProtocolReport run_protocol_mc(const JointDist3& j, const Codebook& cb, std::size_t trials,
                               std::uint64_t seed) {
    const auto& spec = cb.spec();
    if (spec.alphabetSize != j.nx()) {
        throw validation_error("run_protocol_mc: codebook alphabet does not match the source");
    }
    if (trials == 0) throw validation_error("run_protocol_mc: trials must be >= 1");
    const std::size_t q = j.nx(), ny = j.ny(), nz = j.nz(), n = spec.n;
    const std::size_t L = spec.num_secure(), L1 = spec.num_confusion();

    const auto jxy = marginal_xy(j);
    const auto cdf = cumulative(j.probs());
    const auto perTarget = per_symbol_target(cb.p_u(), zf_channel(j));

    const bool indexable = static_cast<double>(n) * std::log2(static_cast<double>(nz)) <= 62.0 &&
                           static_cast<double>(n) * std::log2(static_cast<double>(q)) <= 62.0;
    std::map<std::tuple<std::size_t, std::uint64_t, std::uint64_t>, std::size_t> counts;

    Rng rng(seed);
    std::vector<std::size_t> xs(n), ys(n), zs(n), fs(n);
    std::size_t errors = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t m = rng.uniform_index(L);
        const std::size_t w = rng.uniform_index(L1);
        const auto u = cb.word(m, w);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t cell = draw_from_cdf(cdf, rng);
            xs[i] = cell / (ny * nz);
            ys[i] = (cell / nz) % ny;
            zs[i] = cell % nz;
            fs[i] = (u[i] + xs[i]) % q;
        }
        double best = -1.0;
        std::size_t bestM = 0;
        for (std::size_t mm = 0; mm < L; ++mm) {
            for (std::size_t ww = 0; ww < L1; ++ww) {
                const auto cand = cb.word(mm, ww);
                double prod = 1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    prod *= jxy.at((fs[i] + q - cand[i]) % q, ys[i]);
                }
                if (prod > best) {
                    best = prod;
                    bestM = mm;
                }
            }
        }
        if (bestM != m) ++errors;
        if (indexable) {
            std::uint64_t zi = 0, fi = 0;
            for (std::size_t i = 0; i < n; ++i) {
                zi = zi * nz + zs[i];
                fi = fi * q + fs[i];
            }
            ++counts[{m, zi, fi}];
        }
    }

    ProtocolReport r;
    r.mode = "monte-carlo";
    r.trials = trials;
    r.pluginDivergences = true;
    r.degenerate = trials < 2;
    r.pe = static_cast<double>(errors) / static_cast<double>(trials);
    r.peStdErr = std::sqrt(std::max(r.pe * (1.0 - r.pe), 0.0) / static_cast<double>(trials));

    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (!indexable) {
        r.uniformityGap = r.effSecrecy = r.combinedMetric = r.nonConfusion = r.nonStealth = nan;
        return r;
    }
    // Plug-in divergences over the empirical (m, z^n, f^n) law; the target
    // side Q stays exact (per-symbol product).
    const double invT = 1.0 / static_cast<double>(trials);
    std::vector<double> pk(L, 0.0);
    std::map<std::pair<std::uint64_t, std::uint64_t>, double> pzf;
    for (const auto& [key, cnt] : counts) {
        pk[std::get<0>(key)] += cnt * invT;
        pzf[{std::get<1>(key), std::get<2>(key)}] += cnt * invT;
    }
    const auto qAt = [&](std::uint64_t zi, std::uint64_t fi) {
        double prod = 1.0;
        for (std::size_t i = n; i-- > 0;) {
            prod *= perTarget[(zi % nz) * q + fi % q];
            zi /= nz;
            fi /= q;
        }
        return prod;
    };
    double eff = 0.0, conf = 0.0, comb = 0.0, stealth = 0.0;
    for (const auto& [key, cnt] : counts) {
        const auto& [m, zi, fi] = key;
        const double p = cnt * invT;
        const double qq = qAt(zi, fi);
        eff += kl_term(p, pk[m] * qq);
        conf += kl_term(p, pk[m] * pzf.at({zi, fi}));
        comb += kl_term(p, qq / static_cast<double>(L));
    }
    for (const auto& [zf, p] : pzf) stealth += kl_term(p, qAt(zf.first, zf.second));
    r.uniformityGap = std::log2(static_cast<double>(L)) - entropy_bits(pk);
    r.effSecrecy = std::max(eff, 0.0);
    r.nonConfusion = std::max(conf, 0.0);
    r.combinedMetric = std::max(comb, 0.0);
    r.nonStealth = std::max(stealth, 0.0);
    return r;
}

Channel zf_channel(const JointDist3& j) {
    const std::size_t q = j.nx(), nz = j.nz();
    const auto jxz = marginal_xz(j);
    std::vector<std::string> outLabels;
    outLabels.reserve(nz * q);
    for (const auto& lz : j.labels_z())
        for (const auto& lx : j.labels_x()) outLabels.push_back(lz + "|" + lx);
    std::vector<double> rows(q * nz * q, 0.0);
    for (std::size_t u = 0; u < q; ++u) {
        for (std::size_t z = 0; z < nz; ++z) {
            for (std::size_t f = 0; f < q; ++f) {
                rows[u * nz * q + z * q + f] = jxz.at((f + q - u) % q, z);
            }
        }
    }
    return Channel(j.labels_x(), std::move(outLabels), std::move(rows));
}

JointDist2 induced_output_dist(const Codebook& cb, const Channel& zfChannel) {
    const auto& spec = cb.spec();
    require_exact_guard(spec);
    const std::size_t q = zfChannel.in_size();
    if (q != spec.alphabetSize) {
        throw validation_error("induced_output_dist: channel input does not match the codebook");
    }
    if (zfChannel.out_size() % q != 0) {
        throw validation_error("induced_output_dist: output is not a (z, f) pair alphabet");
    }
    const std::size_t nz = zfChannel.out_size() / q;
    const std::size_t n = spec.n;
    const std::size_t L = spec.num_secure(), L1 = spec.num_confusion();
    const std::size_t ZN = checked_pow(nz, n, 1u << 12, "induced_output_dist (z)");
    const std::size_t QN = checked_pow(q, n, 1u << 12, "induced_output_dist (f)");
    const double invBook = 1.0 / (static_cast<double>(L) * static_cast<double>(L1));

    std::vector<double> probs(ZN * QN, 0.0);
    Odometer zseq(n, nz);
    std::size_t zi = 0;
    do {
        Odometer fseq(n, q);
        std::size_t fi = 0;
        do {
            double acc = 0.0;
            for (std::size_t m = 0; m < L; ++m) {
                for (std::size_t w = 0; w < L1; ++w) {
                    const auto u = cb.word(m, w);
                    double prod = 1.0;
                    for (std::size_t i = 0; i < n; ++i) {
                        prod *= zfChannel.at(u[i], zseq.digits[i] * q + fseq.digits[i]);
                    }
                    acc += prod;
                }
            }
            probs[zi * QN + fi] = acc * invBook;
            ++fi;
        } while (fseq.advance());
        ++zi;
    } while (zseq.advance());

    double total = 0.0;
    for (double v : probs) total += v;
    for (double& v : probs) v /= total;
    return JointDist2(sequence_labels(nz, n, ZN), sequence_labels(q, n, QN), std::move(probs));
}

JointDist2 target_output_dist(const FiniteDist& pU, const Channel& zfChannel, std::size_t n) {
    check_zf_shape(pU, zfChannel);
    const std::size_t q = zfChannel.in_size();
    const std::size_t nz = zfChannel.out_size() / q;
    const std::size_t ZN = checked_pow(nz, n, 1u << 12, "target_output_dist (z)");
    const std::size_t QN = checked_pow(q, n, 1u << 12, "target_output_dist (f)");
    const auto qzf = per_symbol_target(pU, zfChannel);

    std::vector<double> probs(ZN * QN, 0.0);
    Odometer zseq(n, nz);
    std::size_t zi = 0;
    do {
        Odometer fseq(n, q);
        std::size_t fi = 0;
        do {
            double prod = 1.0;
            for (std::size_t i = 0; i < n; ++i) {
                prod *= qzf[zseq.digits[i] * q + fseq.digits[i]];
            }
            probs[zi * QN + fi] = prod;
            ++fi;
        } while (fseq.advance());
        ++zi;
    } while (zseq.advance());

    double total = 0.0;
    for (double v : probs) total += v;
    for (double& v : probs) v /= total;
    return JointDist2(sequence_labels(nz, n, ZN), sequence_labels(q, n, QN), std::move(probs));
}

StealthDecomposition stealth_decomposition(const JointDist2& induced, const JointDist2& target) {
    StealthDecomposition d{0.0, 0.0, 0.0};
    d.total = kl_divergence(induced, target);
    const auto pf = marginal_b(induced);
    const auto qf = marginal_b(target);
    d.dF = kl_divergence(pf, qf);
    for (std::size_t f = 0; f < induced.nb(); ++f) {
        if (pf.p(f) == 0.0) continue;
        double inner = 0.0;
        for (std::size_t z = 0; z < induced.na(); ++z) {
            const double p = induced.at(z, f) / pf.p(f);
            const double qv = qf.p(f) > 0.0 ? target.at(z, f) / qf.p(f) : 0.0;
            inner += kl_term(p, qv);
        }
        d.dZgivenF += pf.p(f) * inner;
    }
    return d;
}

JointDist2 fx_joint_exact(const Codebook& cb, const FiniteDist& pX) {
    const auto& spec = cb.spec();
    const std::size_t q = spec.alphabetSize, n = spec.n;
    if (pX.size() != q) {
        throw validation_error("fx_joint_exact: pX alphabet does not match the codebook");
    }
    const std::size_t QN = checked_pow(q, n, 1u << 10, "fx_joint_exact");
    const std::size_t L = spec.num_secure(), L1 = spec.num_confusion();

    std::vector<double> rho(QN, 0.0);
    const double invBook = 1.0 / (static_cast<double>(L) * static_cast<double>(L1));
    for (std::size_t m = 0; m < L; ++m) {
        for (std::size_t w = 0; w < L1; ++w) {
            const auto word = cb.word(m, w);
            std::size_t idx = 0;
            for (std::size_t i = 0; i < n; ++i) idx = idx * q + word[i];
            rho[idx] += invBook;
        }
    }
    std::vector<double> pxn(QN);
    {
        Odometer xs(n, q);
        std::size_t xi = 0;
        do {
            double prod = 1.0;
            for (std::size_t d : xs.digits) prod *= pX.p(d);
            pxn[xi++] = prod;
        } while (xs.advance());
    }
    std::vector<double> probs(QN * QN, 0.0);
    Odometer fs(n, q);
    std::size_t fi = 0;
    do {
        Odometer xs(n, q);
        std::size_t xi = 0;
        do {
            std::size_t ui = 0;
            for (std::size_t i = 0; i < n; ++i) {
                ui = ui * q + (fs.digits[i] + q - xs.digits[i]) % q;
            }
            probs[fi * QN + xi] = rho[ui] * pxn[xi];
            ++xi;
        } while (xs.advance());
        ++fi;
    } while (fs.advance());

    double total = 0.0;
    for (double v : probs) total += v;
    for (double& v : probs) v /= total;
    return JointDist2(sequence_labels(q, n, QN), sequence_labels(q, n, QN), std::move(probs));
}

CryptoLemmaGaps crypto_lemma_gaps(const FiniteDist& pU, const FiniteDist& pX, std::size_t n) {
    const std::size_t q = pU.size();
    if (pX.size() != q) {
        throw validation_error("crypto_lemma_gaps: pU and pX alphabets must match");
    }
    const std::size_t QN = checked_pow(q, n, 1u << 10, "crypto_lemma_gaps");

    std::vector<double> pun(QN), pxn(QN);
    {
        Odometer od(n, q);
        std::size_t i = 0;
        do {
            double pu = 1.0, px = 1.0;
            for (std::size_t d : od.digits) {
                pu *= pU.p(d);
                px *= pX.p(d);
            }
            pun[i] = pu;
            pxn[i] = px;
            ++i;
        } while (od.advance());
    }
    const auto pad = [&](const std::vector<std::size_t>& f, const std::vector<std::size_t>& x) {
        std::size_t ui = 0;
        for (std::size_t i = 0; i < n; ++i) ui = ui * q + (f[i] + q - x[i]) % q;
        return pun[ui];
    };

    std::vector<double> pfx(QN * QN), pf(QN, 0.0);
    Odometer fs(n, q);
    std::size_t fi = 0;
    do {
        Odometer xs(n, q);
        std::size_t xi = 0;
        do {
            const double p = pad(fs.digits, xs.digits) * pxn[xi];
            pfx[fi * QN + xi] = p;
            pf[fi] += p;
            ++xi;
        } while (xs.advance());
        ++fi;
    } while (fs.advance());

    CryptoLemmaGaps g{0.0, 0.0};
    const double unif = 1.0 / static_cast<double>(QN);
    for (std::size_t f = 0; f < QN; ++f) {
        g.uniformityGap = std::max(g.uniformityGap, std::fabs(pf[f] - unif));
        for (std::size_t x = 0; x < QN; ++x) {
            g.independenceGap =
                std::max(g.independenceGap, std::fabs(pfx[f * QN + x] - pf[f] * pxn[x]));
        }
    }
    return g;
}

Estimate resolvability_rhs_exact(const FiniteDist& pU, const Channel& zfChannel, std::size_t L1,
                                 std::size_t n) {
    if (L1 == 0) throw validation_error("resolvability: L1 must be >= 1");
    double value = 0.0;
    for_each_resolvability_cell(
        pU, zfChannel, n,
        [&](const auto&, const auto&, double pun, double p, double q) {
            if (p == 0.0) return;
            if (q == 0.0) {
                value = std::numeric_limits<double>::infinity();
                return;
            }
            value += pun * p * std::log1p(p / (static_cast<double>(L1) * q)) * kLog2e;
        });
    return Estimate{value, 0.0, 0, true};
}

Estimate resolvability_rhs_estimate(const FiniteDist& pU, const Channel& zfChannel,
                                    std::size_t L1, std::size_t n, std::size_t trials,
                                    std::uint64_t seed) {
    if (L1 == 0) throw validation_error("resolvability: L1 must be >= 1");
    if (trials == 0) throw validation_error("resolvability: trials must be >= 1");
    check_zf_shape(pU, zfChannel);
    const auto qzf = per_symbol_target(pU, zfChannel);
    const auto uCdf = cumulative(pU.probs());
    std::vector<std::vector<double>> rowCdf(zfChannel.in_size());
    for (std::size_t u = 0; u < zfChannel.in_size(); ++u) {
        std::vector<double> row(zfChannel.out_size());
        for (std::size_t o = 0; o < zfChannel.out_size(); ++o) row[o] = zfChannel.at(u, o);
        rowCdf[u] = cumulative(row);
    }
    Rng rng(seed);
    double sum = 0.0, sumSq = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        double p = 1.0, q = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t u = draw_from_cdf(uCdf, rng);
            const std::size_t o = draw_from_cdf(rowCdf[u], rng);
            p *= zfChannel.at(u, o);
            q *= qzf[o];
        }
        const double v = std::log1p(p / (static_cast<double>(L1) * q)) * kLog2e;
        sum += v;
        sumSq += v * v;
    }
    const double mean = sum / static_cast<double>(trials);
    double se = 0.0;
    if (trials > 1) {
        const double var =
            std::max(sumSq / static_cast<double>(trials) - mean * mean, 0.0) *
            static_cast<double>(trials) / static_cast<double>(trials - 1);
        se = std::sqrt(var / static_cast<double>(trials));
    }
    return Estimate{mean, se, trials, false};
}

TypicalityParams::TypicalityParams(double delta_) : TypicalityParams(delta_, delta_) {}

TypicalityParams::TypicalityParams(double delta_, double eps_) : delta(delta_), eps(eps_) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw validation_error("TypicalityParams: delta must be positive");
    }
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw validation_error("TypicalityParams: eps must be positive");
    }
}

double eps_prime(double eps, double hU) {
    if (!(eps > 0.0)) throw validation_error("eps_prime: eps must be positive");
    if (!(hU >= 0.0)) throw validation_error("eps_prime: entropy must be nonnegative");
    return eps * (1.0 + hU);
}

bool robust_typical(std::span<const std::size_t> seq, const FiniteDist& p, double delta) {
    if (!(delta > 0.0)) throw validation_error("robust_typical: delta must be positive");
    std::vector<std::size_t> counts(p.size(), 0);
    for (std::size_t s : seq) {
        if (s >= p.size()) throw validation_error("robust_typical: symbol outside the alphabet");
        ++counts[s];
    }
    const double n = static_cast<double>(seq.size());
    for (std::size_t a = 0; a < p.size(); ++a) {
        if (std::fabs(static_cast<double>(counts[a]) / n - p.p(a)) > delta * p.p(a)) {
            return false;
        }
    }
    return true;
}

ResolvabilitySplit d1_d2_split(const FiniteDist& pU, const Channel& zfChannel, std::size_t L1,
                               std::size_t n, const TypicalityParams& params) {
    if (L1 == 0) throw validation_error("d1_d2_split: L1 must be >= 1");
    check_zf_shape(pU, zfChannel);
    // Flat triple law over (u, z, f) cells for typicality membership.
    std::vector<double> puzf(pU.size() * zfChannel.out_size());
    for (std::size_t u = 0; u < pU.size(); ++u) {
        for (std::size_t o = 0; o < zfChannel.out_size(); ++o) {
            puzf[u * zfChannel.out_size() + o] = pU.p(u) * zfChannel.at(u, o);
        }
    }
    const double invN = 1.0 / static_cast<double>(n);
    std::vector<double> freq(puzf.size());
    ResolvabilitySplit split{0.0, 0.0};
    for_each_resolvability_cell(
        pU, zfChannel, n,
        [&](const std::vector<std::size_t>& useq, const std::vector<std::size_t>& oseq,
            double pun, double p, double qq) {
            if (p == 0.0) return;
            double term;
            if (qq == 0.0) {
                term = std::numeric_limits<double>::infinity();
            } else {
                term = pun * p * std::log1p(p / (static_cast<double>(L1) * qq)) * kLog2e;
            }
            std::fill(freq.begin(), freq.end(), 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                freq[useq[i] * zfChannel.out_size() + oseq[i]] += invN;
            }
            bool typical = true;
            for (std::size_t c = 0; c < puzf.size(); ++c) {
                if (std::fabs(freq[c] - puzf[c]) > params.delta * puzf[c]) {
                    typical = false;
                    break;
                }
            }
            (typical ? split.d1 : split.d2) += term;
        });
    return split;
}

JointDist3 uzf_joint(const FiniteDist& pU, const Channel& zfChannel) {
    check_zf_shape(pU, zfChannel);
    const std::size_t q = zfChannel.in_size();
    const std::size_t nz = zfChannel.out_size() / q;
    std::vector<std::string> zLabels(nz);
    for (std::size_t z = 0; z < nz; ++z) zLabels[z] = std::to_string(z);
    std::vector<double> probs(pU.size() * nz * q);
    for (std::size_t u = 0; u < pU.size(); ++u) {
        for (std::size_t z = 0; z < nz; ++z) {
            for (std::size_t f = 0; f < q; ++f) {
                probs[(u * nz + z) * q + f] = pU.p(u) * zfChannel.at(u, z * q + f);
            }
        }
    }
    return JointDist3(pU.labels(), std::move(zLabels), zfChannel.in_labels(), std::move(probs));
}

double mi_f_uz(const FiniteDist& pU, const Channel& zfChannel) {
    const auto j = uzf_joint(pU, zfChannel);
    return entropy(marginal_z(j)) + entropy_bits(marginal_xy(j).probs()) -
           entropy_bits(j.probs());
}

double chernoff_single_bound(const FiniteDist& p, std::size_t a, double delta, std::size_t n) {
    if (a >= p.size()) throw validation_error("chernoff_single_bound: index out of range");
    if (!(p.p(a) > 0.0)) throw validation_error("chernoff_single_bound: requires P(a) > 0");
    if (!(delta >= 0.0)) throw validation_error("chernoff_single_bound: delta must be >= 0");
    return std::exp(-delta * delta * p.p(a) * static_cast<double>(n) / 3.0);
}

double nontypical_prob_bound(std::size_t supportSize, double mu, double delta, std::size_t n) {
    if (supportSize == 0) throw validation_error("nontypical_prob_bound: empty support");
    if (!(mu > 0.0)) throw validation_error("nontypical_prob_bound: mu must be positive");
    if (!(delta >= 0.0)) throw validation_error("nontypical_prob_bound: delta must be >= 0");
    return 2.0 * static_cast<double>(supportSize) *
           std::exp(-delta * delta * mu * static_cast<double>(n) / 3.0);
}

double analytic_d1_bound(double r1, double iFUZ, double epsPrime, std::size_t n) {
    const double exponent = -static_cast<double>(n) * (r1 - iFUZ - epsPrime);
    return std::log1p(std::exp2(exponent)) * kLog2e;
}

double analytic_d2_bound(std::size_t supportSizeZUF, double muZUF, double muF, double delta,
                         std::size_t n) {
    if (!(muF > 0.0)) throw validation_error("analytic_d2_bound: muF must be positive");
    return nontypical_prob_bound(supportSizeZUF, muZUF, delta, n) *
           std::log1p(1.0 / muF) * kLog2e;
}

} // namespace sskg
