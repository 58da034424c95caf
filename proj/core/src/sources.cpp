#include "sskg/sources.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace sskg {

FadeSpec::FadeSpec(double amplitude, std::optional<NakagamiSpec> nak)
    : amplitude_(amplitude), nak_(std::move(nak)) {}

FadeSpec FadeSpec::constant(double amplitude) {
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
        throw validation_error("FadeSpec: constant amplitude must be nonnegative and finite");
    }
    return FadeSpec(amplitude, std::nullopt);
}

FadeSpec FadeSpec::nakagami(double m, double w) { return FadeSpec(0.0, NakagamiSpec(m, w)); }

double FadeSpec::constant_amplitude() const {
    if (nak_) throw validation_error("FadeSpec: not a constant fade");
    return amplitude_;
}

const NakagamiSpec& FadeSpec::nakagami_spec() const {
    if (!nak_) throw validation_error("FadeSpec: not a fading spec");
    return *nak_;
}

double FadeSpec::sample_gain(Rng& rng) const {
    if (!nak_) return amplitude_;
    return std::sqrt(sample_power(*nak_, rng));
}

SatelliteSpec::SatelliteSpec(double sourceVariance_, FadeSpec fadeX_, FadeSpec fadeZ_)
    : sourceVariance(sourceVariance_), fadeX(fadeX_), fadeZ(fadeZ_) {
    if (!(sourceVariance > 0.0) || !std::isfinite(sourceVariance)) {
        throw validation_error("SatelliteSpec: source variance must be positive and finite");
    }
}

JointDist3 bsc_cascade(double p, double q) {
    if (!(p >= 0.0) || !(p <= 1.0) || !(q >= 0.0) || !(q <= 1.0)) {
        throw validation_error("bsc_cascade: crossover probabilities must lie in [0, 1]");
    }
    std::vector<double> probs(8, 0.0);
    for (std::size_t x = 0; x < 2; ++x) {
        for (std::size_t y = 0; y < 2; ++y) {
            for (std::size_t z = 0; z < 2; ++z) {
                const double py = (y == x) ? 1.0 - p : p;
                const double pz = (z == y) ? 1.0 - q : q;
                probs[(x * 2 + y) * 2 + z] = 0.5 * py * pz;
            }
        }
    }
    return JointDist3({"0", "1"}, {"0", "1"}, {"0", "1"}, std::move(probs));
}

SampleSet satellite_sample(const SatelliteSpec& spec, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw validation_error("satellite_sample: n must be >= 1");
    SampleSet s;
    s.xs.resize(n);
    s.ys.resize(n);
    s.zs.resize(n);
    const double sigmaS = std::sqrt(spec.sourceVariance);
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const double src = sigmaS * rng.normal();
        const double ax = spec.fadeX.sample_gain(rng);
        const double az = spec.fadeZ.sample_gain(rng);
        const double x = ax * src;
        s.xs[i] = x;
        s.ys[i] = x + rng.normal();
        s.zs[i] = az * src + rng.normal();
    }
    return s;
}

QuantizerSpec::QuantizerSpec(std::vector<double> edgesX, std::vector<double> edgesY,
                             std::vector<double> edgesZ)
    : edges_{std::move(edgesX), std::move(edgesY), std::move(edgesZ)} {
    for (const auto& e : edges_) {
        if (e.empty()) {
            throw validation_error("QuantizerSpec: each coordinate needs at least 2 bins");
        }
        for (std::size_t i = 1; i < e.size(); ++i) {
            if (!(e[i] > e[i - 1])) {
                throw validation_error("QuantizerSpec: edges must be strictly increasing");
            }
        }
    }
}

std::size_t QuantizerSpec::bin_of(std::size_t axis, double v) const {
    const auto& e = edges_[axis];
    return static_cast<std::size_t>(std::upper_bound(e.begin(), e.end(), v) - e.begin());
}

QuantizerSpec gaussian_quantizer(const SampleSet& samples, std::size_t bins) {
    if (bins < 2) throw validation_error("gaussian_quantizer: needs at least 2 bins");
    if (samples.size() == 0) throw validation_error("gaussian_quantizer: empty sample set");
    const auto fitEdges = [bins](const std::vector<double>& v) {
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= static_cast<double>(v.size());
        double var = 0.0;
        for (double x : v) var += (x - mean) * (x - mean);
        var /= static_cast<double>(v.size());
        const double sd = std::max(std::sqrt(var), 1e-9);
        std::vector<double> edges(bins - 1);
        for (std::size_t k = 1; k < bins; ++k) {
            edges[k - 1] =
                mean + sd * normal_quantile(static_cast<double>(k) / static_cast<double>(bins));
        }
        return edges;
    };
    return QuantizerSpec(fitEdges(samples.xs), fitEdges(samples.ys), fitEdges(samples.zs));
}

JointDist3 quantize(const SampleSet& samples, const QuantizerSpec& q) {
    if (samples.size() == 0) throw validation_error("quantize: empty sample set");
    if (samples.ys.size() != samples.size() || samples.zs.size() != samples.size()) {
        throw validation_error("quantize: coordinate vectors differ in length");
    }
    const std::size_t bx = q.bins(0), by = q.bins(1), bz = q.bins(2);
    std::vector<double> probs(bx * by * bz, 0.0);
    const double invN = 1.0 / static_cast<double>(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const std::size_t ix = q.bin_of(0, samples.xs[i]);
        const std::size_t iy = q.bin_of(1, samples.ys[i]);
        const std::size_t iz = q.bin_of(2, samples.zs[i]);
        probs[(ix * by + iy) * bz + iz] += invN;
    }
    // Compensated total: the grid can hold 2^18 cells and the constructor
    // checks the mass to 1e-12.
    double total = 0.0;
    double comp = 0.0;
    for (double v : probs) {
        const double t = total + v;
        comp += total >= v ? (total - t) + v : (v - t) + total;
        total = t;
    }
    total += comp;
    for (double& v : probs) v /= total;
    const auto indexLabels = [](std::size_t k) {
        std::vector<std::string> l(k);
        for (std::size_t i = 0; i < k; ++i) l[i] = std::to_string(i);
        return l;
    };
    return JointDist3(indexLabels(bx), indexLabels(by), indexLabels(bz), std::move(probs));
}

FiniteDist empirical_dist(std::span<const std::string> samples) {
    if (samples.empty()) throw validation_error("empirical_dist: empty sample list");
    std::map<std::string, std::size_t> counts;
    for (const auto& s : samples) ++counts[s];
    std::vector<std::string> labels;
    std::vector<double> probs;
    labels.reserve(counts.size());
    probs.reserve(counts.size());
    const double invN = 1.0 / static_cast<double>(samples.size());
    for (const auto& [label, cnt] : counts) {
        labels.push_back(label);
        probs.push_back(static_cast<double>(cnt) * invN);
    }
    return FiniteDist(std::move(labels), std::move(probs));
}

} // namespace sskg
