#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sskg/probcore.hpp"
#include "sskg/special.hpp"

namespace sskg {

/// Channel gain model for one receiver: either a fixed amplitude or a
/// Nakagami-m amplitude redrawn independently every symbol (fast fading).
class FadeSpec {
public:
    static FadeSpec constant(double amplitude);
    static FadeSpec nakagami(double m, double w);

    bool is_constant() const { return !nak_.has_value(); }
    double constant_amplitude() const;
    const NakagamiSpec& nakagami_spec() const;

    /// Amplitude draw; constant fades consume no randomness.
    double sample_gain(Rng& rng) const;

private:
    FadeSpec(double amplitude, std::optional<NakagamiSpec> nak);
    double amplitude_;
    std::optional<NakagamiSpec> nak_;
};

/// Common-source observation model: S ~ N(0, sourceVariance) observed as
/// X = A_X S, Y = X + N_Y, Z = A_Z S + N_Z with unit-variance noises.
struct SatelliteSpec {
    double sourceVariance;
    FadeSpec fadeX;
    FadeSpec fadeZ;
    SatelliteSpec(double sourceVariance_, FadeSpec fadeX_, FadeSpec fadeZ_);
};

/// Aligned real-valued observations of the three terminals.
struct SampleSet {
    std::vector<double> xs, ys, zs;
    std::size_t size() const { return xs.size(); }
};

/// Canonical physically degraded discrete fixture: X uniform binary,
/// Y = X through a crossover-p channel, Z = Y through crossover-q.
/// Cells are exact products of the crossover rationals.
JointDist3 bsc_cascade(double p, double q);

/// i.i.d. draws from the satellite model; per symbol the draw order is
/// source, X fade, Z fade, Bob noise, Willie noise. Deterministic in seed.
SampleSet satellite_sample(const SatelliteSpec& spec, std::size_t n, std::uint64_t seed);

/// Per-coordinate scalar quantizer given by interior cut points; a value
/// lands in the number of cut points at or below it, so out-of-range
/// samples clamp to the end bins instead of erroring.
class QuantizerSpec {
public:
    QuantizerSpec(std::vector<double> edgesX, std::vector<double> edgesY,
                  std::vector<double> edgesZ);
    std::size_t bins(std::size_t axis) const { return edges_[axis].size() + 1; }
    const std::vector<double>& edges(std::size_t axis) const { return edges_[axis]; }
    std::size_t bin_of(std::size_t axis, double v) const;

private:
    std::array<std::vector<double>, 3> edges_;
};

/// Equiprobable-under-Gaussian quantizer: per coordinate, interior edges at
/// the fitted-normal quantiles k/bins, k = 1..bins-1. Equalizes occupancy
/// for plug-in mutual information.
QuantizerSpec gaussian_quantizer(const SampleSet& samples, std::size_t bins);

/// Empirical joint histogram over bin index triples, normalized to mass 1.
/// Labels are the bin indices per coordinate.
JointDist3 quantize(const SampleSet& samples, const QuantizerSpec& q);

/// Relative frequencies of the observed labels, alphabet sorted.
FiniteDist empirical_dist(std::span<const std::string> samples);

} // namespace sskg
