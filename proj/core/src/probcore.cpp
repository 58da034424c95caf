#include "sskg/probcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_set>

namespace sskg {

namespace {

constexpr double kMassTol = 1e-12;

void check_labels(const std::vector<std::string>& labels, const char* what) {
    if (labels.empty()) {
        throw validation_error(std::string(what) + ": empty alphabet");
    }
    std::unordered_set<std::string> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second) {
            throw validation_error(std::string(what) + ": duplicate label '" + l + "'");
        }
    }
}

void check_mass(const std::vector<double>& probs, std::size_t expectedSize, const char* what) {
    if (probs.size() != expectedSize) {
        std::ostringstream os;
        os << what << ": got " << probs.size() << " masses, expected " << expectedSize;
        throw validation_error(os.str());
    }
    // Neumaier-compensated sum: plain accumulation over ~2^18 cells (large
    // quantizer grids) drifts past kMassTol on its own.
    double total = 0.0;
    double comp = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            std::ostringstream os;
            os << what << ": mass " << p << " is not a finite nonnegative number";
            throw validation_error(os.str());
        }
        const double t = total + p;
        comp += std::fabs(total) >= std::fabs(p) ? (total - t) + p : (p - t) + total;
        total = t;
    }
    total += comp;
    if (std::fabs(total - 1.0) > kMassTol) {
        std::ostringstream os;
        os.precision(17);
        os << what << ": masses sum to " << total << ", expected 1 within " << kMassTol;
        throw validation_error(os.str());
    }
}

double xlog2x_ratio(double p, double q) {
    // p * log2(p / q) with the 0 log 0 = 0 convention.
    if (p == 0.0) return 0.0;
    if (q == 0.0) return std::numeric_limits<double>::infinity();
    return p * std::log2(p / q);
}

void check_same_labels(const std::vector<std::string>& a, const std::vector<std::string>& b,
                       const char* what) {
    if (a != b) {
        throw validation_error(std::string(what) + ": alphabets disagree");
    }
}

} // namespace

FiniteDist::FiniteDist(std::vector<std::string> labels, std::vector<double> probs)
    : labels_(std::move(labels)), probs_(std::move(probs)) {
    check_labels(labels_, "FiniteDist");
    check_mass(probs_, labels_.size(), "FiniteDist");
}

FiniteDist FiniteDist::uniform(std::size_t k) {
    if (k == 0) throw validation_error("FiniteDist::uniform: empty alphabet");
    std::vector<std::string> labels(k);
    for (std::size_t i = 0; i < k; ++i) labels[i] = std::to_string(i);
    return FiniteDist(std::move(labels), std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

std::size_t FiniteDist::index_of(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw validation_error("FiniteDist: unknown label '" + label + "'");
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

JointDist2::JointDist2(std::vector<std::string> labelsA, std::vector<std::string> labelsB,
                       std::vector<double> probs)
    : labelsA_(std::move(labelsA)), labelsB_(std::move(labelsB)), probs_(std::move(probs)) {
    check_labels(labelsA_, "JointDist2 (A)");
    check_labels(labelsB_, "JointDist2 (B)");
    check_mass(probs_, labelsA_.size() * labelsB_.size(), "JointDist2");
}

JointDist3::JointDist3(std::vector<std::string> labelsX, std::vector<std::string> labelsY,
                       std::vector<std::string> labelsZ, std::vector<double> probs)
    : labelsX_(std::move(labelsX)), labelsY_(std::move(labelsY)), labelsZ_(std::move(labelsZ)),
      probs_(std::move(probs)) {
    check_labels(labelsX_, "JointDist3 (X)");
    check_labels(labelsY_, "JointDist3 (Y)");
    check_labels(labelsZ_, "JointDist3 (Z)");
    check_mass(probs_, labelsX_.size() * labelsY_.size() * labelsZ_.size(), "JointDist3");
}

Channel::Channel(std::vector<std::string> inLabels, std::vector<std::string> outLabels,
                 std::vector<double> rows)
    : inLabels_(std::move(inLabels)), outLabels_(std::move(outLabels)), rows_(std::move(rows)) {
    check_labels(inLabels_, "Channel (in)");
    check_labels(outLabels_, "Channel (out)");
    if (rows_.size() != inLabels_.size() * outLabels_.size()) {
        throw validation_error("Channel: row storage does not match alphabet sizes");
    }
    for (std::size_t i = 0; i < inLabels_.size(); ++i) {
        double rowSum = 0.0;
        for (std::size_t o = 0; o < outLabels_.size(); ++o) {
            const double v = at(i, o);
            if (!(v >= 0.0) || !std::isfinite(v)) {
                throw validation_error("Channel: negative or non-finite entry in row '" +
                                       inLabels_[i] + "'");
            }
            rowSum += v;
        }
        if (std::fabs(rowSum - 1.0) > kMassTol) {
            std::ostringstream os;
            os.precision(17);
            os << "Channel: row '" << inLabels_[i] << "' sums to " << rowSum;
            throw validation_error(os.str());
        }
    }
}

double entropy_bits(std::span<const double> weights) {
    double h = 0.0;
    for (double w : weights) {
        if (w > 0.0) h -= w * std::log2(w);
    }
    return h;
}

double entropy(const FiniteDist& p) { return entropy_bits(p.probs()); }

double mutual_information(const JointDist2& j) {
    const auto pa = marginal_a(j);
    const auto pb = marginal_b(j);
    return entropy(pa) + entropy(pb) - entropy_bits(j.probs());
}

double conditional_mutual_information(const JointDist3& j, Conditioning given) {
    // I(A;B|C) = H(AC) + H(BC) - H(ABC) - H(C) for the two free coordinates.
    const double hxyz = entropy_bits(j.probs());
    switch (given) {
    case Conditioning::OnZ:
        return entropy_bits(marginal_xz(j).probs()) + entropy_bits(marginal_yz(j).probs()) -
               hxyz - entropy(marginal_z(j));
    case Conditioning::OnY:
        return entropy_bits(marginal_xy(j).probs()) + entropy_bits(marginal_yz(j).probs()) -
               hxyz - entropy(marginal_y(j));
    case Conditioning::OnX:
        return entropy_bits(marginal_xy(j).probs()) + entropy_bits(marginal_xz(j).probs()) -
               hxyz - entropy(marginal_x(j));
    }
    throw validation_error("conditional_mutual_information: bad conditioning");
}

double kl_divergence(const FiniteDist& p, const FiniteDist& q) {
    check_same_labels(p.labels(), q.labels(), "kl_divergence");
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double term = xlog2x_ratio(p.p(i), q.p(i));
        if (std::isinf(term)) return term;
        d += term;
    }
    return std::max(d, 0.0);
}

double kl_divergence(const JointDist2& p, const JointDist2& q) {
    check_same_labels(p.labels_a(), q.labels_a(), "kl_divergence (A)");
    check_same_labels(p.labels_b(), q.labels_b(), "kl_divergence (B)");
    double d = 0.0;
    for (std::size_t i = 0; i < p.probs().size(); ++i) {
        const double term = xlog2x_ratio(p.probs()[i], q.probs()[i]);
        if (std::isinf(term)) return term;
        d += term;
    }
    return std::max(d, 0.0);
}

double conditional_kl(const Channel& p, const FiniteDist& q, const FiniteDist& w) {
    check_same_labels(p.in_labels(), w.labels(), "conditional_kl (inputs)");
    check_same_labels(p.out_labels(), q.labels(), "conditional_kl (outputs)");
    double d = 0.0;
    for (std::size_t i = 0; i < p.in_size(); ++i) {
        if (w.p(i) == 0.0) continue;
        double di = 0.0;
        for (std::size_t o = 0; o < p.out_size(); ++o) {
            const double term = xlog2x_ratio(p.at(i, o), q.p(o));
            if (std::isinf(term)) return term;
            di += term;
        }
        d += w.p(i) * di;
    }
    return std::max(d, 0.0);
}

FiniteDist marginal_x(const JointDist3& j) {
    std::vector<double> m(j.nx(), 0.0);
    for (std::size_t x = 0; x < j.nx(); ++x)
        for (std::size_t y = 0; y < j.ny(); ++y)
            for (std::size_t z = 0; z < j.nz(); ++z) m[x] += j.at(x, y, z);
    return FiniteDist(j.labels_x(), std::move(m));
}

FiniteDist marginal_y(const JointDist3& j) {
    std::vector<double> m(j.ny(), 0.0);
    for (std::size_t x = 0; x < j.nx(); ++x)
        for (std::size_t y = 0; y < j.ny(); ++y)
            for (std::size_t z = 0; z < j.nz(); ++z) m[y] += j.at(x, y, z);
    return FiniteDist(j.labels_y(), std::move(m));
}

FiniteDist marginal_z(const JointDist3& j) {
    std::vector<double> m(j.nz(), 0.0);
    for (std::size_t x = 0; x < j.nx(); ++x)
        for (std::size_t y = 0; y < j.ny(); ++y)
            for (std::size_t z = 0; z < j.nz(); ++z) m[z] += j.at(x, y, z);
    return FiniteDist(j.labels_z(), std::move(m));
}

JointDist2 marginal_xy(const JointDist3& j) {
    std::vector<double> m(j.nx() * j.ny(), 0.0);
    for (std::size_t x = 0; x < j.nx(); ++x)
        for (std::size_t y = 0; y < j.ny(); ++y)
            for (std::size_t z = 0; z < j.nz(); ++z) m[x * j.ny() + y] += j.at(x, y, z);
    return JointDist2(j.labels_x(), j.labels_y(), std::move(m));
}

JointDist2 marginal_xz(const JointDist3& j) {
    std::vector<double> m(j.nx() * j.nz(), 0.0);
    for (std::size_t x = 0; x < j.nx(); ++x)
        for (std::size_t y = 0; y < j.ny(); ++y)
            for (std::size_t z = 0; z < j.nz(); ++z) m[x * j.nz() + z] += j.at(x, y, z);
    return JointDist2(j.labels_x(), j.labels_z(), std::move(m));
}

JointDist2 marginal_yz(const JointDist3& j) {
    std::vector<double> m(j.ny() * j.nz(), 0.0);
    for (std::size_t x = 0; x < j.nx(); ++x)
        for (std::size_t y = 0; y < j.ny(); ++y)
            for (std::size_t z = 0; z < j.nz(); ++z) m[y * j.nz() + z] += j.at(x, y, z);
    return JointDist2(j.labels_y(), j.labels_z(), std::move(m));
}

FiniteDist marginal_a(const JointDist2& j) {
    std::vector<double> m(j.na(), 0.0);
    for (std::size_t a = 0; a < j.na(); ++a)
        for (std::size_t b = 0; b < j.nb(); ++b) m[a] += j.at(a, b);
    return FiniteDist(j.labels_a(), std::move(m));
}

FiniteDist marginal_b(const JointDist2& j) {
    std::vector<double> m(j.nb(), 0.0);
    for (std::size_t a = 0; a < j.na(); ++a)
        for (std::size_t b = 0; b < j.nb(); ++b) m[b] += j.at(a, b);
    return FiniteDist(j.labels_b(), std::move(m));
}

Channel channel_from_joint(const JointDist2& j) {
    const auto pa = marginal_a(j);
    std::vector<double> rows(j.na() * j.nb(), 0.0);
    for (std::size_t a = 0; a < j.na(); ++a) {
        if (pa.p(a) <= 0.0) {
            throw validation_error("channel_from_joint: input '" + j.labels_a()[a] +
                                   "' has zero mass");
        }
        for (std::size_t b = 0; b < j.nb(); ++b) rows[a * j.nb() + b] = j.at(a, b) / pa.p(a);
    }
    return Channel(j.labels_a(), j.labels_b(), std::move(rows));
}

namespace {

JointDist2 condition_impl(const JointDist3& j, std::size_t fixedAxis, std::size_t fixedIndex) {
    const std::size_t sizes[3] = {j.nx(), j.ny(), j.nz()};
    if (fixedIndex >= sizes[fixedAxis]) {
        throw validation_error("condition: index out of range");
    }
    const std::size_t axisA = fixedAxis == 0 ? 1 : 0;
    const std::size_t axisB = fixedAxis == 2 ? 1 : 2;
    std::vector<double> m(sizes[axisA] * sizes[axisB], 0.0);
    double mass = 0.0;
    for (std::size_t x = 0; x < j.nx(); ++x) {
        for (std::size_t y = 0; y < j.ny(); ++y) {
            for (std::size_t z = 0; z < j.nz(); ++z) {
                const std::size_t idx[3] = {x, y, z};
                if (idx[fixedAxis] != fixedIndex) continue;
                const double v = j.at(x, y, z);
                m[idx[axisA] * sizes[axisB] + idx[axisB]] += v;
                mass += v;
            }
        }
    }
    if (mass <= 0.0) {
        throw validation_error("condition: conditioning event has zero mass");
    }
    for (double& v : m) v /= mass;
    const std::vector<std::string>* allLabels[3] = {&j.labels_x(), &j.labels_y(), &j.labels_z()};
    return JointDist2(*allLabels[axisA], *allLabels[axisB], std::move(m));
}

} // namespace

JointDist2 condition_on_x(const JointDist3& j, std::size_t ix) { return condition_impl(j, 0, ix); }
JointDist2 condition_on_y(const JointDist3& j, std::size_t iy) { return condition_impl(j, 1, iy); }
JointDist2 condition_on_z(const JointDist3& j, std::size_t iz) { return condition_impl(j, 2, iz); }

JointDist2 flatten_yz(const JointDist3& j) {
    std::vector<std::string> pairLabels;
    pairLabels.reserve(j.ny() * j.nz());
    for (const auto& ly : j.labels_y())
        for (const auto& lz : j.labels_z()) pairLabels.push_back(ly + "|" + lz);
    return JointDist2(j.labels_x(), std::move(pairLabels), j.probs());
}

FiniteDist iid_extend(const FiniteDist& p, std::size_t n) {
    if (n == 0) throw validation_error("iid_extend: n must be positive");
    const double cells = std::pow(static_cast<double>(p.size()), static_cast<double>(n));
    if (cells > static_cast<double>(1u << 24)) {
        throw guard_error("iid_extend: requested product law exceeds 2^24 cells");
    }
    std::vector<std::string> labels{""};
    std::vector<double> probs{1.0};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::string> nl;
        std::vector<double> np;
        nl.reserve(labels.size() * p.size());
        np.reserve(labels.size() * p.size());
        for (std::size_t s = 0; s < labels.size(); ++s) {
            for (std::size_t a = 0; a < p.size(); ++a) {
                nl.push_back(labels[s] + p.labels()[a]);
                np.push_back(probs[s] * p.p(a));
            }
        }
        labels = std::move(nl);
        probs = std::move(np);
    }
    // Rounding across q^n products can push the total past the constructor
    // tolerance; rescale before handing the law back.
    double total = 0.0;
    for (double v : probs) total += v;
    for (double& v : probs) v /= total;
    return FiniteDist(std::move(labels), std::move(probs));
}

} // namespace sskg
