#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sskg/errors.hpp"

namespace sskg {

/// Probability mass function over a finite labelled alphabet.
/// Invariants (checked at construction): labels distinct and non-empty,
/// every mass >= 0, total mass within 1e-12 of one.
class FiniteDist {
public:
    FiniteDist(std::vector<std::string> labels, std::vector<double> probs);

    static FiniteDist uniform(std::size_t k);

    std::size_t size() const { return probs_.size(); }
    double p(std::size_t i) const { return probs_[i]; }
    const std::vector<double>& probs() const { return probs_; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Index of a label; throws validation_error when absent.
    std::size_t index_of(const std::string& label) const;

private:
    std::vector<std::string> labels_;
    std::vector<double> probs_;
};

/// Joint pmf over a pair of finite alphabets, row-major in (a, b).
class JointDist2 {
public:
    JointDist2(std::vector<std::string> labelsA, std::vector<std::string> labelsB,
               std::vector<double> probs);

    std::size_t na() const { return labelsA_.size(); }
    std::size_t nb() const { return labelsB_.size(); }
    double at(std::size_t ia, std::size_t ib) const { return probs_[ia * nb() + ib]; }
    const std::vector<double>& probs() const { return probs_; }
    const std::vector<std::string>& labels_a() const { return labelsA_; }
    const std::vector<std::string>& labels_b() const { return labelsB_; }

private:
    std::vector<std::string> labelsA_, labelsB_;
    std::vector<double> probs_;
};

/// Joint pmf over a triple of finite alphabets, row-major in (x, y, z).
class JointDist3 {
public:
    JointDist3(std::vector<std::string> labelsX, std::vector<std::string> labelsY,
               std::vector<std::string> labelsZ, std::vector<double> probs);

    std::size_t nx() const { return labelsX_.size(); }
    std::size_t ny() const { return labelsY_.size(); }
    std::size_t nz() const { return labelsZ_.size(); }
    double at(std::size_t ix, std::size_t iy, std::size_t iz) const {
        return probs_[(ix * ny() + iy) * nz() + iz];
    }
    const std::vector<double>& probs() const { return probs_; }
    const std::vector<std::string>& labels_x() const { return labelsX_; }
    const std::vector<std::string>& labels_y() const { return labelsY_; }
    const std::vector<std::string>& labels_z() const { return labelsZ_; }

private:
    std::vector<std::string> labelsX_, labelsY_, labelsZ_;
    std::vector<double> probs_;
};

/// Conditional pmf P(out | in): one stochastic row per input symbol.
/// Invariants: every entry >= 0, each row sums to one within 1e-12.
class Channel {
public:
    Channel(std::vector<std::string> inLabels, std::vector<std::string> outLabels,
            std::vector<double> rows);

    std::size_t in_size() const { return inLabels_.size(); }
    std::size_t out_size() const { return outLabels_.size(); }
    double at(std::size_t i, std::size_t o) const { return rows_[i * out_size() + o]; }
    const std::vector<double>& rows() const { return rows_; }
    const std::vector<std::string>& in_labels() const { return inLabels_; }
    const std::vector<std::string>& out_labels() const { return outLabels_; }

private:
    std::vector<std::string> inLabels_, outLabels_;
    std::vector<double> rows_;
};

/// Shannon entropy of an unnormalized nonnegative weight vector, in bits.
/// Zero entries contribute nothing.
double entropy_bits(std::span<const double> weights);

double entropy(const FiniteDist& p);

/// I(A;B) in bits. Never negative beyond ~1e-12 roundoff (clamped at 0 is
/// deliberately *not* applied; callers asserting nonnegativity allow slack).
double mutual_information(const JointDist2& j);

/// Which coordinate of (X, Y, Z) is conditioned on.
enum class Conditioning { OnX, OnY, OnZ };

/// I(A;B|C) where C is the chosen coordinate and (A,B) are the other two
/// in (x, y, z) order.
double conditional_mutual_information(const JointDist3& j, Conditioning given);

/// D(p || q) in bits. Returns +infinity when p puts mass outside supp(q).
/// Alphabets must agree label-for-label.
double kl_divergence(const FiniteDist& p, const FiniteDist& q);
double kl_divergence(const JointDist2& p, const JointDist2& q);

/// Sum_a w(a) D(p(.|a) || q): conditional divergence against a fixed
/// comparison law, weighted by w over the channel inputs.
double conditional_kl(const Channel& p, const FiniteDist& q, const FiniteDist& w);

FiniteDist marginal_x(const JointDist3& j);
FiniteDist marginal_y(const JointDist3& j);
FiniteDist marginal_z(const JointDist3& j);
JointDist2 marginal_xy(const JointDist3& j);
JointDist2 marginal_xz(const JointDist3& j);
JointDist2 marginal_yz(const JointDist3& j);
FiniteDist marginal_a(const JointDist2& j);
FiniteDist marginal_b(const JointDist2& j);

/// P(B|A) extracted from a joint; throws validation_error when some input
/// symbol has zero mass (callers are expected to drop such rows first).
Channel channel_from_joint(const JointDist2& j);

/// Joint over (A, B) restricted to C = c, renormalized; throws on zero mass.
/// The retained coordinates keep (x, y, z) order.
JointDist2 condition_on_x(const JointDist3& j, std::size_t ix);
JointDist2 condition_on_y(const JointDist3& j, std::size_t iy);
JointDist2 condition_on_z(const JointDist3& j, std::size_t iz);

/// Pair coordinate A = X against B = (Y, Z); pair labels are "y|z".
JointDist2 flatten_yz(const JointDist3& j);

/// n-fold product law over length-n label strings (labels concatenated).
/// Guarded: size(p)^n must stay within 2^24 cells.
FiniteDist iid_extend(const FiniteDist& p, std::size_t n);

} // namespace sskg
