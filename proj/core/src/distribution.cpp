#include "fsmac/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "fsmac/errors.hpp"

namespace fsmac {

JointDistribution::JointDistribution(std::vector<std::size_t> dims,
                                     std::vector<std::string> axisLabels,
                                     std::vector<double> probs, double tolerance)
    : dims_(std::move(dims)), labels_(std::move(axisLabels)), probs_(std::move(probs)) {
  if (dims_.empty()) fail(Errc::DimensionMismatch, "joint distribution needs at least one axis");
  if (labels_.size() != dims_.size()) fail(Errc::DimensionMismatch, "axis label count");
  std::size_t total = 1;
  for (std::size_t d : dims_) {
    if (d == 0) fail(Errc::DimensionMismatch, "zero axis size");
    total *= d;
  }
  if (probs_.size() != total) fail(Errc::DimensionMismatch, "joint storage size");
  double s = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p)) fail(Errc::NonFinitePoint, "non-finite joint entry");
    if (p < 0.0) {
      if (p < -tolerance) fail(Errc::NegativeProbability, "joint entry " + std::to_string(p));
      p = 0.0;
    }
    s += p;
  }
  for (double& p : probs_) {
    if (p < 0.0) p = 0.0;
  }
  if (std::abs(s - 1.0) > tolerance) {
    fail(Errc::InvalidDistribution, "joint sums to " + std::to_string(s));
  }
}

std::size_t JointDistribution::axis(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  fail(Errc::IndexOutOfRange, "no axis labeled " + label);
}

double JointDistribution::sum() const {
  double s = 0.0;
  for (double p : probs_) s += p;
  return s;
}

JointDistribution JointDistribution::marginal(const std::vector<std::size_t>& axes) const {
  const std::size_t k = dims_.size();
  for (std::size_t a : axes) {
    if (a >= k) fail(Errc::IndexOutOfRange, "marginal axis " + std::to_string(a));
  }
  std::vector<std::size_t> outDims(axes.size());
  std::vector<std::string> outLabels(axes.size());
  std::size_t outTotal = 1;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    outDims[i] = dims_[axes[i]];
    outLabels[i] = labels_[axes[i]];
    outTotal *= outDims[i];
  }

  // per-axis strides of the source tensor
  std::vector<std::size_t> stride(k, 1);
  for (std::size_t i = k; i-- > 1;) stride[i - 1] = stride[i] * dims_[i];

  std::vector<double> out(outTotal, 0.0);
  std::vector<std::size_t> idx(k, 0);
  for (std::size_t flat = 0; flat < probs_.size(); ++flat) {
    std::size_t o = 0;
    for (std::size_t i = 0; i < axes.size(); ++i) o = o * outDims[i] + idx[axes[i]];
    out[o] += probs_[flat];
    for (std::size_t i = k; i-- > 0;) {
      if (++idx[i] < dims_[i]) break;
      idx[i] = 0;
    }
  }
  // tolerance is wide open: the source was already validated
  return JointDistribution(std::move(outDims), std::move(outLabels), std::move(out), 1.0);
}

double entropy(std::span<const double> probs, double tolerance) {
  double s = 0.0;
  double h = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < -tolerance) {
      fail(Errc::InvalidDistribution, "bad entropy input " + std::to_string(p));
    }
    if (p <= 0.0) continue;
    s += p;
    h -= p * std::log2(p);
  }
  if (std::abs(s - 1.0) > tolerance) {
    fail(Errc::InvalidDistribution, "entropy input sums to " + std::to_string(s));
  }
  return h;
}

double entropy_of(const JointDistribution& joint, const std::vector<std::size_t>& axes) {
  if (axes.empty()) return 0.0;
  JointDistribution m = joint.marginal(axes);
  double h = 0.0;
  for (double p : m.flat()) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double conditional_mutual_information(const JointDistribution& joint,
                                      const std::vector<std::size_t>& axesA,
                                      const std::vector<std::size_t>& axesB,
                                      const std::vector<std::size_t>& axesC) {
  std::vector<bool> seen(joint.dims().size(), false);
  auto mark = [&](const std::vector<std::size_t>& axes) {
    for (std::size_t a : axes) {
      if (a >= seen.size()) fail(Errc::IndexOutOfRange, "axis " + std::to_string(a));
      if (seen[a]) fail(Errc::AxisOverlap, "axis " + std::to_string(a) + " used twice");
      seen[a] = true;
    }
  };
  mark(axesA);
  mark(axesB);
  mark(axesC);
  if (axesA.empty() || axesB.empty()) return 0.0;

  auto joined = [](std::vector<std::size_t> u, const std::vector<std::size_t>& v) {
    u.insert(u.end(), v.begin(), v.end());
    return u;
  };

  const double hac = entropy_of(joint, joined(axesA, axesC));
  const double hbc = entropy_of(joint, joined(axesB, axesC));
  const double habc = entropy_of(joint, joined(joined(axesA, axesB), axesC));
  const double hc = entropy_of(joint, axesC);
  double v = hac + hbc - habc - hc;
  if (v < 0.0) {
    if (v < -1e-10) {
      fail(Errc::InternalInconsistency,
           "conditional mutual information " + std::to_string(v));
    }
    v = 0.0;
  }
  return v;
}

}  // namespace fsmac
