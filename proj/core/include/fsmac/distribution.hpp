#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fsmac {

// Dense joint probability tensor, row-major in axis order.
class JointDistribution {
 public:
  JointDistribution(std::vector<std::size_t> dims, std::vector<std::string> axisLabels,
                    std::vector<double> probs, double tolerance = 1e-10);

  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& flat() const { return probs_; }

  std::size_t axis(const std::string& label) const;
  double sum() const;

  // marginal over the listed axes, result axes in the listed order
  JointDistribution marginal(const std::vector<std::size_t>& axes) const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::string> labels_;
  std::vector<double> probs_;
};

// Shannon entropy in bits; zero entries contribute nothing. The vector must
// sum to 1 within the tolerance.
double entropy(std::span<const double> probs, double tolerance = 1e-9);

double entropy_of(const JointDistribution& joint, const std::vector<std::size_t>& axes);

// I(A;B|C) in bits via H(A,C) + H(B,C) - H(A,B,C) - H(C). Axis sets must be
// disjoint; other axes are marginalized out. Values in [-1e-10, 0] clamp to 0,
// anything lower reports an internal inconsistency.
double conditional_mutual_information(const JointDistribution& joint,
                                      const std::vector<std::size_t>& axesA,
                                      const std::vector<std::size_t>& axesB,
                                      const std::vector<std::size_t>& axesC);

}  // namespace fsmac
