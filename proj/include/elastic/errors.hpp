#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace elastic {

// Input outside an operation's domain (non-finite values, out-of-range angles,
// coincident points, malformed documents).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The s-curve family connecting the tangent pair is empty.
class FeasibilityError : public std::runtime_error {
 public:
  FeasibilityError(double alpha, double beta)
      : std::runtime_error("infeasible tangent pair: alpha=" + std::to_string(alpha) +
                           " beta=" + std::to_string(beta)),
        alpha_(alpha),
        beta_(beta) {}

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

 private:
  double alpha_;
  double beta_;
};

// A construction violated an invariant it relies on (bracket failure,
// residual sigma at a claimed root, ...). Indicates a solver bug or a
// configuration outside the proven regime.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct SegmentReport {
  std::size_t index = 0;
  bool feasible = false;
  double alpha = 0.0;
  double beta = 0.0;
  std::string message;
};

class FitError : public std::runtime_error {
 public:
  FitError(const std::string& what, std::vector<SegmentReport> report)
      : std::runtime_error(what), report_(std::move(report)) {}

  const std::vector<SegmentReport>& report() const noexcept { return report_; }

 private:
  std::vector<SegmentReport> report_;
};

}  // namespace elastic
