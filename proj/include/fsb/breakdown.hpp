#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "fsb/errors.hpp"

namespace fsb {

enum class BreakdownKind {
  SelfIntersection,
  MarkerCollision,
  TimestepCollapse,
  SolverFailure,
  CurvatureBlowup,
  BottomContact,
  LOverflow,
};

std::string_view to_string(BreakdownKind kind);
std::optional<BreakdownKind> breakdown_kind_from_string(std::string_view s);

/// A detected loss of the smooth solution: when, what, and why.
struct BreakdownSignal {
  double t_break = 0.0;
  BreakdownKind kind = BreakdownKind::SolverFailure;
  std::string detail;
};

/// Thrown by the integrator when a stage cannot be evaluated.
class BreakdownError : public Error {
public:
  explicit BreakdownError(BreakdownSignal signal)
      : Error(std::string(to_string(signal.kind)) + ": " + signal.detail), signal_(std::move(signal)) {}
  const BreakdownSignal &signal() const { return signal_; }

private:
  BreakdownSignal signal_;
};

} // namespace fsb
