#include "fsb/breakdown.hpp"

#include <array>
#include <utility>

namespace fsb {

namespace {
constexpr std::array<std::pair<BreakdownKind, std::string_view>, 7> kNames{{
    {BreakdownKind::SelfIntersection, "self_intersection"},
    {BreakdownKind::MarkerCollision, "marker_collision"},
    {BreakdownKind::TimestepCollapse, "timestep_collapse"},
    {BreakdownKind::SolverFailure, "solver_failure"},
    {BreakdownKind::CurvatureBlowup, "curvature_blowup"},
    {BreakdownKind::BottomContact, "bottom_contact"},
    {BreakdownKind::LOverflow, "L_overflow"},
}};
} // namespace

std::string_view to_string(BreakdownKind kind) {
  for (const auto &[k, name] : kNames)
    if (k == kind) return name;
  return "unknown";
}

std::optional<BreakdownKind> breakdown_kind_from_string(std::string_view s) {
  for (const auto &[k, name] : kNames)
    if (name == s) return k;
  return std::nullopt;
}

} // namespace fsb
