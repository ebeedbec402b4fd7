#pragma once

namespace sbidea {

// Feasibility: constraint residuals and slack snapping. Sized for data
// magnitudes up to ~3e4.
inline constexpr double kFeasTol = 1e-7;

// Efficiency classification: EI (or I+H) at or below this means efficient.
// Genuine slacks in this domain are orders of magnitude larger.
inline constexpr double kScoreTol = 1e-6;

// Agreement required between targets computed from slack equations and from
// the reference combination; worse than this signals a formulation bug.
inline constexpr double kTargetCheckTol = 1e-5;

} // namespace sbidea
