#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sbidea/dataset.hpp"
#include "sbidea/milp.hpp"
#include "sbidea/tolerances.hpp"

namespace sbidea {

// Resolution scheme for the "large enough" complementarity bounds. The
// resolved constants must dominate every feasible slack, or they would cut
// genuine optima: input slacks are bounded by the assessed DMU's own inputs,
// but output shortfalls are bounded by the best observed value of each
// output, which may sit at another unit.
//  - PerVariable: L^x_i = R^x_i = upper input endpoint of the assessed DMU;
//    L^y_r = R^y_r = the largest upper endpoint of output r across the
//    dataset; times `safety`.
//  - Global: one constant, the dataset's largest upper endpoint, times `safety`.
//  - Explicit: caller-provided per-coordinate constants (safety not applied).
// Super-efficiency slacks measure outward distance, which the efficiency
// bounds may not cover, so the super model resolves both non-explicit
// strategies to the dataset-wide maximum endpoint times 2*safety.
struct BigMConfig {
    enum class Strategy { PerVariable, Global, Explicit };
    Strategy strategy = Strategy::PerVariable;
    double safety = 2.0;
    std::vector<double> Lx, Rx, Ly, Ry; // explicit constants, model layout
};

struct ResolvedBigM {
    std::vector<double> Lx, Rx, Ly, Ry;
};

ResolvedBigM resolve_bigm(const ModelView& view, int p, const BigMConfig& cfg);
ResolvedBigM resolve_bigm_super(const ModelView& view, int p, const BigMConfig& cfg);

struct Assessment {
    std::string dmu;
    double EI = 0.0;
    bool efficient = false;
    std::vector<double> lambda;           // size N
    std::vector<SlackPair> input_slacks;  // model layout; complementary per coordinate
    std::vector<SlackPair> output_slacks;
    std::vector<bool> zx, zy;             // complementarity switches
    std::vector<Interval> input_targets, output_targets;
};

// One-phase model as a 0-1 program: equality envelope rows per endpoint with
// both slack families in place, ordering rows lo <= hi per slack interval,
// and big-M rows sl_hi <= L*z, su_hi <= R*(1-z) switching one family off per
// coordinate. Objective maximizes the endpoint slack sum, each coordinate
// normalized by the assessed DMU's lo+hi.
MilpProblem build_peimil(const ModelView& view, int p, const BigMConfig& cfg);

// Solve and extract: EI, lambda, slack intervals, switches, and targets
// (lower input target = lo - su_hi - sl_lo, upper = hi - su_lo - sl_hi;
// outputs add the same combinations). Targets are cross-checked against the
// reference combination sum(lambda_j * data_j); disagreement beyond
// kTargetCheckTol throws TargetMismatch.
Assessment assess_eimil(const ModelView& view, int p, const BigMConfig& cfg = {});

struct BatchEntry {
    std::optional<Assessment> assessment;
    std::string error; // empty on success
};

// Assess every DMU in dataset order, collecting per-DMU failures instead of
// aborting the batch.
std::vector<BatchEntry> assess_all(const ModelView& view, const BigMConfig& cfg = {});

} // namespace sbidea
