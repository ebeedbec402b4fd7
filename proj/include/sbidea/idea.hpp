#pragma once

#include <string>
#include <vector>

#include "sbidea/dataset.hpp"
#include "sbidea/tolerances.hpp"

namespace sbidea {

// Two-phase interval assessment. Phase 1 maximizes interval slacks under the
// endpoint-expanded envelopment; phase 2 fixes those slacks and exhausts the
// remaining per-endpoint residuals to certify efficiency and build targets.
struct TwoPhaseResult {
    std::string dmu;
    double I = 0.0; // phase-1 score
    double H = 0.0; // phase-2 residual score
    std::vector<double> lambda1, lambda2;
    std::vector<Interval> input_slacks;  // phase-1 s^x, model layout
    std::vector<Interval> output_slacks; // phase-1 s^y
    std::vector<double> Lx, Rx, Ly, Ry;  // phase-2 residuals
    std::vector<Interval> input_targets, output_targets;

    bool efficient() const { return I <= kScoreTol && H <= kScoreTol; }
};

// Phase 1 only: lambda2 / residuals / targets stay empty, H stays 0.
TwoPhaseResult assess_idea(const ModelView& view, int p);

// Completes `phase1` (its optimal slacks entering as fixed constants; the
// upper slack endpoint sits in the lower-endpoint rows and vice versa) and
// computes targets x_t = x - s_hi - R on the lower / x - s_lo - L on the
// upper endpoint, symmetrically +s/+residual for outputs.
TwoPhaseResult assess_idea_phase2(const ModelView& view, int p,
                                  const TwoPhaseResult& phase1);

inline TwoPhaseResult assess_idea_full(const ModelView& view, int p) {
    return assess_idea_phase2(view, p, assess_idea(view, p));
}

} // namespace sbidea
