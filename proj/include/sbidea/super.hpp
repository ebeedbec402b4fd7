#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sbidea/eimil.hpp"

namespace sbidea {

enum class SuperStatus { Scored, Infeasible };

struct SuperAssessment {
    std::string dmu;
    SuperStatus status = SuperStatus::Scored;
    double SEI = 0.0;                     // valid when status == Scored
    std::vector<double> lambda;           // size N with lambda[p] == 0; empty when infeasible
    std::vector<SlackPair> input_slacks;  // empty when infeasible
    std::vector<SlackPair> output_slacks;
    std::vector<bool> zx, zy;
};

// Super-efficiency counterpart of the one-phase model: the assessed DMU is
// removed from the reference set, the envelope rows become inequalities that
// let the remaining hull miss the point by the slack amounts, and the same
// normalized slack sum is minimized instead of maximized.
MilpProblem build_speimil(const ModelView& view, int p, const BigMConfig& cfg);

// Requires at least two DMUs and an efficient assessed DMU (verified with a
// fresh efficiency run; NotEfficient otherwise). A reduced hull that cannot
// reach the point even with slacks yields status Infeasible, not an error.
SuperAssessment assess_super(const ModelView& view, int p, const BigMConfig& cfg = {});

struct RankEntry {
    std::string dmu;
    bool efficient = false;
    double EI = 0.0;
    std::optional<double> SEI;    // engaged only for scored efficient DMUs
    bool super_infeasible = false;
    int rank = 0;
};

struct RankingReport {
    std::vector<RankEntry> entries; // sorted; entries[k].rank == k + 1
};

// Ordering convention (also echoed in report metadata): super-infeasible
// efficient DMUs first, then scored efficient DMUs by SEI descending, then
// inefficient DMUs by EI ascending; ties broken by name.
RankingReport assemble_ranking(std::vector<RankEntry> entries);

// Full pipeline: efficiency scores for everyone, super scores for the
// efficient, then the total order above.
RankingReport rank(const ModelView& view, const BigMConfig& cfg = {});

} // namespace sbidea
