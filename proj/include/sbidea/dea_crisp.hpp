#pragma once

#include <string>
#include <vector>

#include "sbidea/dataset.hpp"

namespace sbidea {

enum class Rts { Crs, Vrs };

struct CrispAssessment {
    std::string dmu;
    double score = 0.0;              // I for the efficiency model, SuperI for super
    std::vector<double> lambda;      // size N; the super model keeps lambda[p] = 0
    std::vector<double> input_slacks;  // model layout
    std::vector<double> output_slacks;
    Rts rts = Rts::Vrs;
};

// Normalized slacks-based model on crisp (all-degenerate) data: maximize
// sum(s^x_i / x_ip) + sum(s^y_r / y_rp) over the envelopment
// sum_j lambda_j x_ij <= x_ip - s^x_i, sum_j lambda_j y_rj >= y_rp + s^y_r,
// with sum lambda = 1 under VRS. score == 0 iff the DMU is efficient.
CrispAssessment assess_crisp(const ModelView& view, int p, Rts rts);

// Crisp super-efficiency: minimize the same normalized slack sum with DMU p
// removed from the reference set and the slack directions flipped outward
// (sum lambda x - s^x <= x_p, sum lambda y + s^y >= y_p). Requires p to be
// efficient under assess_crisp and at least two DMUs.
CrispAssessment assess_crisp_super(const ModelView& view, int p, Rts rts);

} // namespace sbidea
