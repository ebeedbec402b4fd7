// Shared construction and extraction helpers for the one-phase interval
// models. Private to the library sources; not installed.
#pragma once

#include "sbidea/eimil.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace sbidea::peimil_detail {

inline double snap(double v) { return std::fabs(v) <= kFeasTol ? 0.0 : v; }

inline Interval slack_interval(double lo, double hi) {
    lo = snap(lo);
    hi = snap(hi);
    if (lo > hi) {
        if (lo - hi > kFeasTol) throw SolverFailure("slack interval inverted");
        lo = hi = 0.5 * (lo + hi);
    }
    return {lo, hi};
}

// Variable block shared by the plain and super models: lambda multipliers
// first, then per coordinate the four slack endpoints (sl_lo, sl_hi, su_lo,
// su_hi), then the binaries z^x, z^y — inputs before outputs so the
// branching order is reproducible.
struct Vars {
    std::vector<int> lam;
    std::vector<std::array<int, 4>> xs, ys; // [sl_lo, sl_hi, su_lo, su_hi]
    std::vector<int> zx, zy;
};

inline Vars declare_vars(MilpProblem& prob, const ModelView& view, int p,
                         const std::vector<int>& lam_dmus) {
    Vars v;
    int M = view.m(), S = view.s();
    for (int j : lam_dmus)
        v.lam.push_back(prob.add_var("lam_" + std::to_string(j), VarKind::Continuous, 0.0));
    static const char* suffix[4] = {"sl_lo", "sl_hi", "su_lo", "su_hi"};
    for (int i = 0; i < M; ++i) {
        double w = 1.0 / (view.x(i, p).lo + view.x(i, p).hi);
        std::array<int, 4> ids{};
        for (int k = 0; k < 4; ++k)
            ids[k] = prob.add_var("x" + std::to_string(i) + "_" + suffix[k],
                                  VarKind::Continuous, w);
        v.xs.push_back(ids);
    }
    for (int r = 0; r < S; ++r) {
        double w = 1.0 / (view.y(r, p).lo + view.y(r, p).hi);
        std::array<int, 4> ids{};
        for (int k = 0; k < 4; ++k)
            ids[k] = prob.add_var("y" + std::to_string(r) + "_" + suffix[k],
                                  VarKind::Continuous, w);
        v.ys.push_back(ids);
    }
    for (int i = 0; i < M; ++i)
        v.zx.push_back(prob.add_var("zx_" + std::to_string(i), VarKind::Binary, 0.0));
    for (int r = 0; r < S; ++r)
        v.zy.push_back(prob.add_var("zy_" + std::to_string(r), VarKind::Binary, 0.0));
    return v;
}

// Links each slack family to its binary: the lower endpoint never exceeds
// the upper one, z = 1 releases the sl family and shuts off su, z = 0 does
// the opposite.
inline void add_ordering_rows(MilpProblem& prob, const Vars& v, const ResolvedBigM& bigm) {
    for (size_t i = 0; i < v.xs.size(); ++i) {
        const auto& s = v.xs[i];
        prob.add_row({{s[0], 1.0}, {s[1], -1.0}}, Rel::Le, 0.0);
        prob.add_row({{s[1], 1.0}, {v.zx[i], -bigm.Lx[i]}}, Rel::Le, 0.0);
        prob.add_row({{s[2], 1.0}, {s[3], -1.0}}, Rel::Le, 0.0);
        prob.add_row({{s[3], 1.0}, {v.zx[i], bigm.Rx[i]}}, Rel::Le, bigm.Rx[i]);
    }
    for (size_t r = 0; r < v.ys.size(); ++r) {
        const auto& s = v.ys[r];
        prob.add_row({{s[0], 1.0}, {s[1], -1.0}}, Rel::Le, 0.0);
        prob.add_row({{s[1], 1.0}, {v.zy[r], -bigm.Ly[r]}}, Rel::Le, 0.0);
        prob.add_row({{s[2], 1.0}, {s[3], -1.0}}, Rel::Le, 0.0);
        prob.add_row({{s[3], 1.0}, {v.zy[r], bigm.Ry[r]}}, Rel::Le, bigm.Ry[r]);
    }
}

struct Extracted {
    std::vector<double> lambda;
    std::vector<SlackPair> xs, ys;
    std::vector<bool> zx, zy;
};

inline Extracted extract(const MilpSolution& sol, const Vars& v, int n_all,
                         const std::vector<int>& lam_dmus) {
    Extracted e;
    e.lambda.assign(n_all, 0.0);
    for (size_t k = 0; k < lam_dmus.size(); ++k)
        e.lambda[lam_dmus[k]] = snap(sol.assignment[v.lam[k]]);
    auto family = [&](const std::array<int, 4>& ids) {
        SlackPair sp;
        sp.sl = slack_interval(sol.assignment[ids[0]], sol.assignment[ids[1]]);
        sp.su = slack_interval(sol.assignment[ids[2]], sol.assignment[ids[3]]);
        if (sp.sl.hi > 0.0 && sp.su.hi > 0.0)
            throw SolverFailure("complementarity violated in reported slacks");
        return sp;
    };
    for (const auto& ids : v.xs) e.xs.push_back(family(ids));
    for (const auto& ids : v.ys) e.ys.push_back(family(ids));
    for (int id : v.zx) e.zx.push_back(sol.assignment[id] > 0.5);
    for (int id : v.zy) e.zy.push_back(sol.assignment[id] > 0.5);
    return e;
}

} // namespace sbidea::peimil_detail
