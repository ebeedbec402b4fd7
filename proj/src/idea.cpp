#include "sbidea/idea.hpp"

#include <algorithm>
#include <cmath>

#include "sbidea/milp.hpp"

namespace sbidea {

namespace {

double snap(double v) { return std::fabs(v) <= kFeasTol ? 0.0 : v; }

Interval make_interval(double lo, double hi, const char* what) {
    if (lo > hi) {
        if (lo - hi > kFeasTol) throw SolverFailure(std::string(what) + " inverted");
        lo = hi = 0.5 * (lo + hi);
    }
    return {lo, hi};
}

double checked_score(const MilpSolution& sol, const char* what) {
    if (sol.status != SolveStatus::Optimal)
        throw SolverFailure(std::string(what) + " did not solve to optimality");
    if (sol.objective < -kScoreTol)
        throw SolverFailure(std::string(what) + " produced a negative score");
    return std::max(0.0, sol.objective);
}

} // namespace

TwoPhaseResult assess_idea(const ModelView& view, int p) {
    int N = view.n(), M = view.m(), S = view.s();
    MilpProblem prob(Sense::Max);
    std::vector<int> lam(N);
    std::vector<std::pair<int, int>> sx(M), sy(S); // (lo, hi) endpoint vars
    for (int j = 0; j < N; ++j)
        lam[j] = prob.add_var("lam_" + std::to_string(j), VarKind::Continuous, 0.0);
    for (int i = 0; i < M; ++i) {
        double w = 1.0 / (view.x(i, p).lo + view.x(i, p).hi);
        sx[i].first = prob.add_var("sx_lo_" + std::to_string(i), VarKind::Continuous, w);
        sx[i].second = prob.add_var("sx_hi_" + std::to_string(i), VarKind::Continuous, w);
    }
    for (int r = 0; r < S; ++r) {
        double w = 1.0 / (view.y(r, p).lo + view.y(r, p).hi);
        sy[r].first = prob.add_var("sy_lo_" + std::to_string(r), VarKind::Continuous, w);
        sy[r].second = prob.add_var("sy_hi_" + std::to_string(r), VarKind::Continuous, w);
    }

    // Interval inequalities expand per endpoint; subtracting a slack interval
    // puts its upper endpoint in the lower row.
    for (int i = 0; i < M; ++i) {
        std::vector<std::pair<int, double>> lo_terms, hi_terms;
        for (int j = 0; j < N; ++j) {
            lo_terms.emplace_back(lam[j], view.x(i, j).lo);
            hi_terms.emplace_back(lam[j], view.x(i, j).hi);
        }
        lo_terms.emplace_back(sx[i].second, 1.0);
        hi_terms.emplace_back(sx[i].first, 1.0);
        prob.add_row(std::move(lo_terms), Rel::Le, view.x(i, p).lo);
        prob.add_row(std::move(hi_terms), Rel::Le, view.x(i, p).hi);
        prob.add_row({{sx[i].first, 1.0}, {sx[i].second, -1.0}}, Rel::Le, 0.0);
    }
    for (int r = 0; r < S; ++r) {
        std::vector<std::pair<int, double>> lo_terms, hi_terms;
        for (int j = 0; j < N; ++j) {
            lo_terms.emplace_back(lam[j], view.y(r, j).lo);
            hi_terms.emplace_back(lam[j], view.y(r, j).hi);
        }
        lo_terms.emplace_back(sy[r].first, -1.0);
        hi_terms.emplace_back(sy[r].second, -1.0);
        prob.add_row(std::move(lo_terms), Rel::Ge, view.y(r, p).lo);
        prob.add_row(std::move(hi_terms), Rel::Ge, view.y(r, p).hi);
        prob.add_row({{sy[r].first, 1.0}, {sy[r].second, -1.0}}, Rel::Le, 0.0);
    }
    {
        std::vector<std::pair<int, double>> terms;
        for (int j = 0; j < N; ++j) terms.emplace_back(lam[j], 1.0);
        prob.add_row(std::move(terms), Rel::Eq, 1.0);
    }

    MilpSolution sol = solve_lp(prob);
    TwoPhaseResult res;
    res.dmu = view.dmu_name(p);
    res.I = checked_score(sol, "phase-1 model");
    for (int j = 0; j < N; ++j) res.lambda1.push_back(snap(sol.assignment[lam[j]]));
    for (int i = 0; i < M; ++i)
        res.input_slacks.push_back(make_interval(snap(sol.assignment[sx[i].first]),
                                                 snap(sol.assignment[sx[i].second]),
                                                 "phase-1 input slack"));
    for (int r = 0; r < S; ++r)
        res.output_slacks.push_back(make_interval(snap(sol.assignment[sy[r].first]),
                                                  snap(sol.assignment[sy[r].second]),
                                                  "phase-1 output slack"));
    return res;
}

TwoPhaseResult assess_idea_phase2(const ModelView& view, int p,
                                  const TwoPhaseResult& phase1) {
    int N = view.n(), M = view.m(), S = view.s();
    MilpProblem prob(Sense::Max);
    std::vector<int> lam(N);
    std::vector<std::pair<int, int>> rx(M), ry(S); // (L, R) residual vars
    for (int j = 0; j < N; ++j)
        lam[j] = prob.add_var("lam_" + std::to_string(j), VarKind::Continuous, 0.0);
    for (int i = 0; i < M; ++i) {
        double w = 1.0 / (view.x(i, p).lo + view.x(i, p).hi);
        rx[i].first = prob.add_var("Lx_" + std::to_string(i), VarKind::Continuous, w);
        rx[i].second = prob.add_var("Rx_" + std::to_string(i), VarKind::Continuous, w);
    }
    for (int r = 0; r < S; ++r) {
        double w = 1.0 / (view.y(r, p).lo + view.y(r, p).hi);
        ry[r].first = prob.add_var("Ly_" + std::to_string(r), VarKind::Continuous, w);
        ry[r].second = prob.add_var("Ry_" + std::to_string(r), VarKind::Continuous, w);
    }

    for (int i = 0; i < M; ++i) {
        const Interval s = phase1.input_slacks[i];
        std::vector<std::pair<int, double>> lo_terms, hi_terms;
        for (int j = 0; j < N; ++j) {
            lo_terms.emplace_back(lam[j], view.x(i, j).lo);
            hi_terms.emplace_back(lam[j], view.x(i, j).hi);
        }
        lo_terms.emplace_back(rx[i].second, 1.0); // R in the lower row
        hi_terms.emplace_back(rx[i].first, 1.0);  // L in the upper row
        prob.add_row(std::move(lo_terms), Rel::Le, view.x(i, p).lo - s.hi);
        prob.add_row(std::move(hi_terms), Rel::Le, view.x(i, p).hi - s.lo);
    }
    for (int r = 0; r < S; ++r) {
        const Interval s = phase1.output_slacks[r];
        std::vector<std::pair<int, double>> lo_terms, hi_terms;
        for (int j = 0; j < N; ++j) {
            lo_terms.emplace_back(lam[j], view.y(r, j).lo);
            hi_terms.emplace_back(lam[j], view.y(r, j).hi);
        }
        lo_terms.emplace_back(ry[r].first, -1.0);  // L in the lower row
        hi_terms.emplace_back(ry[r].second, -1.0); // R in the upper row
        prob.add_row(std::move(lo_terms), Rel::Ge, view.y(r, p).lo + s.lo);
        prob.add_row(std::move(hi_terms), Rel::Ge, view.y(r, p).hi + s.hi);
    }
    {
        std::vector<std::pair<int, double>> terms;
        for (int j = 0; j < N; ++j) terms.emplace_back(lam[j], 1.0);
        prob.add_row(std::move(terms), Rel::Eq, 1.0);
    }

    MilpSolution sol = solve_lp(prob);
    TwoPhaseResult res = phase1;
    res.H = checked_score(sol, "phase-2 model");
    for (int j = 0; j < N; ++j) res.lambda2.push_back(snap(sol.assignment[lam[j]]));
    for (int i = 0; i < M; ++i) {
        res.Lx.push_back(snap(sol.assignment[rx[i].first]));
        res.Rx.push_back(snap(sol.assignment[rx[i].second]));
    }
    for (int r = 0; r < S; ++r) {
        res.Ly.push_back(snap(sol.assignment[ry[r].first]));
        res.Ry.push_back(snap(sol.assignment[ry[r].second]));
    }
    for (int i = 0; i < M; ++i) {
        const Interval s = phase1.input_slacks[i];
        res.input_targets.push_back(make_interval(view.x(i, p).lo - s.hi - res.Rx[i],
                                                  view.x(i, p).hi - s.lo - res.Lx[i],
                                                  "input target"));
    }
    for (int r = 0; r < S; ++r) {
        const Interval s = phase1.output_slacks[r];
        res.output_targets.push_back(make_interval(view.y(r, p).lo + s.lo + res.Ly[r],
                                                   view.y(r, p).hi + s.hi + res.Ry[r],
                                                   "output target"));
    }
    return res;
}

} // namespace sbidea
