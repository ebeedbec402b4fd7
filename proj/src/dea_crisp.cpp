#include "sbidea/dea_crisp.hpp"

#include <algorithm>
#include <cmath>

#include "sbidea/milp.hpp"
#include "sbidea/tolerances.hpp"

namespace sbidea {

namespace {

void require_crisp(const ModelView& view) {
    if (auto cell = view.dataset().first_interval_cell())
        throw NonDegenerateData("crisp model requires degenerate data; first interval at " +
                                *cell);
}

double snap(double v) { return std::fabs(v) <= kFeasTol ? 0.0 : v; }

double checked_score(const MilpSolution& sol) {
    if (sol.status != SolveStatus::Optimal)
        throw SolverFailure("crisp model did not solve to optimality");
    if (sol.objective < -kScoreTol)
        throw SolverFailure("crisp model produced a negative score");
    return std::max(0.0, sol.objective);
}

} // namespace

CrispAssessment assess_crisp(const ModelView& view, int p, Rts rts) {
    require_crisp(view);
    int N = view.n(), M = view.m(), S = view.s();

    MilpProblem prob(Sense::Max);
    std::vector<int> lam(N), sx(M), sy(S);
    for (int j = 0; j < N; ++j)
        lam[j] = prob.add_var("lam_" + std::to_string(j), VarKind::Continuous, 0.0);
    for (int i = 0; i < M; ++i)
        sx[i] = prob.add_var("sx_" + std::to_string(i), VarKind::Continuous,
                             1.0 / view.x(i, p).lo);
    for (int r = 0; r < S; ++r)
        sy[r] = prob.add_var("sy_" + std::to_string(r), VarKind::Continuous,
                             1.0 / view.y(r, p).lo);

    for (int i = 0; i < M; ++i) {
        std::vector<std::pair<int, double>> terms;
        for (int j = 0; j < N; ++j) terms.emplace_back(lam[j], view.x(i, j).lo);
        terms.emplace_back(sx[i], 1.0);
        prob.add_row(std::move(terms), Rel::Le, view.x(i, p).lo);
    }
    for (int r = 0; r < S; ++r) {
        std::vector<std::pair<int, double>> terms;
        for (int j = 0; j < N; ++j) terms.emplace_back(lam[j], view.y(r, j).lo);
        terms.emplace_back(sy[r], -1.0);
        prob.add_row(std::move(terms), Rel::Ge, view.y(r, p).lo);
    }
    if (rts == Rts::Vrs) {
        std::vector<std::pair<int, double>> terms;
        for (int j = 0; j < N; ++j) terms.emplace_back(lam[j], 1.0);
        prob.add_row(std::move(terms), Rel::Eq, 1.0);
    }

    MilpSolution sol = solve_lp(prob);
    CrispAssessment a;
    a.dmu = view.dmu_name(p);
    a.rts = rts;
    a.score = checked_score(sol);
    for (int j = 0; j < N; ++j) a.lambda.push_back(snap(sol.assignment[lam[j]]));
    for (int i = 0; i < M; ++i) a.input_slacks.push_back(snap(sol.assignment[sx[i]]));
    for (int r = 0; r < S; ++r) a.output_slacks.push_back(snap(sol.assignment[sy[r]]));
    return a;
}

CrispAssessment assess_crisp_super(const ModelView& view, int p, Rts rts) {
    require_crisp(view);
    int N = view.n(), M = view.m(), S = view.s();
    if (N < 2) throw ValidationError("super-efficiency needs at least two DMUs");
    if (assess_crisp(view, p, rts).score > kScoreTol)
        throw NotEfficient("'" + view.dmu_name(p) + "' is not efficient; super-efficiency "
                           "is defined only for efficient DMUs");

    std::vector<int> ref; // reference set without p
    for (int j = 0; j < N; ++j)
        if (j != p) ref.push_back(j);

    MilpProblem prob(Sense::Min);
    std::vector<int> lam(ref.size()), sx(M), sy(S);
    for (size_t k = 0; k < ref.size(); ++k)
        lam[k] = prob.add_var("lam_" + std::to_string(ref[k]), VarKind::Continuous, 0.0);
    for (int i = 0; i < M; ++i)
        sx[i] = prob.add_var("sx_" + std::to_string(i), VarKind::Continuous,
                             1.0 / view.x(i, p).lo);
    for (int r = 0; r < S; ++r)
        sy[r] = prob.add_var("sy_" + std::to_string(r), VarKind::Continuous,
                             1.0 / view.y(r, p).lo);

    for (int i = 0; i < M; ++i) {
        std::vector<std::pair<int, double>> terms;
        for (size_t k = 0; k < ref.size(); ++k) terms.emplace_back(lam[k], view.x(i, ref[k]).lo);
        terms.emplace_back(sx[i], -1.0);
        prob.add_row(std::move(terms), Rel::Le, view.x(i, p).lo);
    }
    for (int r = 0; r < S; ++r) {
        std::vector<std::pair<int, double>> terms;
        for (size_t k = 0; k < ref.size(); ++k) terms.emplace_back(lam[k], view.y(r, ref[k]).lo);
        terms.emplace_back(sy[r], 1.0);
        prob.add_row(std::move(terms), Rel::Ge, view.y(r, p).lo);
    }
    if (rts == Rts::Vrs) {
        std::vector<std::pair<int, double>> terms;
        for (size_t k = 0; k < ref.size(); ++k) terms.emplace_back(lam[k], 1.0);
        prob.add_row(std::move(terms), Rel::Eq, 1.0);
    }

    MilpSolution sol = solve_lp(prob);
    if (sol.status == SolveStatus::Infeasible)
        throw SuperInfeasible("reduced reference set cannot reach '" + view.dmu_name(p) + "'");
    CrispAssessment a;
    a.dmu = view.dmu_name(p);
    a.rts = rts;
    a.score = checked_score(sol);
    a.lambda.assign(N, 0.0);
    for (size_t k = 0; k < ref.size(); ++k) a.lambda[ref[k]] = snap(sol.assignment[lam[k]]);
    for (int i = 0; i < M; ++i) a.input_slacks.push_back(snap(sol.assignment[sx[i]]));
    for (int r = 0; r < S; ++r) a.output_slacks.push_back(snap(sol.assignment[sy[r]]));
    return a;
}

} // namespace sbidea
