#include "sbidea/super.hpp"

#include "peimil_common.hpp"

#include <algorithm>
#include <cmath>

namespace sbidea {

namespace {

using peimil_detail::Vars;

MilpProblem build(const ModelView& view, int p, const BigMConfig& cfg, Vars& v,
                  std::vector<int>& ref) {
    ResolvedBigM bigm = resolve_bigm_super(view, p, cfg);
    int N = view.n(), M = view.m(), S = view.s();
    MilpProblem prob(Sense::Min);
    ref.clear();
    for (int j = 0; j < N; ++j)
        if (j != p) ref.push_back(j);
    v = peimil_detail::declare_vars(prob, view, p, ref);

    // Envelope inequalities: the reduced hull may overshoot the assessed
    // point by the slack amounts on each side.
    for (int i = 0; i < M; ++i) {
        std::vector<std::pair<int, double>> lo_terms, hi_terms;
        for (size_t k = 0; k < ref.size(); ++k) {
            lo_terms.emplace_back(v.lam[k], view.x(i, ref[k]).lo);
            hi_terms.emplace_back(v.lam[k], view.x(i, ref[k]).hi);
        }
        lo_terms.emplace_back(v.xs[i][1], -1.0); // sl_hi
        lo_terms.emplace_back(v.xs[i][2], -1.0); // su_lo
        hi_terms.emplace_back(v.xs[i][0], -1.0); // sl_lo
        hi_terms.emplace_back(v.xs[i][3], -1.0); // su_hi
        prob.add_row(std::move(lo_terms), Rel::Le, view.x(i, p).lo);
        prob.add_row(std::move(hi_terms), Rel::Le, view.x(i, p).hi);
    }
    for (int r = 0; r < S; ++r) {
        std::vector<std::pair<int, double>> lo_terms, hi_terms;
        for (size_t k = 0; k < ref.size(); ++k) {
            lo_terms.emplace_back(v.lam[k], view.y(r, ref[k]).lo);
            hi_terms.emplace_back(v.lam[k], view.y(r, ref[k]).hi);
        }
        lo_terms.emplace_back(v.ys[r][2], 1.0); // su_lo
        lo_terms.emplace_back(v.ys[r][1], 1.0); // sl_hi
        hi_terms.emplace_back(v.ys[r][3], 1.0); // su_hi
        hi_terms.emplace_back(v.ys[r][0], 1.0); // sl_lo
        prob.add_row(std::move(lo_terms), Rel::Ge, view.y(r, p).lo);
        prob.add_row(std::move(hi_terms), Rel::Ge, view.y(r, p).hi);
    }
    {
        std::vector<std::pair<int, double>> terms;
        for (size_t k = 0; k < ref.size(); ++k) terms.emplace_back(v.lam[k], 1.0);
        prob.add_row(std::move(terms), Rel::Eq, 1.0);
    }
    peimil_detail::add_ordering_rows(prob, v, bigm);
    return prob;
}

} // namespace

MilpProblem build_speimil(const ModelView& view, int p, const BigMConfig& cfg) {
    Vars unused_vars;
    std::vector<int> unused_ref;
    return build(view, p, cfg, unused_vars, unused_ref);
}

SuperAssessment assess_super(const ModelView& view, int p, const BigMConfig& cfg) {
    if (view.n() < 2)
        throw ValidationError("super-efficiency needs at least two DMUs");
    Assessment eff = assess_eimil(view, p, cfg);
    if (!eff.efficient)
        throw NotEfficient("'" + view.dmu_name(p) +
                           "' is not efficient; super-efficiency is defined only for "
                           "efficient DMUs");

    Vars v;
    std::vector<int> ref;
    MilpProblem prob = build(view, p, cfg, v, ref);
    MilpSolution sol = solve_milp(prob);

    SuperAssessment a;
    a.dmu = view.dmu_name(p);
    if (sol.status == SolveStatus::Infeasible) {
        a.status = SuperStatus::Infeasible;
        return a;
    }
    if (sol.status != SolveStatus::Optimal)
        throw SolverFailure("super-efficiency model did not solve to optimality for '" +
                            view.dmu_name(p) + "'");
    if (sol.objective < -kScoreTol)
        throw SolverFailure("super-efficiency model produced a negative score");

    peimil_detail::Extracted e = peimil_detail::extract(sol, v, view.n(), ref);
    a.status = SuperStatus::Scored;
    a.SEI = std::max(0.0, sol.objective);
    a.lambda = std::move(e.lambda);
    a.input_slacks = std::move(e.xs);
    a.output_slacks = std::move(e.ys);
    a.zx = std::move(e.zx);
    a.zy = std::move(e.zy);
    return a;
}

RankingReport assemble_ranking(std::vector<RankEntry> entries) {
    auto cls = [](const RankEntry& e) {
        if (e.super_infeasible) return 0;
        return e.efficient ? 1 : 2;
    };
    std::sort(entries.begin(), entries.end(),
              [&](const RankEntry& a, const RankEntry& b) {
                  int ca = cls(a), cb = cls(b);
                  if (ca != cb) return ca < cb;
                  if (ca == 1 && a.SEI.value() != b.SEI.value())
                      return a.SEI.value() > b.SEI.value();
                  if (ca == 2 && a.EI != b.EI) return a.EI < b.EI;
                  return a.dmu < b.dmu;
              });
    for (size_t k = 0; k < entries.size(); ++k) entries[k].rank = static_cast<int>(k) + 1;
    RankingReport report;
    report.entries = std::move(entries);
    return report;
}

RankingReport rank(const ModelView& view, const BigMConfig& cfg) {
    std::vector<RankEntry> entries;
    for (int p = 0; p < view.n(); ++p) {
        Assessment a = assess_eimil(view, p, cfg);
        RankEntry e;
        e.dmu = a.dmu;
        e.efficient = a.efficient;
        e.EI = a.EI;
        if (a.efficient) {
            SuperAssessment s = assess_super(view, p, cfg);
            if (s.status == SuperStatus::Scored)
                e.SEI = s.SEI;
            else
                e.super_infeasible = true;
        }
        entries.push_back(std::move(e));
    }
    return assemble_ranking(std::move(entries));
}

} // namespace sbidea
