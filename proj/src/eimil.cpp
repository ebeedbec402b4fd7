#include "sbidea/eimil.hpp"

#include "peimil_common.hpp"

#include <algorithm>
#include <cmath>

namespace sbidea {

namespace {

void check_explicit(const BigMConfig& cfg, int m, int s) {
    if (static_cast<int>(cfg.Lx.size()) != m || static_cast<int>(cfg.Rx.size()) != m ||
        static_cast<int>(cfg.Ly.size()) != s || static_cast<int>(cfg.Ry.size()) != s)
        throw BigMResolutionError("explicit big-M constants must cover every coordinate");
    for (const auto* v : {&cfg.Lx, &cfg.Rx, &cfg.Ly, &cfg.Ry})
        for (double c : *v)
            if (!(c > 0.0) || !std::isfinite(c))
                throw BigMResolutionError("explicit big-M constants must be positive and finite");
}

void check_safety(const BigMConfig& cfg) {
    if (!(cfg.safety >= 1.0) || !std::isfinite(cfg.safety))
        throw BigMResolutionError("big-M safety factor must be >= 1");
}

} // namespace

ResolvedBigM resolve_bigm(const ModelView& view, int p, const BigMConfig& cfg) {
    int M = view.m(), S = view.s();
    if (cfg.strategy == BigMConfig::Strategy::Explicit) {
        check_explicit(cfg, M, S);
        return {cfg.Lx, cfg.Rx, cfg.Ly, cfg.Ry};
    }
    check_safety(cfg);
    ResolvedBigM r;
    if (cfg.strategy == BigMConfig::Strategy::PerVariable) {
        for (int i = 0; i < M; ++i) {
            // No feasible input slack can exceed the observed input itself.
            double c = view.x(i, p).hi * cfg.safety;
            r.Lx.push_back(c);
            r.Rx.push_back(c);
        }
        for (int rr = 0; rr < S; ++rr) {
            // An output shortfall is bounded by the best observed value of
            // that output, which may sit at another unit — the assessed
            // unit's own data cannot bound it.
            double c = 0.0;
            for (int j = 0; j < view.n(); ++j) c = std::max(c, view.y(rr, j).hi);
            r.Ly.push_back(c * cfg.safety);
            r.Ry.push_back(c * cfg.safety);
        }
    } else { // Global
        double c = 0.0;
        for (int j = 0; j < view.n(); ++j) {
            for (int i = 0; i < M; ++i) c = std::max(c, view.x(i, j).hi);
            for (int rr = 0; rr < S; ++rr) c = std::max(c, view.y(rr, j).hi);
        }
        c *= cfg.safety;
        r.Lx.assign(M, c);
        r.Rx.assign(M, c);
        r.Ly.assign(S, c);
        r.Ry.assign(S, c);
    }
    return r;
}

ResolvedBigM resolve_bigm_super(const ModelView& view, int p, const BigMConfig& cfg) {
    int M = view.m(), S = view.s();
    if (cfg.strategy == BigMConfig::Strategy::Explicit) {
        check_explicit(cfg, M, S);
        return {cfg.Lx, cfg.Rx, cfg.Ly, cfg.Ry};
    }
    check_safety(cfg);
    (void)p;
    // Super slacks are bounded by distances to other units rather than by
    // the assessed unit's own data, so size the constants off the whole
    // dataset with extra headroom.
    double c = 0.0;
    for (int j = 0; j < view.n(); ++j) {
        for (int i = 0; i < M; ++i) c = std::max(c, view.x(i, j).hi);
        for (int r = 0; r < S; ++r) c = std::max(c, view.y(r, j).hi);
    }
    c *= 2.0 * cfg.safety;
    ResolvedBigM r;
    r.Lx.assign(M, c);
    r.Rx.assign(M, c);
    r.Ly.assign(S, c);
    r.Ry.assign(S, c);
    return r;
}

namespace {

using peimil_detail::Vars;

MilpProblem build(const ModelView& view, int p, const BigMConfig& cfg, Vars& v) {
    ResolvedBigM bigm = resolve_bigm(view, p, cfg);
    int N = view.n(), M = view.m(), S = view.s();
    MilpProblem prob(Sense::Max);
    std::vector<int> all(N);
    for (int j = 0; j < N; ++j) all[j] = j;
    v = peimil_detail::declare_vars(prob, view, p, all);

    // Envelope equalities per endpoint. On the input side both slack
    // families are paid out of the observed value; on the output side both
    // are added on top of it. The cross placement (upper su with lower sl
    // and vice versa) is what keeps the targets proper intervals.
    for (int i = 0; i < M; ++i) {
        std::vector<std::pair<int, double>> lo_terms, hi_terms;
        for (int j = 0; j < N; ++j) {
            lo_terms.emplace_back(v.lam[j], view.x(i, j).lo);
            hi_terms.emplace_back(v.lam[j], view.x(i, j).hi);
        }
        lo_terms.emplace_back(v.xs[i][0], 1.0); // sl_lo
        lo_terms.emplace_back(v.xs[i][3], 1.0); // su_hi
        hi_terms.emplace_back(v.xs[i][1], 1.0); // sl_hi
        hi_terms.emplace_back(v.xs[i][2], 1.0); // su_lo
        prob.add_row(std::move(lo_terms), Rel::Eq, view.x(i, p).lo);
        prob.add_row(std::move(hi_terms), Rel::Eq, view.x(i, p).hi);
    }
    for (int r = 0; r < S; ++r) {
        std::vector<std::pair<int, double>> lo_terms, hi_terms;
        for (int j = 0; j < N; ++j) {
            lo_terms.emplace_back(v.lam[j], view.y(r, j).lo);
            hi_terms.emplace_back(v.lam[j], view.y(r, j).hi);
        }
        lo_terms.emplace_back(v.ys[r][0], -1.0); // sl_lo
        lo_terms.emplace_back(v.ys[r][3], -1.0); // su_hi
        hi_terms.emplace_back(v.ys[r][1], -1.0); // sl_hi
        hi_terms.emplace_back(v.ys[r][2], -1.0); // su_lo
        prob.add_row(std::move(lo_terms), Rel::Eq, view.y(r, p).lo);
        prob.add_row(std::move(hi_terms), Rel::Eq, view.y(r, p).hi);
    }
    {
        std::vector<std::pair<int, double>> terms;
        for (int j = 0; j < N; ++j) terms.emplace_back(v.lam[j], 1.0);
        prob.add_row(std::move(terms), Rel::Eq, 1.0);
    }
    peimil_detail::add_ordering_rows(prob, v, bigm);
    return prob;
}

} // namespace

MilpProblem build_peimil(const ModelView& view, int p, const BigMConfig& cfg) {
    Vars unused;
    return build(view, p, cfg, unused);
}

Assessment assess_eimil(const ModelView& view, int p, const BigMConfig& cfg) {
    int N = view.n(), M = view.m(), S = view.s();

    Vars v;
    MilpProblem prob = build(view, p, cfg, v);
    MilpSolution sol = solve_milp(prob);
    if (sol.status != SolveStatus::Optimal)
        throw SolverFailure("one-phase model did not solve to optimality for '" +
                            view.dmu_name(p) + "'");
    if (sol.objective < -kScoreTol)
        throw SolverFailure("one-phase model produced a negative score");

    std::vector<int> all(N);
    for (int j = 0; j < N; ++j) all[j] = j;
    peimil_detail::Extracted e = peimil_detail::extract(sol, v, N, all);

    Assessment a;
    a.dmu = view.dmu_name(p);
    a.EI = std::max(0.0, sol.objective);
    a.efficient = a.EI <= kScoreTol;
    a.lambda = std::move(e.lambda);
    a.input_slacks = std::move(e.xs);
    a.output_slacks = std::move(e.ys);
    a.zx = std::move(e.zx);
    a.zy = std::move(e.zy);

    // Targets are defined through the slacks and must coincide with the
    // reference combination the multipliers describe; a gap means the
    // reported solution is not actually on the frontier.
    // Snapping the slacks can invert a degenerate target by a rounding
    // hair; fold that back before constructing the interval.
    auto guarded = [](double lo, double hi) {
        if (lo > hi && lo - hi <= kFeasTol) lo = hi = 0.5 * (lo + hi);
        return Interval{lo, hi};
    };
    for (int i = 0; i < M; ++i) {
        const SlackPair& s = a.input_slacks[i];
        Interval t = guarded(view.x(i, p).lo - s.su.hi - s.sl.lo,
                             view.x(i, p).hi - s.su.lo - s.sl.hi);
        double ref_lo = 0.0, ref_hi = 0.0;
        for (int j = 0; j < N; ++j) {
            ref_lo += a.lambda[j] * view.x(i, j).lo;
            ref_hi += a.lambda[j] * view.x(i, j).hi;
        }
        if (std::fabs(t.lo - ref_lo) > kTargetCheckTol ||
            std::fabs(t.hi - ref_hi) > kTargetCheckTol)
            throw TargetMismatch("input target disagrees with the reference combination for '" +
                                 view.dmu_name(p) + "'");
        a.input_targets.push_back(t);
    }
    for (int r = 0; r < S; ++r) {
        const SlackPair& s = a.output_slacks[r];
        Interval t = guarded(view.y(r, p).lo + s.sl.lo + s.su.hi,
                             view.y(r, p).hi + s.sl.hi + s.su.lo);
        double ref_lo = 0.0, ref_hi = 0.0;
        for (int j = 0; j < N; ++j) {
            ref_lo += a.lambda[j] * view.y(r, j).lo;
            ref_hi += a.lambda[j] * view.y(r, j).hi;
        }
        if (std::fabs(t.lo - ref_lo) > kTargetCheckTol ||
            std::fabs(t.hi - ref_hi) > kTargetCheckTol)
            throw TargetMismatch("output target disagrees with the reference combination for '" +
                                 view.dmu_name(p) + "'");
        a.output_targets.push_back(t);
    }
    return a;
}

std::vector<BatchEntry> assess_all(const ModelView& view, const BigMConfig& cfg) {
    std::vector<BatchEntry> out;
    for (int p = 0; p < view.n(); ++p) {
        BatchEntry entry;
        try {
            entry.assessment = assess_eimil(view, p, cfg);
        } catch (const Error& e) {
            entry.error = e.what();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

} // namespace sbidea
