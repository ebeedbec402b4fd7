#include "sbidea/milp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "sbidea/tolerances.hpp"

namespace sbidea {

namespace {

constexpr double kReducedCostTol = 1e-9; // optimality threshold on reduced costs
// Smallest usable pivot magnitude. The tableau is equilibrated to unit scale,
// so anything this small is cancellation residue, not a coefficient; pivoting
// on residue amplifies it by its reciprocal and wrecks the tableau.
constexpr double kPivotTol = 1e-7;
constexpr double kRatioTieTol = 1e-9;    // ratio-test tie window, relative
constexpr double kDegenStepTol = 1e-10;  // min ratio below this = degenerate step
constexpr double kPruneTol = 1e-9;       // B&B bound-vs-incumbent margin
constexpr double kBreakdownGuard = 1e13; // tableau conditioning guard
constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense LP in "solver form": maximize obj over nonnegative vars subject to
// rows with Le/Eq/Ge relations. Binary handling (substitution / relaxation)
// happens before this form is built.
struct DenseLp {
    int n = 0;
    std::vector<std::vector<double>> a; // row coefficients, each size n
    std::vector<Rel> rel;
    std::vector<double> rhs;
    std::vector<double> obj;            // size n, maximize
    double obj_const = 0.0;             // from substituted binaries
};

struct LpResult {
    SolveStatus status = SolveStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> x; // structural variables only
};

// Pivot selection mode. Bland is the primary rule; GrowthAware is the rescue
// used when Bland wrecks the tableau (see solve_dense).
enum class PivotRule { Bland, GrowthAware };

// Two-phase primal simplex on a dense tableau. The constraint matrix is
// equilibrated first (rows then columns scaled to unit max magnitude) so the
// fixed tolerances act relative to the problem's scale.
//
// Bland mode: entering column = smallest index with an improving reduced
// cost; leaving row = minimum ratio, ties broken toward the smallest basis
// variable index, with the tie window relative to the ratio magnitude —
// degenerate ties must be recognized or the index-based tie-break (the
// anti-cycling part) never engages.
//
// GrowthAware mode: among improving columns, take the largest pivot whose
// step is non-degenerate; only when every improving column is blocked at a
// degenerate step does it fall back to Bland's choice. Still cycle-free: a
// cycle would consist entirely of degenerate pivots, and those all follow
// Bland's rule, which cannot cycle; non-degenerate steps strictly improve
// the objective, so no earlier basis can recur.
class Simplex {
public:
    Simplex(const DenseLp& lp, PivotRule rule) : n_(lp.n), rule_(rule) {
        m_ = static_cast<int>(lp.a.size());
        rscale_.assign(m_, 1.0);
        for (int i = 0; i < m_; ++i) {
            // The rhs participates so substituted-out big-M constants cannot
            // leave an out-of-scale right-hand side behind.
            double mx = std::fabs(lp.rhs[i]);
            for (double v : lp.a[i]) mx = std::max(mx, std::fabs(v));
            if (mx > 0.0) rscale_[i] = 1.0 / mx;
        }
        cscale_.assign(n_, 1.0);
        for (int j = 0; j < n_; ++j) {
            double mx = 0.0;
            for (int i = 0; i < m_; ++i) mx = std::max(mx, std::fabs(lp.a[i][j]) * rscale_[i]);
            if (mx > 0.0) cscale_[j] = 1.0 / mx;
        }

        int n_slack = 0;
        for (Rel r : lp.rel)
            if (r != Rel::Eq) ++n_slack;
        // Column layout: structural | slack/surplus | artificial.
        slack_begin_ = n_;
        art_begin_ = n_ + n_slack;
        int n_art = 0;
        for (int i = 0; i < m_; ++i) {
            bool neg = lp.rhs[i] < 0.0;
            Rel r = lp.rel[i];
            if (neg) r = (r == Rel::Le) ? Rel::Ge : (r == Rel::Ge ? Rel::Le : Rel::Eq);
            if (r != Rel::Le) ++n_art;
        }
        ncols_ = art_begin_ + n_art;
        tab_.assign(m_, std::vector<double>(ncols_ + 1, 0.0));
        basis_.assign(m_, -1);
        is_art_.assign(ncols_, false);

        int next_slack = slack_begin_, next_art = art_begin_;
        for (int i = 0; i < m_; ++i) {
            double sign = lp.rhs[i] < 0.0 ? -1.0 : 1.0;
            for (int j = 0; j < n_; ++j)
                tab_[i][j] = sign * rscale_[i] * lp.a[i][j] * cscale_[j];
            tab_[i][ncols_] = sign * rscale_[i] * lp.rhs[i];
            Rel r = lp.rel[i];
            if (sign < 0.0) r = (r == Rel::Le) ? Rel::Ge : (r == Rel::Ge ? Rel::Le : Rel::Eq);
            switch (r) {
            case Rel::Le:
                tab_[i][next_slack] = 1.0;
                basis_[i] = next_slack++;
                break;
            case Rel::Ge:
                tab_[i][next_slack++] = -1.0;
                is_art_[next_art] = true;
                tab_[i][next_art] = 1.0;
                basis_[i] = next_art++;
                break;
            case Rel::Eq:
                is_art_[next_art] = true;
                tab_[i][next_art] = 1.0;
                basis_[i] = next_art++;
                break;
            }
        }
    }

    LpResult solve(const std::vector<double>& obj) {
        if (art_begin_ < ncols_) {
            // Phase 1: maximize -(sum of artificials).
            std::vector<double> c1(ncols_, 0.0);
            for (int j = art_begin_; j < ncols_; ++j) c1[j] = -1.0;
            init_zrow(c1);
            if (run(/*allow_art=*/true) == SolveStatus::Unbounded)
                throw NumericalBreakdown("phase-1 simplex reported unbounded");
            double art_sum = 0.0;
            for (int i = 0; i < m_; ++i)
                if (is_art_[basis_[i]]) art_sum += tab_[i][ncols_];
            if (art_sum > kFeasTol) return {SolveStatus::Infeasible, 0.0, {}};
            drive_out_artificials();
        }
        // Phase 2 over the real objective (in scaled units to match the
        // tableau); artificial columns are banned.
        std::vector<double> c2(ncols_, 0.0);
        for (int j = 0; j < n_; ++j) c2[j] = obj[j] * cscale_[j];
        init_zrow(c2);
        if (run(/*allow_art=*/false) == SolveStatus::Unbounded)
            return {SolveStatus::Unbounded, 0.0, {}};
        std::vector<double> x(n_, 0.0);
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < n_) x[basis_[i]] = tab_[i][ncols_] * cscale_[basis_[i]];
        double val = 0.0;
        for (int j = 0; j < n_; ++j) val += obj[j] * x[j];
        return {SolveStatus::Optimal, val, std::move(x)};
    }

private:
    void init_zrow(const std::vector<double>& c) {
        zrow_.assign(ncols_, 0.0);
        for (int j = 0; j < ncols_; ++j) {
            double z = -c[j];
            for (int i = 0; i < m_; ++i)
                if (double cb = c[basis_[i]]; cb != 0.0) z += cb * tab_[i][j];
            zrow_[j] = z;
        }
    }

    // Min-ratio test for a candidate entering column. Within the ratio tie
    // window, `prefer_large` picks the row with the biggest pivot entry
    // (numerical safety); otherwise the smallest basis index (Bland).
    struct RatioPick {
        int row = -1;
        double ratio = kInf;
        double piv = 0.0;
    };
    RatioPick ratio_test(int enter, bool prefer_large) const {
        RatioPick rp;
        for (int i = 0; i < m_; ++i) {
            double aie = tab_[i][enter];
            if (aie <= kPivotTol) continue;
            double ratio = tab_[i][ncols_] / aie;
            if (rp.row < 0) {
                rp = {i, ratio, aie};
                continue;
            }
            double tie = kRatioTieTol * std::max(1.0, std::fabs(rp.ratio));
            if (ratio < rp.ratio - tie) {
                rp = {i, ratio, aie};
            } else if (std::fabs(ratio - rp.ratio) <= tie) {
                bool better = prefer_large ? aie > rp.piv : basis_[i] < basis_[rp.row];
                if (better) rp = {i, ratio, aie};
            }
        }
        return rp;
    }

    SolveStatus run(bool allow_art) {
        for (long iter = 0;; ++iter) {
            if (iter > 200000)
                throw NumericalBreakdown("simplex iteration limit exceeded");
            int enter = -1, leave = -1;
            if (rule_ == PivotRule::Bland) {
                for (int j = 0; j < ncols_; ++j) {
                    if (!allow_art && is_art_[j]) continue;
                    if (zrow_[j] < -kReducedCostTol) { enter = j; break; }
                }
                if (enter < 0) return SolveStatus::Optimal;
                leave = ratio_test(enter, /*prefer_large=*/false).row;
                if (leave < 0) return SolveStatus::Unbounded;
            } else {
                // Survey every improving column. One with no blocking row is
                // an improving ray — unbounded no matter what else exists.
                double best_piv = 0.0;
                int bland_enter = -1, bland_leave = -1;
                for (int j = 0; j < ncols_; ++j) {
                    if (!allow_art && is_art_[j]) continue;
                    if (zrow_[j] >= -kReducedCostTol) continue;
                    RatioPick rp = ratio_test(j, /*prefer_large=*/true);
                    if (rp.row < 0) return SolveStatus::Unbounded;
                    if (bland_enter < 0) {
                        bland_enter = j;
                        bland_leave = ratio_test(j, /*prefer_large=*/false).row;
                    }
                    if (rp.ratio > kDegenStepTol && rp.piv > best_piv) {
                        best_piv = rp.piv;
                        enter = j;
                        leave = rp.row;
                    }
                }
                if (bland_enter < 0) return SolveStatus::Optimal;
                if (enter < 0) {
                    enter = bland_enter;
                    leave = bland_leave;
                }
            }
            pivot(leave, enter);
        }
    }

    void pivot(int r, int cidx) {
        double piv = tab_[r][cidx];
        double inv = 1.0 / piv;
        for (double& v : tab_[r]) v *= inv;
        tab_[r][cidx] = 1.0;
        for (int i = 0; i < m_; ++i) {
            if (i == r) continue;
            double f = tab_[i][cidx];
            if (f == 0.0) continue;
            for (int j = 0; j <= ncols_; ++j) tab_[i][j] -= f * tab_[r][j];
            tab_[i][cidx] = 0.0;
        }
        double fz = zrow_[cidx];
        if (fz != 0.0)
            for (int j = 0; j < ncols_; ++j) zrow_[j] -= fz * tab_[r][j];
        zrow_[cidx] = 0.0;
        basis_[r] = cidx;
        check_conditioning();
    }

    void check_conditioning() const {
        for (const auto& row : tab_)
            for (double v : row)
                if (std::fabs(v) > kBreakdownGuard)
                    throw NumericalBreakdown("tableau entries exceed conditioning guard");
    }

    // Pivot basic-at-zero artificials onto structural/slack columns where
    // possible. Rows that are zero across all non-artificial columns are
    // redundant; their artificial stays basic at zero and — since artificial
    // columns never re-enter — the row stays inert through phase 2.
    void drive_out_artificials() {
        for (int i = 0; i < m_; ++i) {
            if (!is_art_[basis_[i]]) continue;
            int best = -1;
            for (int j = 0; j < art_begin_; ++j) {
                if (std::fabs(tab_[i][j]) <= kPivotTol) continue;
                if (rule_ == PivotRule::Bland) { best = j; break; }
                if (best < 0 || std::fabs(tab_[i][j]) > std::fabs(tab_[i][best])) best = j;
            }
            if (best >= 0) pivot(i, best); // degenerate pivot; zrow is rebuilt for phase 2
        }
    }

    int n_, m_, ncols_, slack_begin_, art_begin_;
    PivotRule rule_;
    std::vector<double> rscale_, cscale_; // equilibration factors
    std::vector<std::vector<double>> tab_;
    std::vector<double> zrow_;
    std::vector<int> basis_;
    std::vector<char> is_art_;
};

// Lower the declared problem to solver form. Fixed binaries are substituted
// out (column zeroed, contribution moved to rhs / objective constant);
// unfixed binaries get a z <= 1 row appended, their lower bound being the
// blanket nonnegativity. fixings[k] in {-1, 0, 1} per binaries()[k].
DenseLp lower(const MilpProblem& p, const std::vector<int>& fixings) {
    DenseLp lp;
    lp.n = p.num_vars();
    lp.obj.assign(lp.n, 0.0);
    double sense = p.sense() == Sense::Max ? 1.0 : -1.0;
    for (int j = 0; j < lp.n; ++j) lp.obj[j] = sense * p.obj_coeff(j);

    std::vector<double> fixed_value(lp.n, -1.0);
    const auto& bins = p.binaries();
    for (size_t k = 0; k < bins.size(); ++k)
        if (fixings[k] >= 0) fixed_value[bins[k]] = fixings[k];

    for (const auto& row : p.rows()) {
        std::vector<double> dense(lp.n, 0.0);
        double rhs = row.rhs;
        for (auto [v, coeff] : row.terms) {
            if (fixed_value[v] >= 0.0)
                rhs -= coeff * fixed_value[v];
            else
                dense[v] += coeff;
        }
        lp.a.push_back(std::move(dense));
        lp.rel.push_back(row.rel);
        lp.rhs.push_back(rhs);
    }
    for (size_t k = 0; k < bins.size(); ++k) {
        int v = bins[k];
        if (fixings[k] >= 0) {
            lp.obj_const += lp.obj[v] * fixings[k];
            lp.obj[v] = 0.0;
        } else {
            std::vector<double> dense(lp.n, 0.0);
            dense[v] = 1.0;
            lp.a.push_back(std::move(dense));
            lp.rel.push_back(Rel::Le);
            lp.rhs.push_back(1.0);
        }
    }
    return lp;
}

LpResult solve_dense(const DenseLp& lp) {
    LpResult r;
    try {
        r = Simplex(lp, PivotRule::Bland).solve(lp.obj);
    } catch (const NumericalBreakdown&) {
        // Bland's rule can chain pivots on small legitimate coefficients (rows
        // mixing unit-scale terms with large activation constants) until the
        // tableau degrades past the guard. Re-solve preferring large
        // non-degenerate pivots; the retry is deterministic, and a breakdown
        // there propagates as the real failure.
        r = Simplex(lp, PivotRule::GrowthAware).solve(lp.obj);
    }
    if (r.status == SolveStatus::Optimal) r.objective += lp.obj_const;
    return r;
}

MilpSolution finish(const MilpProblem& p, LpResult&& r,
                    const std::vector<int>* fixings) {
    MilpSolution sol;
    sol.status = r.status;
    if (r.status != SolveStatus::Optimal) return sol;
    sol.objective = p.sense() == Sense::Max ? r.objective : -r.objective;
    sol.assignment = std::move(r.x);
    if (fixings) {
        const auto& bins = p.binaries();
        for (size_t k = 0; k < bins.size(); ++k)
            if ((*fixings)[k] >= 0) sol.assignment[bins[k]] = (*fixings)[k];
    }
    return sol;
}

class BranchAndBound {
public:
    explicit BranchAndBound(const MilpProblem& p) : p_(p), fix_(p.binaries().size(), -1) {}

    MilpSolution run() {
        recurse(0);
        if (unbounded_) return {SolveStatus::Unbounded, 0.0, {}};
        if (!found_) return {SolveStatus::Infeasible, 0.0, {}};
        MilpSolution sol;
        sol.status = SolveStatus::Optimal;
        sol.objective = p_.sense() == Sense::Max ? best_val_ : -best_val_;
        sol.assignment = best_x_;
        return sol;
    }

private:
    void recurse(size_t depth) {
        if (unbounded_) return;
        LpResult r = solve_dense(lower(p_, fix_));
        if (r.status == SolveStatus::Infeasible) return;
        bool leaf = depth == fix_.size();
        if (r.status == SolveStatus::Unbounded) {
            if (leaf) { unbounded_ = true; return; }
            // No usable bound; fall through and branch.
        } else if (leaf) {
            if (!found_ || r.objective > best_val_ + kPruneTol) {
                found_ = true;
                best_val_ = r.objective;
                best_x_ = std::move(r.x);
                const auto& bins = p_.binaries();
                for (size_t k = 0; k < bins.size(); ++k) best_x_[bins[k]] = fix_[k];
            }
            return;
        } else if (found_ && r.objective <= best_val_ + kPruneTol) {
            return; // bound can't beat the incumbent
        }
        fix_[depth] = 0;
        recurse(depth + 1);
        fix_[depth] = 1;
        recurse(depth + 1);
        fix_[depth] = -1;
    }

    const MilpProblem& p_;
    std::vector<int> fix_;
    bool found_ = false, unbounded_ = false;
    double best_val_ = -kInf;
    std::vector<double> best_x_;
};

void write_num(std::ostream& os, double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    os.write(buf, ptr - buf);
    (void)ec;
}

} // namespace

int MilpProblem::add_var(std::string name, VarKind kind, double obj_coeff) {
    if (!std::isfinite(obj_coeff))
        throw ValidationError("non-finite objective coefficient for " + name);
    int idx = num_vars();
    names_.push_back(std::move(name));
    kinds_.push_back(kind);
    obj_.push_back(obj_coeff);
    if (kind == VarKind::Binary) binaries_.push_back(idx);
    return idx;
}

void MilpProblem::add_row(std::vector<std::pair<int, double>> terms, Rel rel, double rhs) {
    for (auto [v, coeff] : terms) {
        if (v < 0 || v >= num_vars())
            throw ValidationError("constraint references undeclared variable");
        if (!std::isfinite(coeff))
            throw ValidationError("non-finite coefficient in constraint");
    }
    if (!std::isfinite(rhs))
        throw ValidationError("non-finite right-hand side");
    rows_.push_back({std::move(terms), rel, rhs});
}

MilpSolution solve_lp(const MilpProblem& p) {
    if (!p.binaries().empty())
        throw ValidationError("solve_lp requires a purely continuous problem");
    std::vector<int> no_fixings;
    return finish(p, solve_dense(lower(p, no_fixings)), nullptr);
}

MilpSolution solve_milp(const MilpProblem& p) {
    if (p.binaries().empty()) return solve_lp(p);
    // Internally maximize; `lower` already folds the sense into the
    // objective, and `finish`/run flip the reported value back for Min.
    return BranchAndBound(p).run();
}

MilpSolution enumerate_oracle(const MilpProblem& p) {
    const auto& bins = p.binaries();
    size_t nb = bins.size();
    if (nb > 20) throw TooManyBinaries("enumerate_oracle supports at most 20 binaries");
    if (nb == 0) return solve_lp(p);

    bool found = false, unbounded = false;
    double best_val = -kInf;
    std::vector<double> best_x;
    std::vector<int> fix(nb, 0);
    for (unsigned long v = 0; v < (1ul << nb); ++v) {
        // bit (nb-1-k) drives binary k: leaves visited in the same
        // lexicographic order solve_milp uses.
        for (size_t k = 0; k < nb; ++k) fix[k] = (v >> (nb - 1 - k)) & 1ul;
        LpResult r = solve_dense(lower(p, fix));
        if (r.status == SolveStatus::Unbounded) { unbounded = true; break; }
        if (r.status != SolveStatus::Optimal) continue;
        if (!found || r.objective > best_val + kPruneTol) {
            found = true;
            best_val = r.objective;
            best_x = std::move(r.x);
            for (size_t k = 0; k < nb; ++k) best_x[bins[k]] = fix[k];
        }
    }
    if (unbounded) return {SolveStatus::Unbounded, 0.0, {}};
    if (!found) return {SolveStatus::Infeasible, 0.0, {}};
    MilpSolution sol;
    sol.status = SolveStatus::Optimal;
    sol.objective = p.sense() == Sense::Max ? best_val : -best_val;
    sol.assignment = std::move(best_x);
    return sol;
}

void dump_problem(const MilpProblem& p, std::ostream& os) {
    os << (p.sense() == Sense::Max ? "max:" : "min:");
    for (int j = 0; j < p.num_vars(); ++j) {
        if (p.obj_coeff(j) == 0.0) continue;
        os << ' ';
        write_num(os, p.obj_coeff(j));
        os << ' ' << p.var_name(j);
    }
    os << ";\n";
    int ridx = 0;
    for (const auto& row : p.rows()) {
        os << 'r' << ridx++ << ':';
        for (auto [v, coeff] : row.terms) {
            os << ' ';
            write_num(os, coeff);
            os << ' ' << p.var_name(v);
        }
        os << (row.rel == Rel::Le ? " <= " : row.rel == Rel::Ge ? " >= " : " = ");
        write_num(os, row.rhs);
        os << ";\n";
    }
    if (!p.binaries().empty()) {
        os << "binary:";
        for (size_t k = 0; k < p.binaries().size(); ++k)
            os << (k ? ", " : " ") << p.var_name(p.binaries()[k]);
        os << ";\n";
    }
}

} // namespace sbidea
