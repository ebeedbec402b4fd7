#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "sbidea/error.hpp"

namespace sbidea {

enum class Sense { Max, Min };
enum class Rel { Le, Eq, Ge };
enum class VarKind { Continuous, Binary }; // continuous vars are nonnegative
enum class SolveStatus { Optimal, Infeasible, Unbounded };

// Linear problem over nonnegative continuous variables and 0-1 variables.
// Immutable once handed to a solver; building is not thread-safe, solving
// concurrently on distinct problems is.
class MilpProblem {
public:
    struct Row {
        std::vector<std::pair<int, double>> terms; // (variable, coefficient)
        Rel rel = Rel::Le;
        double rhs = 0.0;
    };

    explicit MilpProblem(Sense sense = Sense::Max) : sense_(sense) {}

    int add_var(std::string name, VarKind kind, double obj_coeff = 0.0);
    void add_row(std::vector<std::pair<int, double>> terms, Rel rel, double rhs);

    Sense sense() const { return sense_; }
    int num_vars() const { return static_cast<int>(kinds_.size()); }
    int num_rows() const { return static_cast<int>(rows_.size()); }
    VarKind kind(int v) const { return kinds_[v]; }
    double obj_coeff(int v) const { return obj_[v]; }
    const std::string& var_name(int v) const { return names_[v]; }
    const std::vector<Row>& rows() const { return rows_; }
    // Binary variable indices in declaration order (the branch order).
    const std::vector<int>& binaries() const { return binaries_; }

private:
    Sense sense_;
    std::vector<std::string> names_;
    std::vector<VarKind> kinds_;
    std::vector<double> obj_;
    std::vector<Row> rows_;
    std::vector<int> binaries_;
};

struct MilpSolution {
    SolveStatus status = SolveStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> assignment; // per declared variable; empty unless optimal
};

// Two-phase primal simplex with Bland's rule. Requires a purely continuous
// problem. Returns status rather than throwing for infeasible/unbounded;
// throws NumericalBreakdown if tableau entries blow past the conditioning
// guard.
MilpSolution solve_lp(const MilpProblem& p);

// Branch-and-bound over the binaries in declaration order, each branched
// 0 then 1, pruned by the LP relaxation bound. Among equally good leaves the
// first one found wins, so the reported binary assignment is the
// lexicographically smallest optimal one. Deterministic across runs.
MilpSolution solve_milp(const MilpProblem& p);

// Test oracle: solve the LP for every one of the 2^B binary fixings (in the
// same lexicographic order as solve_milp explores leaves) and keep the best.
MilpSolution enumerate_oracle(const MilpProblem& p);

// Human-readable dump (objective, rows, binaries); no format stability.
void dump_problem(const MilpProblem& p, std::ostream& os);

} // namespace sbidea
