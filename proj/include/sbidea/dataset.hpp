#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sbidea/interval.hpp"

namespace sbidea {

enum class Role { Input, Output, UndesirableOutput };

std::string role_name(Role r);

struct VariableSpec {
    std::string name;
    Role role = Role::Input;
    bool operator==(const VariableSpec&) const = default;
};

// One decision-making unit. `inputs` holds the declared-input columns in
// schema order; `outputs` holds declared outputs (desirable and undesirable
// alike) in schema order — the undesirable ones are remapped to the input
// side only when a model view is built.
struct DmuRecord {
    std::string name;
    std::vector<Interval> inputs;
    std::vector<Interval> outputs;
    bool operator==(const DmuRecord&) const = default;
};

struct Dataset {
    std::vector<VariableSpec> schema; // declared column order
    std::vector<DmuRecord> dmus;
    std::vector<std::string> warnings; // normalization notes, in parse order

    int n() const { return static_cast<int>(dmus.size()); }
    int m() const; // declared inputs
    int s() const; // declared outputs (including undesirable)

    bool all_degenerate() const;
    // First cell with a genuine interval, as "DMU 'x', column 'y'".
    std::optional<std::string> first_interval_cell() const;

    bool operator==(const Dataset& o) const {
        return schema == o.schema && dmus == o.dmus;
    }
};

// Parse the data and schema documents. Schema rows are `name,role` with role
// in {input, output, undesirable_output}; the data document needs a header
// `dmu,<schema names in order>`. Cells are plain numbers (degenerate) or
// `lo..hi`. Reversed endpoints are swapped with a warning; negative values,
// zero lo+hi sums, malformed cells, and header/schema disagreements throw.
Dataset parse_csv(const std::string& data_text, const std::string& schema_text);

std::string serialize_csv(const Dataset& ds);
std::string serialize_schema(const Dataset& ds);

// Where a model variable came from in the declared layout.
struct ModelVarRef {
    Role declared_role = Role::Input;
    int declared_slot = 0; // index into DmuRecord::inputs or ::outputs
    bool operator==(const ModelVarRef&) const = default;
};

// Model-facing layout: every undesirable output moved to the input side.
// Inputs list the declared inputs first, then undesirable outputs, all in
// declared order; outputs keep the declared desirable outputs.
struct Orientation {
    std::vector<ModelVarRef> inputs;
    std::vector<ModelVarRef> outputs;
    int m() const { return static_cast<int>(inputs.size()); }
    int s() const { return static_cast<int>(outputs.size()); }
};

Orientation effective_orientation(const Dataset& ds);

// Dataset + orientation bundle the assessment models consume.
class ModelView {
public:
    explicit ModelView(const Dataset& ds) : ds_(&ds), ori_(effective_orientation(ds)) {}

    const Dataset& dataset() const { return *ds_; }
    const Orientation& orientation() const { return ori_; }
    int n() const { return ds_->n(); }
    int m() const { return ori_.m(); }
    int s() const { return ori_.s(); }

    Interval x(int i, int j) const { return fetch(ori_.inputs[i], j); }
    Interval y(int r, int j) const { return fetch(ori_.outputs[r], j); }
    std::string x_name(int i) const { return var_name(ori_.inputs[i]); }
    std::string y_name(int r) const { return var_name(ori_.outputs[r]); }
    const std::string& dmu_name(int j) const { return ds_->dmus[j].name; }

private:
    Interval fetch(const ModelVarRef& ref, int j) const {
        const DmuRecord& d = ds_->dmus[j];
        return ref.declared_role == Role::Input ? d.inputs[ref.declared_slot]
                                                : d.outputs[ref.declared_slot];
    }
    std::string var_name(const ModelVarRef& ref) const;

    const Dataset* ds_;
    Orientation ori_;
};

// The twelve-region tourism case study: one interval input (BP), four
// desirable outputs (RCP, ON, FE, ME) and one undesirable output (GHG),
// endpoints already normalized.
Dataset tourism_fixture();

} // namespace sbidea
