#include "sbidea/dataset.hpp"

#include "numfmt.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

namespace sbidea {

namespace {

std::vector<std::vector<std::string>> parse_records(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false, field_open = false, at_line_start = true;
    size_t i = 0, n = text.size();

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_open = false;
    };
    auto end_record = [&] {
        if (field_open || !record.empty()) {
            end_field();
            if (!(record.size() == 1 && record[0].empty()))
                records.push_back(record);
            record.clear();
        }
        at_line_start = true;
    };

    while (i < n) {
        char c = text[i];
        if (at_line_start && !in_quotes && c == '#') { // comment line
            while (i < n && text[i] != '\n') ++i;
            ++i;
            continue;
        }
        at_line_start = false;
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < n && text[i + 1] == '"') { field += '"'; i += 2; continue; }
                in_quotes = false;
                ++i;
                continue;
            }
            field += c;
            ++i;
            continue;
        }
        switch (c) {
        case '"': in_quotes = true; field_open = true; ++i; break;
        case ',': end_field(); field_open = true; ++i; break;
        case '\r':
            if (i + 1 < n && text[i + 1] == '\n') ++i;
            [[fallthrough]];
        case '\n': end_record(); ++i; break;
        default: field += c; field_open = true; ++i; break;
        }
    }
    end_record();
    if (in_quotes) throw MalformedCell("unterminated quoted field");
    return records;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& raw, const std::string& context) {
    std::string s = trim(raw);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        throw MalformedCell(context + ": cannot parse '" + raw + "'");
    return v;
}

void validate(const Dataset& ds) {
    if (ds.dmus.empty()) throw SchemaMismatch("dataset has no DMU rows");
    std::set<std::string> names;
    for (const auto& v : ds.schema)
        if (!names.insert(v.name).second)
            throw SchemaMismatch("duplicate variable name '" + v.name + "'");
    effective_orientation(ds); // checks the role-resolved shape
    for (const auto& d : ds.dmus) {
        auto check = [&](const Interval& iv, const std::string& col) {
            std::string cell = "DMU '" + d.name + "', column '" + col + "'";
            if (iv.lo < 0.0) throw NegativeValue(cell + ": negative value");
            if (iv.lo + iv.hi <= 0.0)
                throw ZeroDenominator(cell + ": lo + hi must be positive");
        };
        int ii = 0, oo = 0;
        for (const auto& v : ds.schema) {
            if (v.role == Role::Input) check(d.inputs[ii++], v.name);
            else check(d.outputs[oo++], v.name);
        }
    }
}

} // namespace

std::string role_name(Role r) {
    switch (r) {
    case Role::Input: return "input";
    case Role::Output: return "output";
    case Role::UndesirableOutput: return "undesirable_output";
    }
    return "?";
}

int Dataset::m() const {
    return static_cast<int>(std::count_if(schema.begin(), schema.end(),
        [](const VariableSpec& v) { return v.role == Role::Input; }));
}

int Dataset::s() const { return static_cast<int>(schema.size()) - m(); }

bool Dataset::all_degenerate() const {
    for (const auto& d : dmus) {
        for (const auto& iv : d.inputs) if (!iv.degenerate()) return false;
        for (const auto& iv : d.outputs) if (!iv.degenerate()) return false;
    }
    return true;
}

std::optional<std::string> Dataset::first_interval_cell() const {
    for (const auto& d : dmus) {
        int ii = 0, oo = 0;
        for (const auto& v : schema) {
            const Interval& iv = v.role == Role::Input ? d.inputs[ii++] : d.outputs[oo++];
            if (!iv.degenerate())
                return "DMU '" + d.name + "', column '" + v.name + "'";
        }
    }
    return std::nullopt;
}

Dataset parse_csv(const std::string& data_text, const std::string& schema_text) {
    Dataset ds;

    auto schema_records = parse_records(schema_text);
    for (const auto& rec : schema_records) {
        if (rec.size() != 2)
            throw SchemaMismatch("schema rows must be 'name,role'");
        std::string name = trim(rec[0]), role = trim(rec[1]);
        if (name == "name" && role == "role") continue; // optional header
        if (role == "input") ds.schema.push_back({name, Role::Input});
        else if (role == "output") ds.schema.push_back({name, Role::Output});
        else if (role == "undesirable_output")
            ds.schema.push_back({name, Role::UndesirableOutput});
        else
            throw SchemaMismatch("unknown role '" + role + "' for variable '" + name + "'");
    }
    if (ds.schema.empty()) throw SchemaMismatch("schema declares no variables");

    auto records = parse_records(data_text);
    if (records.empty()) throw SchemaMismatch("data document is empty");
    const auto& header = records[0];
    if (header.empty() || trim(header[0]) != "dmu")
        throw SchemaMismatch("data header must start with 'dmu'");
    if (header.size() != ds.schema.size() + 1)
        throw SchemaMismatch("data header has " + std::to_string(header.size() - 1) +
                             " variable columns, schema declares " +
                             std::to_string(ds.schema.size()));
    for (size_t k = 0; k < ds.schema.size(); ++k)
        if (trim(header[k + 1]) != ds.schema[k].name)
            throw SchemaMismatch("header column '" + trim(header[k + 1]) +
                                 "' does not match schema variable '" +
                                 ds.schema[k].name + "'");

    for (size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.size() != header.size())
            throw SchemaMismatch("row " + std::to_string(r + 1) + " has " +
                                 std::to_string(rec.size()) + " fields, expected " +
                                 std::to_string(header.size()));
        DmuRecord d;
        d.name = rec[0];
        for (size_t k = 0; k < ds.schema.size(); ++k) {
            const std::string& cell = rec[k + 1];
            std::string context = "DMU '" + d.name + "', column '" + ds.schema[k].name + "'";
            double lo, hi;
            size_t dots = cell.find("..");
            if (dots == std::string::npos) {
                lo = hi = parse_number(cell, context);
            } else {
                lo = parse_number(cell.substr(0, dots), context);
                hi = parse_number(cell.substr(dots + 2), context);
            }
            if (lo < 0.0 || hi < 0.0) throw NegativeValue(context + ": negative value");
            if (lo > hi) {
                std::swap(lo, hi);
                ds.warnings.push_back(context + ": interval endpoints reversed, normalized to [" +
                                      num_to_string(lo) + ", " + num_to_string(hi) + "]");
            }
            Interval iv{lo, hi};
            if (ds.schema[k].role == Role::Input) d.inputs.push_back(iv);
            else d.outputs.push_back(iv);
        }
        ds.dmus.push_back(std::move(d));
    }
    validate(ds);
    return ds;
}

std::string serialize_csv(const Dataset& ds) {
    std::string out = "dmu";
    for (const auto& v : ds.schema) out += "," + csv_quote(v.name);
    out += '\n';
    for (const auto& d : ds.dmus) {
        out += csv_quote(d.name);
        int ii = 0, oo = 0;
        for (const auto& v : ds.schema) {
            const Interval& iv = v.role == Role::Input ? d.inputs[ii++] : d.outputs[oo++];
            out += ',';
            out += iv.degenerate() ? num_to_string(iv.lo)
                                   : num_to_string(iv.lo) + ".." + num_to_string(iv.hi);
        }
        out += '\n';
    }
    return out;
}

std::string serialize_schema(const Dataset& ds) {
    std::string out = "name,role\n";
    for (const auto& v : ds.schema)
        out += csv_quote(v.name) + "," + role_name(v.role) + "\n";
    return out;
}

Orientation effective_orientation(const Dataset& ds) {
    Orientation ori;
    int ii = 0, oo = 0;
    std::vector<ModelVarRef> undesirable;
    for (const auto& v : ds.schema) {
        switch (v.role) {
        case Role::Input: ori.inputs.push_back({Role::Input, ii++}); break;
        case Role::Output: ori.outputs.push_back({Role::Output, oo++}); break;
        case Role::UndesirableOutput:
            undesirable.push_back({Role::UndesirableOutput, oo++});
            break;
        }
    }
    ori.inputs.insert(ori.inputs.end(), undesirable.begin(), undesirable.end());
    bool had_outputs = (oo > 0);
    if (ori.outputs.empty())
        throw had_outputs
            ? NoOutputsRemaining("all outputs are undesirable; none remain on the output side")
            : NoOutputsRemaining("schema declares no outputs");
    if (ori.inputs.empty())
        throw SchemaMismatch("schema declares no inputs (and no undesirable outputs)");
    return ori;
}

std::string ModelView::var_name(const ModelVarRef& ref) const {
    int ii = 0, oo = 0;
    for (const auto& v : ds_->schema) {
        if (v.role == Role::Input) {
            if (ref.declared_role == Role::Input && ii == ref.declared_slot) return v.name;
            ++ii;
        } else {
            if (ref.declared_role != Role::Input && oo == ref.declared_slot) return v.name;
            ++oo;
        }
    }
    return "?";
}

Dataset tourism_fixture() {
    auto iv = [](double lo, double hi) { return Interval{lo, hi}; };
    auto cr = [](double v) { return Interval{v, v}; };
    Dataset ds;
    ds.schema = {{"BP", Role::Input},
                 {"RCP", Role::Output},
                 {"ON", Role::Output},
                 {"FE", Role::Output},
                 {"ME", Role::Output},
                 {"GHG", Role::UndesirableOutput}};
    auto row = [&](std::string name, Interval bp, double rcp, double on, double fe,
                   double me, double ghg) {
        ds.dmus.push_back({std::move(name), {bp}, {cr(rcp), cr(on), cr(fe), cr(me), cr(ghg)}});
    };
    row("Attiki", iv(62.9, 77.41), 2591.8, 4973.99, 53.0, 61.3, 19.27);
    row("Nisia Aigaiou, Kriti", iv(187.6, 242.71), 3600.9, 7765.65, 18.5, 21.4, 85.85);
    row("Cataluña", iv(607.78, 791.73), 21318.8, 20717.24, 249.8, 215.8, 387.72);
    row("Comunitat Valenciana", iv(393.11, 399.66), 9553.1, 15830.79, 146.5, 126.6, 221.67);
    row("Illes Balears", iv(443.02, 467.73), 14843.4, 8439.95, 78.5, 67.9, 222.78);
    row("Provence-Alpes-Côte d'Azur", iv(616.56, 677.73), 11779.4, 17113.03, 68.3, 74.7, 256.26);
    row("Jadranska Hrvatska", iv(1080.96, 1170.85), 2808.9, 12219.19, 45.4, 34.9, 44.34);
    row("Veneto", cr(794.25), 29396.5, 6858.77, 257.9, 250.9, 504.59);
    row("Campania", cr(225.17), 4662.9, 4878.87, 190.5, 228.5, 156.91);
    row("Sicilia", cr(210.92), 3294.4, 5802.64, 149.7, 179.6, 127.94);
    row("Cyprus", cr(90.19), 3172.1, 4241.27, 19.6, 18.3, 90.5);
    row("Malta", iv(48.10, 52.67), 2149.4, 3212.46, 6.8, 12.7, 65.08);
    return ds;
}

} // namespace sbidea
