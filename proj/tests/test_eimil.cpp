#include "doctest.h"

#include <cmath>
#include <random>

#include "sbidea/dea_crisp.hpp"
#include "sbidea/eimil.hpp"
#include "sbidea/idea.hpp"
#include "test_util.hpp"

using namespace sbidea;
using testutil::make_dataset;

namespace {

Interval pt(double v) { return {v, v}; }

int index_of(const Dataset& ds, const std::string& name) {
    for (int j = 0; j < ds.n(); ++j)
        if (ds.dmus[j].name == name) return j;
    REQUIRE(false);
    return -1;
}

bool zero_pair(const SlackPair& sp) {
    return sp.sl.hi <= kFeasTol && sp.su.hi <= kFeasTol;
}

// Complementarity plus switch consistency for one coordinate.
void check_switch(const SlackPair& sp, bool z) {
    CHECK(std::min(sp.sl.hi, sp.su.hi) <= kFeasTol);
    if (sp.sl.hi > kFeasTol) CHECK(z);
    if (sp.su.hi > kFeasTol) CHECK_FALSE(z);
}

} // namespace

TEST_CASE("case-study scores and efficiency split") {
    Dataset ds = tourism_fixture();
    ModelView view(ds);

    const struct { const char* name; double ei; } pins[] = {
        {"Nisia Aigaiou, Kriti", 7.896664190},
        {"Provence-Alpes-Côte d'Azur", 2.555955490},
        {"Cyprus", 4.221018499},
    };
    int inefficient = 0;
    for (int p = 0; p < ds.n(); ++p) {
        Assessment a = assess_eimil(view, p);
        CHECK(a.dmu == ds.dmus[p].name);
        CHECK(a.EI >= 0.0);
        CHECK(a.efficient == (a.EI <= kScoreTol));
        if (!a.efficient) ++inefficient;
        double pinned = 0.0;
        for (const auto& pin : pins)
            if (a.dmu == pin.name) pinned = pin.ei;
        CHECK(std::fabs(a.EI - pinned) <= 1e-6);
    }
    CHECK(inefficient == 3);
}

TEST_CASE("slack families are complementary and agree with the switches") {
    Dataset ds = tourism_fixture();
    ModelView view(ds);
    for (int p = 0; p < ds.n(); ++p) {
        Assessment a = assess_eimil(view, p);
        REQUIRE(a.input_slacks.size() == static_cast<size_t>(view.m()));
        REQUIRE(a.output_slacks.size() == static_cast<size_t>(view.s()));
        REQUIRE(a.zx.size() == a.input_slacks.size());
        REQUIRE(a.zy.size() == a.output_slacks.size());
        for (size_t i = 0; i < a.input_slacks.size(); ++i)
            check_switch(a.input_slacks[i], a.zx[i]);
        for (size_t r = 0; r < a.output_slacks.size(); ++r)
            check_switch(a.output_slacks[r], a.zy[r]);
        if (a.efficient) {
            for (const auto& sp : a.input_slacks) CHECK(zero_pair(sp));
            for (const auto& sp : a.output_slacks) CHECK(zero_pair(sp));
        }
    }
}

TEST_CASE("case-study targets for the inefficient units") {
    Dataset ds = tourism_fixture();
    ModelView view(ds);
    // Model layout: inputs (BP, GHG), outputs (RCP, ON, FE, ME).
    struct Pin {
        const char* name;
        Interval bp, ghg, rcp, on, fe, me;
    };
    const Pin pins[] = {
        {"Nisia Aigaiou, Kriti",
         {165.0292, 175.9722}, pt(85.85), pt(4604.0943), pt(7765.65), pt(91.4640), pt(95.5837)},
        {"Provence-Alpes-Côte d'Azur",
         {588.7043, 677.0866}, pt(256.26), pt(12961.6177), pt(17113.03), pt(169.5348), pt(145.7669)},
        {"Cyprus",
         {78.1540, 90.19}, pt(41.1963), pt(3172.10), pt(4647.6328), pt(48.3507), pt(55.7567)},
    };
    for (const auto& pin : pins) {
        Assessment a = assess_eimil(view, index_of(ds, pin.name));
        CHECK(approx_equal(a.input_targets[0], pin.bp, 1e-3));
        CHECK(approx_equal(a.input_targets[1], pin.ghg, 1e-3));
        CHECK(approx_equal(a.output_targets[0], pin.rcp, 1e-3));
        CHECK(approx_equal(a.output_targets[1], pin.on, 1e-3));
        CHECK(approx_equal(a.output_targets[2], pin.fe, 1e-3));
        CHECK(approx_equal(a.output_targets[3], pin.me, 1e-3));
    }
}

TEST_CASE("targets dominate observation and efficient units self-project") {
    Dataset ds = tourism_fixture();
    ModelView view(ds);
    for (int p = 0; p < ds.n(); ++p) {
        Assessment a = assess_eimil(view, p);
        for (int i = 0; i < view.m(); ++i) {
            CHECK(a.input_targets[i].lo <= view.x(i, p).lo + 1e-7);
            CHECK(a.input_targets[i].hi <= view.x(i, p).hi + 1e-7);
            CHECK(a.input_targets[i].nonneg());
        }
        for (int r = 0; r < view.s(); ++r) {
            CHECK(a.output_targets[r].lo >= view.y(r, p).lo - 1e-7);
            CHECK(a.output_targets[r].hi >= view.y(r, p).hi - 1e-7);
        }
        if (a.efficient) {
            for (int i = 0; i < view.m(); ++i)
                CHECK(approx_equal(a.input_targets[i], view.x(i, p), 1e-6));
            for (int r = 0; r < view.s(); ++r)
                CHECK(approx_equal(a.output_targets[r], view.y(r, p), 1e-6));
        }
    }
}

TEST_CASE("appending a unit's target yields an efficient virtual unit") {
    Dataset ds = tourism_fixture();
    ModelView view(ds);
    int p = index_of(ds, "Cyprus");
    Assessment a = assess_eimil(view, p);

    Dataset extended = ds;
    DmuRecord virt;
    virt.name = "virtual";
    virt.inputs.resize(ds.m());
    virt.outputs.resize(ds.s());
    const Orientation& ori = view.orientation();
    for (int i = 0; i < view.m(); ++i) {
        const ModelVarRef& ref = ori.inputs[i];
        (ref.declared_role == Role::Input ? virt.inputs[ref.declared_slot]
                                          : virt.outputs[ref.declared_slot]) =
            a.input_targets[i];
    }
    for (int r = 0; r < view.s(); ++r)
        virt.outputs[ori.outputs[r].declared_slot] = a.output_targets[r];
    extended.dmus.push_back(virt);

    ModelView ext(extended);
    Assessment va = assess_eimil(ext, extended.n() - 1);
    CHECK(va.EI <= 1e-6);
    CHECK(va.efficient);
}

TEST_CASE("lambda stays on the unit simplex") {
    Dataset ds = tourism_fixture();
    ModelView view(ds);
    for (int p = 0; p < ds.n(); ++p) {
        Assessment a = assess_eimil(view, p);
        REQUIRE(a.lambda.size() == static_cast<size_t>(ds.n()));
        double sum = 0.0;
        for (double l : a.lambda) {
            CHECK(l >= -1e-7);
            sum += l;
        }
        CHECK(std::fabs(sum - 1.0) <= 1e-7);
    }
}

TEST_CASE("duplicated efficient unit and single-unit datasets") {
    Dataset ds = tourism_fixture();
    Dataset dup = ds;
    DmuRecord copy = ds.dmus[0];
    copy.name = "Attiki copy";
    dup.dmus.push_back(copy);
    ModelView view(dup);
    CHECK(assess_eimil(view, 0).EI <= 1e-6);
    CHECK(assess_eimil(view, dup.n() - 1).EI <= 1e-6);

    Dataset single = make_dataset(1, 1, {{"only", {Interval{2, 4}, Interval{1, 3}}}});
    ModelView sv(single);
    Assessment a = assess_eimil(sv, 0);
    CHECK(a.EI <= 1e-9);
    CHECK(a.efficient);
}

TEST_CASE("score is at least the two-phase score") {
    Dataset ds = tourism_fixture();
    ModelView view(ds);
    for (int p = 0; p < ds.n(); ++p) {
        double ei = assess_eimil(view, p).EI;
        double i1 = assess_idea(view, p).I;
        CHECK(ei >= i1 - 1e-7);
    }
}

TEST_CASE("big-M strategies agree on the score") {
    Dataset ds = tourism_fixture();
    ModelView view(ds);
    BigMConfig global;
    global.strategy = BigMConfig::Strategy::Global;
    for (int p = 0; p < ds.n(); ++p) {
        double a = assess_eimil(view, p).EI;
        double b = assess_eimil(view, p, global).EI;
        CHECK(std::fabs(a - b) <= 1e-6);

        BigMConfig expl;
        expl.strategy = BigMConfig::Strategy::Explicit;
        ResolvedBigM r = resolve_bigm(view, p, BigMConfig{});
        expl.Lx = r.Lx;
        expl.Rx = r.Rx;
        expl.Ly = r.Ly;
        expl.Ry = r.Ry;
        CHECK(std::fabs(assess_eimil(view, p, expl).EI - a) <= 1e-6);
    }
}

TEST_CASE("big-M resolution applies the documented rules") {
    Dataset ds = tourism_fixture();
    ModelView view(ds);
    int p = index_of(ds, "Attiki");

    ResolvedBigM pv = resolve_bigm(view, p, BigMConfig{});
    REQUIRE(pv.Lx.size() == 2);
    REQUIRE(pv.Ly.size() == 4);
    CHECK(pv.Lx[0] == doctest::Approx(77.41 * 2));  // BP upper endpoint
    CHECK(pv.Lx[1] == doctest::Approx(19.27 * 2));  // GHG
    // Output constants track the best observed value of each output.
    CHECK(pv.Ly[0] == doctest::Approx(29396.5 * 2));  // RCP, Veneto
    CHECK(pv.Ly[1] == doctest::Approx(20717.24 * 2)); // ON, Cataluña
    CHECK(pv.Ly[2] == doctest::Approx(257.9 * 2));    // FE, Veneto
    CHECK(pv.Ly[3] == doctest::Approx(250.9 * 2));    // ME, Veneto
    CHECK(pv.Rx == pv.Lx);
    CHECK(pv.Ry == pv.Ly);

    BigMConfig gcfg;
    gcfg.strategy = BigMConfig::Strategy::Global;
    ResolvedBigM g = resolve_bigm(view, p, gcfg);
    for (double c : g.Lx) CHECK(c == doctest::Approx(29396.5 * 2));
    for (double c : g.Ly) CHECK(c == doctest::Approx(29396.5 * 2));

    // The super variant sizes off the whole dataset with doubled headroom.
    ResolvedBigM sup = resolve_bigm_super(view, p, BigMConfig{});
    for (double c : sup.Lx) CHECK(c == doctest::Approx(29396.5 * 4));
    for (double c : sup.Ly) CHECK(c == doctest::Approx(29396.5 * 4));
}

TEST_CASE("invalid big-M configurations are rejected") {
    Dataset ds = tourism_fixture();
    ModelView view(ds);

    BigMConfig bad_safety;
    bad_safety.safety = 0.5;
    CHECK_THROWS_AS(resolve_bigm(view, 0, bad_safety), BigMResolutionError);
    CHECK_THROWS_AS(assess_eimil(view, 0, bad_safety), BigMResolutionError);

    BigMConfig short_arrays;
    short_arrays.strategy = BigMConfig::Strategy::Explicit;
    short_arrays.Lx = {100.0}; // needs two input coordinates
    short_arrays.Rx = {100.0, 100.0};
    short_arrays.Ly = short_arrays.Ry = {1e4, 1e4, 1e4, 1e4};
    CHECK_THROWS_AS(resolve_bigm(view, 0, short_arrays), BigMResolutionError);

    BigMConfig nonpositive = short_arrays;
    nonpositive.Lx = {100.0, 0.0};
    CHECK_THROWS_AS(resolve_bigm(view, 0, nonpositive), BigMResolutionError);
}

TEST_CASE("crisp reduction on random degenerate datasets") {
    std::mt19937 rng(99);
    for (int k = 0; k < 5; ++k) {
        Dataset ds = testutil::random_dataset(rng, /*degenerate=*/true);
        ModelView view(ds);
        for (int p = 0; p < ds.n(); ++p) {
            double ei = assess_eimil(view, p).EI;
            double i = assess_crisp(view, p, Rts::Vrs).score;
            CHECK(std::fabs(ei - i) <= 1e-7);
        }
    }
}

TEST_CASE("batch assessment keeps per-unit results and failures") {
    Dataset ds = tourism_fixture();
    ModelView view(ds);
    auto batch = assess_all(view);
    REQUIRE(batch.size() == 12);
    for (size_t p = 0; p < batch.size(); ++p) {
        CHECK(batch[p].error.empty());
        REQUIRE(batch[p].assessment.has_value());
        CHECK(batch[p].assessment->dmu == ds.dmus[p].name);
    }

    // A broken configuration is collected per unit instead of aborting.
    BigMConfig bad;
    bad.strategy = BigMConfig::Strategy::Explicit; // arrays left empty
    auto failed = assess_all(view, bad);
    REQUIRE(failed.size() == 12);
    for (const auto& entry : failed) {
        CHECK_FALSE(entry.assessment.has_value());
        CHECK_FALSE(entry.error.empty());
    }
}

TEST_CASE("the model builder exposes the expected shape") {
    Dataset ds = tourism_fixture();
    ModelView view(ds);
    MilpProblem p = build_peimil(view, 0, BigMConfig{});
    // 12 lambdas + 4 slack endpoints per coordinate + one switch per coordinate.
    int coords = view.m() + view.s();
    CHECK(p.num_vars() == 12 + 4 * coords + coords);
    CHECK(static_cast<int>(p.binaries().size()) == coords);
    CHECK(p.sense() == Sense::Max);
}
