#include "doctest.h"

#include <cmath>

#include "sbidea/dea_crisp.hpp"
#include "test_util.hpp"

using namespace sbidea;
using testutil::make_dataset;
using testutil::midpoints;

namespace {

Interval pt(double v) { return {v, v}; }

int index_of(const Dataset& ds, const std::string& name) {
    for (int j = 0; j < ds.n(); ++j)
        if (ds.dmus[j].name == name) return j;
    REQUIRE(false);
    return -1;
}

} // namespace

TEST_CASE("two-unit frontier under variable returns to scale") {
    Dataset ds = make_dataset(1, 1, {{"A", {pt(1), pt(1)}}, {"B", {pt(2), pt(1)}}});
    ModelView view(ds);

    CrispAssessment a = assess_crisp(view, 0, Rts::Vrs);
    CHECK(a.score == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(a.lambda[0] == doctest::Approx(1.0));

    CrispAssessment b = assess_crisp(view, 1, Rts::Vrs);
    CHECK(b.score == doctest::Approx(0.5)); // one unit of input excess over x=2
    CHECK(b.input_slacks[0] == doctest::Approx(1.0));
    CHECK(b.output_slacks[0] == doctest::Approx(0.0));
    CHECK(b.lambda[0] == doctest::Approx(1.0));
    CHECK(b.lambda[1] == doctest::Approx(0.0));

    CrispAssessment sa = assess_crisp_super(view, 0, Rts::Vrs);
    CHECK(sa.score == doctest::Approx(1.0)); // must stretch to x=2 to be covered
    CHECK(sa.lambda[0] == 0.0);
    CHECK(sa.lambda[1] == doctest::Approx(1.0));
}

TEST_CASE("constant returns to scale lets the frontier rescale") {
    Dataset ds = make_dataset(1, 1, {{"A", {pt(1), pt(1)}}, {"B", {pt(2), pt(1)}}});
    ModelView view(ds);
    // Scaling A by 2 dominates B at equal input with double the output.
    CrispAssessment b = assess_crisp(view, 1, Rts::Crs);
    CHECK(b.score == doctest::Approx(1.0));
    CHECK(b.rts == Rts::Crs);
}

TEST_CASE("identical twins are efficient with zero super score") {
    Dataset ds = make_dataset(1, 1, {{"A", {pt(3), pt(2)}}, {"B", {pt(3), pt(2)}}});
    ModelView view(ds);
    for (int p = 0; p < 2; ++p) {
        CHECK(assess_crisp(view, p, Rts::Vrs).score == doctest::Approx(0.0));
        CHECK(assess_crisp_super(view, p, Rts::Vrs).score ==
              doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("a duplicated efficient unit stays efficient") {
    Dataset ds = make_dataset(1, 1, {{"A", {pt(1), pt(1)}},
                                     {"A2", {pt(1), pt(1)}},
                                     {"B", {pt(2), pt(1)}}});
    ModelView view(ds);
    CHECK(assess_crisp(view, 0, Rts::Vrs).score == doctest::Approx(0.0));
    CHECK(assess_crisp(view, 1, Rts::Vrs).score == doctest::Approx(0.0));
}

TEST_CASE("single-unit dataset is efficient and rejects super assessment") {
    Dataset ds = make_dataset(1, 1, {{"A", {pt(5), pt(7)}}});
    ModelView view(ds);
    CHECK(assess_crisp(view, 0, Rts::Vrs).score == doctest::Approx(0.0));
    CHECK_THROWS_AS(assess_crisp_super(view, 0, Rts::Vrs), ValidationError);
}

TEST_CASE("super assessment requires an efficient unit") {
    Dataset ds = make_dataset(1, 1, {{"A", {pt(1), pt(1)}}, {"B", {pt(2), pt(1)}}});
    ModelView view(ds);
    CHECK_THROWS_AS(assess_crisp_super(view, 1, Rts::Vrs), NotEfficient);
}

TEST_CASE("interval data is rejected with the first offending cell") {
    Dataset ds = tourism_fixture();
    ModelView view(ds);
    CHECK_THROWS_WITH_AS(assess_crisp(view, 0, Rts::Vrs),
                         "crisp model requires degenerate data; first interval at "
                         "DMU 'Attiki', column 'BP'",
                         NonDegenerateData);
}

TEST_CASE("midpoint case-study scores") {
    Dataset ds = midpoints(tourism_fixture());
    ModelView view(ds);

    CHECK(assess_crisp(view, index_of(ds, "Cyprus"), Rts::Vrs).score ==
          doctest::Approx(5.946519327).epsilon(1e-8));
    CHECK(assess_crisp(view, index_of(ds, "Malta"), Rts::Vrs).score ==
          doctest::Approx(0.0).epsilon(1e-9));

    CHECK(assess_crisp_super(view, index_of(ds, "Attiki"), Rts::Vrs).score ==
          doctest::Approx(4.042825632).epsilon(1e-8));
    CHECK(assess_crisp_super(view, index_of(ds, "Cataluña"), Rts::Vrs).score ==
          doctest::Approx(0.688489880).epsilon(1e-8));
    CHECK(assess_crisp_super(view, index_of(ds, "Comunitat Valenciana"), Rts::Vrs).score ==
          doctest::Approx(0.170513663).epsilon(1e-8));
    CHECK(assess_crisp_super(view, index_of(ds, "Sicilia"), Rts::Vrs).score ==
          doctest::Approx(0.002582441).epsilon(1e-8));
}

TEST_CASE("scores are nonnegative and the frontier is nonempty") {
    Dataset ds = midpoints(tourism_fixture());
    ModelView view(ds);
    int zero_count = 0;
    for (int p = 0; p < ds.n(); ++p) {
        CrispAssessment a = assess_crisp(view, p, Rts::Vrs);
        CHECK(a.score >= 0.0);
        if (a.score <= 1e-9) ++zero_count;
        double lam_sum = 0.0;
        for (double l : a.lambda) {
            CHECK(l >= -1e-7);
            lam_sum += l;
        }
        CHECK(lam_sum == doctest::Approx(1.0).epsilon(1e-7));
    }
    CHECK(zero_count >= 1);
}

TEST_CASE("rescaling a column leaves scores unchanged") {
    Dataset base = midpoints(tourism_fixture());
    Dataset scaled = base;
    for (auto& d : scaled.dmus) {
        d.inputs[0] = scale(3.0, d.inputs[0]);    // BP in another currency
        d.outputs[3] = scale(0.25, d.outputs[3]); // ME in another unit
    }
    ModelView vb(base), vs(scaled);
    for (int p = 0; p < base.n(); ++p) {
        double sb = assess_crisp(vb, p, Rts::Vrs).score;
        double ss = assess_crisp(vs, p, Rts::Vrs).score;
        CHECK(std::fabs(sb - ss) <= 1e-7);
    }
}
