#include "doctest.h"

#include <fstream>
#include <sstream>
#include <string>

#include "sbidea/dataset.hpp"

using namespace sbidea;

namespace {

const std::string kSchema = "name,role\nx,input\ny,output\n";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("plain and interval cells parse into the declared layout") {
    Dataset ds = parse_csv("dmu,x,y\nA,1,2\nB,0.5..1.5,3\n", kSchema);
    REQUIRE(ds.n() == 2);
    CHECK(ds.m() == 1);
    CHECK(ds.s() == 1);
    CHECK(ds.dmus[0].name == "A");
    CHECK(ds.dmus[0].inputs[0] == Interval{1.0, 1.0});
    CHECK(ds.dmus[0].outputs[0] == Interval{2.0, 2.0});
    CHECK(ds.dmus[1].inputs[0] == Interval{0.5, 1.5});
    CHECK_FALSE(ds.all_degenerate());
    REQUIRE(ds.first_interval_cell().has_value());
    CHECK(*ds.first_interval_cell() == "DMU 'B', column 'x'");
    CHECK(ds.warnings.empty());
}

TEST_CASE("reversed endpoints are normalized with a warning naming the cell") {
    Dataset ds = parse_csv("dmu,x,y\nA,1.5..0.5,3\n", kSchema);
    CHECK(ds.dmus[0].inputs[0] == Interval{0.5, 1.5});
    REQUIRE(ds.warnings.size() == 1);
    CHECK(ds.warnings[0].find("DMU 'A', column 'x'") != std::string::npos);
    CHECK(ds.warnings[0].find("reversed") != std::string::npos);
}

TEST_CASE("quoted names, embedded quotes, comments, and blank lines") {
    std::string text =
        "# leading comment\n"
        "dmu,x,y\n"
        "\n"
        "\"Foo, Bar\",1,2\n"
        "\"He said \"\"hi\"\"\",2,3\r\n";
    Dataset ds = parse_csv(text, kSchema);
    REQUIRE(ds.n() == 2);
    CHECK(ds.dmus[0].name == "Foo, Bar");
    CHECK(ds.dmus[1].name == "He said \"hi\"");
}

TEST_CASE("cells tolerate surrounding spaces") {
    Dataset ds = parse_csv("dmu,x,y\nA, 1 , 2..4 \n", kSchema);
    CHECK(ds.dmus[0].inputs[0] == Interval{1.0, 1.0});
    CHECK(ds.dmus[0].outputs[0] == Interval{2.0, 4.0});
}

TEST_CASE("serialization round-trips the dataset") {
    Dataset ds = parse_csv("dmu,x,y\n\"A, prime\",1.5..0.5,3\nB,2,4.25\n", kSchema);
    Dataset again = parse_csv(serialize_csv(ds), serialize_schema(ds));
    CHECK(again == ds);
    // Round-tripping the case-study fixture covers commas and accents.
    Dataset fx = tourism_fixture();
    CHECK(parse_csv(serialize_csv(fx), serialize_schema(fx)) == fx);
}

TEST_CASE("malformed input is rejected with the offending context") {
    CHECK_THROWS_AS(parse_csv("dmu,x,y\nA,abc,3\n", kSchema), MalformedCell);
    CHECK_THROWS_AS(parse_csv("dmu,x,y\nA,1..,3\n", kSchema), MalformedCell);
    CHECK_THROWS_AS(parse_csv("dmu,x,y\nA,,3\n", kSchema), MalformedCell);
    CHECK_THROWS_AS(parse_csv("dmu,x,y\n\"A,1,3\n", kSchema), MalformedCell);
    CHECK_THROWS_WITH_AS(parse_csv("dmu,x,y\nA,-1,3\n", kSchema),
                         "DMU 'A', column 'x': negative value", NegativeValue);
    CHECK_THROWS_AS(parse_csv("dmu,x,y\nA,0,3\n", kSchema), ZeroDenominator);
    CHECK_THROWS_AS(parse_csv("dmu,x,y\nA,0..0,3\n", kSchema), ZeroDenominator);
}

TEST_CASE("header and schema disagreements are rejected") {
    CHECK_THROWS_AS(parse_csv("dmu,z,y\nA,1,2\n", kSchema), SchemaMismatch);
    CHECK_THROWS_AS(parse_csv("unit,x,y\nA,1,2\n", kSchema), SchemaMismatch);
    CHECK_THROWS_AS(parse_csv("dmu,x\nA,1\n", kSchema), SchemaMismatch);
    CHECK_THROWS_AS(parse_csv("dmu,x,y\nA,1\n", kSchema), SchemaMismatch);
    CHECK_THROWS_AS(parse_csv("dmu,x,y\nA,1,2,3\n", kSchema), SchemaMismatch);
    CHECK_THROWS_AS(parse_csv("dmu,x,y\n", kSchema), SchemaMismatch);
    CHECK_THROWS_AS(parse_csv("", kSchema), SchemaMismatch);
    CHECK_THROWS_AS(parse_csv("dmu,x,y\nA,1,2\n", ""), SchemaMismatch);
    CHECK_THROWS_AS(parse_csv("dmu,x,y\nA,1,2\n", "name,role\nx,input\ny,widget\n"),
                    SchemaMismatch);
    CHECK_THROWS_AS(parse_csv("dmu,x,x\nA,1,2\n", "name,role\nx,input\nx,output\n"),
                    SchemaMismatch);
    CHECK_THROWS_AS(parse_csv("dmu,x,y\nA,1,2\n", "name,role\nx,input\ny\n"),
                    SchemaMismatch);
}

TEST_CASE("role resolution requires outputs and inputs on the model side") {
    CHECK_THROWS_AS(parse_csv("dmu,x\nA,1\n", "name,role\nx,input\n"),
                    NoOutputsRemaining);
    CHECK_THROWS_AS(parse_csv("dmu,x,g\nA,1,2\n",
                              "name,role\nx,input\ng,undesirable_output\n"),
                    NoOutputsRemaining);
    CHECK_THROWS_AS(parse_csv("dmu,y\nA,1\n", "name,role\ny,output\n"),
                    SchemaMismatch);
    // Undesirable outputs alone can populate the input side.
    Dataset ds = parse_csv("dmu,g,y\nA,1,2\n",
                           "name,role\ng,undesirable_output\ny,output\n");
    CHECK(ds.m() == 0);
    CHECK(effective_orientation(ds).m() == 1);
}

TEST_CASE("undesirable outputs are remapped to the model input side in order") {
    Dataset ds = parse_csv(
        "dmu,x1,g1,y1,g2\nA,1,2,3,4\nB,5,6,7,8\n",
        "name,role\nx1,input\ng1,undesirable_output\ny1,output\ng2,undesirable_output\n");
    Orientation ori = effective_orientation(ds);
    REQUIRE(ori.m() == 3);
    REQUIRE(ori.s() == 1);
    CHECK(ori.m() + ori.s() == ds.m() + ds.s());
    CHECK(ori.inputs[0] == ModelVarRef{Role::Input, 0});
    CHECK(ori.inputs[1] == ModelVarRef{Role::UndesirableOutput, 0});
    CHECK(ori.inputs[2] == ModelVarRef{Role::UndesirableOutput, 2});
    CHECK(ori.outputs[0] == ModelVarRef{Role::Output, 1});

    ModelView view(ds);
    CHECK(view.x(0, 1) == Interval{5.0, 5.0});
    CHECK(view.x(1, 1) == Interval{6.0, 6.0});
    CHECK(view.x(2, 1) == Interval{8.0, 8.0});
    CHECK(view.y(0, 1) == Interval{7.0, 7.0});
    CHECK(view.x_name(1) == "g1");
    CHECK(view.y_name(0) == "y1");
    CHECK(view.dmu_name(0) == "A");
}

TEST_CASE("the case-study fixture matches its shipped files") {
    Dataset fx = tourism_fixture();
    REQUIRE(fx.n() == 12);
    CHECK(fx.m() == 1);
    CHECK(fx.s() == 5);
    CHECK(fx.dmus[0].name == "Attiki");
    CHECK(fx.dmus[0].outputs[0] == Interval{2591.8, 2591.8});  // RCP
    CHECK(fx.dmus[0].outputs[4] == Interval{19.27, 19.27});    // GHG
    CHECK(fx.dmus[4].name == "Illes Balears");
    CHECK(fx.dmus[4].inputs[0] == Interval{443.02, 467.73});

    std::string dir = SBIDEA_DATA_DIR;
    Dataset parsed = parse_csv(read_file(dir + "/tourism.csv"),
                               read_file(dir + "/tourism.schema.csv"));
    CHECK(parsed == fx);
    // The three reversed budget cells are normalized with warnings.
    CHECK(parsed.warnings.size() == 3);
    CHECK(parsed.all_degenerate() == false);

    Orientation ori = effective_orientation(fx);
    CHECK(ori.m() == 2); // BP plus the undesirable GHG
    CHECK(ori.s() == 4);
}
