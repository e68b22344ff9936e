#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qcas/cli.hpp"
#include "qcas/defparse.hpp"
#include "qcas/presets.hpp"
#include "qcas/tableio.hpp"

using namespace qcas;

namespace {

std::string parse_error_of(const std::string& text) {
    try {
        parse_definition(text);
        return "";
    } catch (const QcasError& e) {
        return std::string(e.what());
    }
}

struct TempFile {
    std::string path;
    TempFile(const std::string& name, const std::string& content)
        : path("/tmp/qcas_unit_" + name) {
        std::ofstream f(path);
        f << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

int run(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

}  // namespace

TEST_CASE("definition_round_trip_on_every_preset") {
    for (const auto& info : preset_catalog()) {
        std::map<std::string, long long> params;
        if (info.name == "Pn") params = {{"n", 3}};
        if (info.name == "Sym2P2") params = {{"int_h4", 3}, {"int_c2", 6}};
        Bundle b = get_preset(info.name, params);
        std::string text = print_definition(b, preset_doc(info.name));
        INFO(info.name);
        Bundle back = parse_definition(text).bundle;
        CHECK(back.alg.name == b.alg.name);
        CHECK(back.alg.n == b.alg.n);
        CHECK(back.alg.basis.size() == b.alg.basis.size());
        CHECK(back.alg.products == b.alg.products);
        CHECK(back.alg.integrals == b.alg.integrals);
        CHECK(back.cone.ineqs == b.cone.ineqs);
        CHECK(back.cone.rays == b.cone.rays);
        CHECK(back.K.has_value() == b.K.has_value());
        if (b.K) CHECK(back.K->coords == b.K->coords);
        // a second round trip is textually stable
        CHECK(print_definition(back, preset_doc(info.name)) == text);
    }
}

TEST_CASE("printed_plane_definition_is_exact") {
    CHECK(print_definition(get_preset("P2")) ==
          "algebra P2 dimension 2\n"
          "basis 1:0 h:1 h2:2\n"
          "product h * h = h2\n"
          "integral h2 = 1\n"
          "cone ineq (1)\n"
          "canonical (-3)\n");
}

TEST_CASE("fractional_structure_constants_survive_printing") {
    std::string text = print_definition(get_preset("G25"));
    CHECK(text.find("product t3 * t3 = t6 - 11/3 t7") != std::string::npos);
    CHECK(text.find("product t1 * t5 = 1/3 t7") != std::string::npos);
    CHECK(text.find("product t3 * t7 = 15 t9") != std::string::npos);
}

TEST_CASE("parse_errors_carry_positions") {
    CHECK(parse_error_of("algebra X dimension 2\nbasis 1:0 h:1 h2:2\n"
                         "product h * hh = h2\nintegral h2 = 1\ncone ineq (1)\n") ==
          "line 3, column 13: unknown basis label 'hh'");
    CHECK(parse_error_of("algebra X dimension 2\nbasis 1:0 h:1 h2:2\n"
                         "integral h2 = 1\ncone ineq (1)\n") ==
          "missing product 'h * h' (codimension sum within the socle bound)");
    CHECK(parse_error_of("algebra X dimension 2\nbasis 1:0 h:1 h2:2\n"
                         "product h * h = h2\nproduct h * h = h2\n"
                         "integral h2 = 1\ncone ineq (1)\n") ==
          "line 4, column 9: product 'h * h' is listed twice (symmetric closure is automatic)");
    CHECK(parse_error_of("algebra X dimension 2\nbasis 1:0 h:1 h2:2\n"
                         "product h * h = h2\nintegral h2 = 1\n"
                         "cone ineq (1)\ncone ray (1)\n") ==
          "cone mixes ray and ineq items; use one presentation");
    CHECK(parse_error_of("algebra X dimension 2\nbasis 1:0 h:1 h2:2\n"
                         "product h * h = 1/0 h2\nintegral h2 = 1\ncone ineq (1)\n") ==
          "line 3, column 19: zero denominator");
    CHECK(parse_error_of("algebra X dimension 2\nbasis 1:0 h:1 h2:2\n"
                         "product h * h = h2\nproduct h * h2 = 0\n"
                         "integral h2 = 1\ncone ineq (1)\n") ==
          "line 4, column 9: product exceeds the socle codimension and is implicitly zero");
    CHECK(parse_error_of("algebra X dimension 2\nbasis 1:0 h:1 h2:2\n"
                         "product 1 * h = h\nproduct h * h = h2\n"
                         "integral h2 = 1\ncone ineq (1)\n") ==
          "line 3, column 9: products with the identity are implicit; do not list them");
    CHECK(parse_error_of("algebra dimension 2\n") ==
          "line 1, column 9: expected an algebra name, got 'dimension'");
}

TEST_CASE("comments_and_whitespace_are_cosmetic") {
    std::string plain = print_definition(get_preset("toric-ex2"));
    std::string noisy = "# heading remark\n\n  algebra   toric_ex2   dimension 3\n"
                        "basis 1:0 D1:1   D2:1 D1D2:2 D2D2:2 D1D2D2:3 # inline remark\n"
                        "product D1 * D1 = 2 D1D2\nproduct D1 * D2 = D1D2\n"
                        "product D1 * D1D2 = 2 D1D2D2\nproduct D1 * D2D2 = D1D2D2\n"
                        "product D2 * D2 = D2D2\nproduct D2 * D1D2 = D1D2D2\n"
                        "product D2 * D2D2 = 0\n\nintegral D1D2D2 = 1\n"
                        "cone ray (1, 0)\ncone ray ( 0 , 1 )\ncanonical (-2,-1)\n";
    Bundle a = parse_definition(plain).bundle;
    Bundle b = parse_definition(noisy).bundle;
    CHECK(a.alg.products == b.alg.products);
    CHECK(a.cone.rays == b.cone.rays);
    CHECK(a.K->coords == b.K->coords);
}

TEST_CASE("table_json_shape_is_frozen") {
    Bundle b = get_preset("P2");
    TableFile tf;
    tf.algebra = "P2";
    tf.table.values[NVar{{1}, {2}}] = Rat(1);
    tf.table.values[NVar{{2}, {5}}] = Rat(1);
    tf.table.pins.insert(NVar{{1}, {2}});
    tf.table.status = "complete";
    std::string js = table_to_json(tf, b.cone);
    CHECK(js ==
          "{\"algebra\":\"P2\",\"entries\":[{\"beta\":[1],\"d\":[2],\"value\":\"1\"},"
          "{\"beta\":[2],\"d\":[5],\"value\":\"1\"}],\"free\":[],"
          "\"pins\":[{\"beta\":[1],\"d\":[2]}],\"status\":\"complete\"}");
    TableFile back = table_from_json(js);
    CHECK(back.algebra == tf.algebra);
    CHECK(back.table.values == tf.table.values);
    CHECK(back.table.pins == tf.table.pins);
    CHECK(back.table.status == tf.table.status);

    std::string csv = table_to_csv(tf, b.cone);
    CHECK(csv == "beta;d;value\n1;2;1\n2;5;1\n");
    TableFile csv_back = table_from_csv(csv);
    CHECK(csv_back.table.values == tf.table.values);

    // import sniffs the format from the first meaningful byte
    CHECK(import_table(js).table.values == tf.table.values);
    CHECK(import_table(csv).table.values == tf.table.values);
}

TEST_CASE("duplicate_table_entries_are_rejected") {
    std::string js = "{\"algebra\":\"P2\",\"entries\":["
                     "{\"beta\":[1],\"d\":[2],\"value\":\"1\"},"
                     "{\"beta\":[1],\"d\":[2],\"value\":\"2\"}]}";
    CHECK_THROWS_AS(table_from_json(js), QcasError);
}

TEST_CASE("table_entry_validation_against_the_geometry") {
    Bundle b = get_preset("P2");
    SolutionTable t;
    t.values[NVar{{1}, {2}}] = Rat(1);
    CHECK_NOTHROW(validate_table_entries(b, t));

    SolutionTable wrong_rank;
    wrong_rank.values[NVar{{1, 0}, {2}}] = Rat(1);
    CHECK_THROWS_AS(validate_table_entries(b, wrong_rank), QcasError);

    SolutionTable outside;
    outside.values[NVar{{-1}, {2}}] = Rat(1);
    CHECK_THROWS_AS(validate_table_entries(b, outside), QcasError);

    SolutionTable inadmissible;
    inadmissible.values[NVar{{1}, {1}}] = Rat(1);
    CHECK_THROWS_AS(validate_table_entries(b, inadmissible), QcasError);
}

TEST_CASE("multi_coordinate_vectors_round_trip_through_csv") {
    Bundle b = get_preset("toric-ex2");
    TableFile tf;
    tf.algebra = "toric_ex2";
    tf.table.values[NVar{{1, 0}, {0, 0, 1}}] = Rat(1);
    tf.table.values[NVar{{1, 1}, {0, 1, 1}}] = Rat(-1, 3);
    std::string csv = table_to_csv(tf, b.cone);
    CHECK(csv == "beta;d;value\n1,0;0,0,1;1\n1,1;0,1,1;-1/3\n");
    CHECK(table_from_csv(csv).table.values == tf.table.values);
}

TEST_CASE("cli_solve_verify_export_pipeline") {
    std::string def = print_definition(get_preset("P2"));
    TempFile f("p2.qc", def);
    std::string table_path = "/tmp/qcas_unit_p2_table.json";

    std::string out, err;
    int code = run({"solve", f.path, "--bound", "4", "--pin", "N(1;2)=1", "--out", table_path},
                   &out, &err);
    CHECK(code == 0);
    CHECK(out.find("status: complete") != std::string::npos);
    CHECK(err.empty());

    code = run({"verify", f.path, "--table", table_path, "--bound", "4"}, &out, &err);
    CHECK(code == 0);
    CHECK(out.find("OK") != std::string::npos);

    // corrupt one value and watch verification name the relation
    {
        std::ifstream in(table_path);
        std::stringstream ss;
        ss << in.rdbuf();
        std::string js = ss.str();
        auto pos = js.find("\"value\":\"12\"");
        REQUIRE(pos != std::string::npos);
        js.replace(pos, 12, "\"value\":\"13\"");
        std::ofstream o(table_path);
        o << js;
    }
    code = run({"verify", f.path, "--table", table_path, "--bound", "4"}, &out, &err);
    CHECK(code == 2);
    CHECK(out.find("FAIL") != std::string::npos);
    std::remove(table_path.c_str());
}

TEST_CASE("cli_error_category_exit_codes") {
    std::string out, err;
    CHECK(run({"count"}, &out, &err) == 64);  // missing required --rank
    CHECK(err.find("error (usage)") != std::string::npos);

    TempFile bad("bad.qc", "algebra X dimension\n");
    CHECK(run({"validate", bad.path}, &out, &err) == 65);
    CHECK(err.find("error (parse)") != std::string::npos);

    // structurally fine but fails ring validation: integral vanishes on the socle
    TempFile nonassoc("na.qc",
                      "algebra X dimension 2\nbasis 1:0 h:1 h2:2\n"
                      "product h * h = 0\nintegral h2 = 1\ncone ineq (1)\n");
    CHECK(run({"validate", nonassoc.path}, &out, &err) == 66);

    TempFile good("good.qc", print_definition(get_preset("P2")));
    CHECK(run({"validate", good.path}, &out, &err) == 0);
    CHECK(out.find("algebra P2") != std::string::npos);

    // halted solve exits 1
    CHECK(run({"solve", good.path, "--bound", "3", "--pin", "N(1;2)=1", "--pin", "N(2;5)=7",
               "--policy", "pins"},
              &out, &err) == 1);
    CHECK(out.find("halted-inconsistent") != std::string::npos);
    CHECK(out.find("minimal core") != std::string::npos);
}

TEST_CASE("cli_relations_listing") {
    TempFile f("rel.qc", print_definition(get_preset("P2")));
    std::string out, err;
    int code = run({"relations", f.path, "--beta", "2"}, &out, &err);
    CHECK(code == 0);
    CHECK(out.find("<h,h,h2,h2>(2;2): N(2;5) - N(1;2)*N(1;2)") != std::string::npos);
}

TEST_CASE("cli_identities_suite_runs_exactly") {
    TempFile f("id.qc", print_definition(get_preset("toric-ex2")));
    std::string out, err;
    int code = run({"identities", f.path, "--samples", "5", "--seed-rng", "7"}, &out, &err);
    CHECK(code == 0);
    CHECK(out.find("two-of-three: 5/5") != std::string::npos);
    CHECK(out.find("three-symbols: 5/5") != std::string::npos);
    CHECK(out.find("m-diagonal: 5/5") != std::string::npos);
    CHECK(out.find("five-symbols linear cancellation: 5/5") != std::string::npos);
}
