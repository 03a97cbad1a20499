#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ga/io.hpp"
#include "ga/verify.hpp"

using namespace ga;

namespace {

const char* doc_text = R"({
  "dim": 4,
  "a_frame": [[0.31622776601683794, 0, 0.9486832980505138, 0],
              [0, 0.8944271909999159, 0, 0.4472135954999579]],
  "b_frame": [[1, 0, 0, 0], [0, 1, 0, 0]],
  "a_scale": 1.0,
  "b_scale": 1.0,
  "options": {"eps_structural": 1e-10, "eps_identity": 1e-9, "seed": 7}
})";

std::string write_temp(const std::string& name, const std::string& text) {
    const std::string path = std::string("/tmp/") + name;
    std::ofstream out(path);
    out << text;
    return path;
}

struct CommandResult {
    int exit_code;
    std::string output;
};

CommandResult run_cli(const std::string& args) {
    const std::string out_path = "/tmp/blade_angles_test_out.txt";
    const std::string cmd = std::string(BLADE_ANGLES_CLI_PATH) + " " + args +
                            " > " + out_path + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return {WEXITSTATUS(status), buf.str()};
}

} // namespace

TEST_CASE("input document parsing") {
    SUBCASE("well-formed JSON") {
        const InputDocument doc = parse_input_json(doc_text);
        CHECK(doc.dim == 4);
        CHECK(doc.a_frame.size() == 2);
        CHECK(doc.seed == 7);
        const PreparedInput in = prepare_input(doc);
        CHECK(in.a.grade() == 2);
        CHECK(in.a.norm() == doctest::Approx(1.0));
    }
    SUBCASE("mismatched vector length") {
        CHECK_THROWS_AS(
            parse_input_json(
                R"({"dim": 3, "a_frame": [[1, 0]], "b_frame": [[0, 1, 0]]})"),
            parse_error);
    }
    SUBCASE("missing fields") {
        CHECK_THROWS_AS(parse_input_json(R"({"dim": 3})"), parse_error);
        CHECK_THROWS_AS(parse_input_json("not json at all"), parse_error);
    }
    SUBCASE("rank-deficient frames surface as rank errors") {
        const InputDocument doc = parse_input_json(
            R"({"dim": 3, "a_frame": [[1, 0, 0], [2, 0, 0]],
                "b_frame": [[0, 1, 0]]})");
        CHECK_THROWS_AS(prepare_input(doc), rank_error);
    }
    SUBCASE("CSV mode infers the dimension") {
        const InputDocument doc =
            parse_input_csv("1, 0, 0\n0, 1, 0\n", "0, 0, 1\n");
        CHECK(doc.dim == 3);
        CHECK(doc.a_frame.size() == 2);
        CHECK(doc.b_frame.size() == 1);
        CHECK_THROWS_AS(parse_input_csv("1, 0\n0, 1, 0\n", "1, 0\n"),
                        parse_error);
    }
}

TEST_CASE("json writer formatting") {
    JsonWriter w;
    w.begin_object();
    w.key("x");
    w.value(1.0 / 3.0);
    w.key("list");
    w.begin_array();
    w.value(1);
    w.value(true);
    w.value(std::string("a\"b"));
    w.end_array();
    w.end_object();
    CHECK(w.str() ==
          "{\"x\":0.33333333333333331,\"list\":[1,true,\"a\\\"b\"]}");
}

TEST_CASE("report round trip and determinism") {
    const InputDocument doc = parse_input_json(doc_text);
    Report report;
    report.input = doc;
    const PreparedInput in = prepare_input(doc);
    report.angles = oriented_angles(in.a, in.b, doc.tol);
    report.principal = principal_data(in.a, in.b, doc.tol);

    const std::string once = render_report_json(report);
    const std::string twice = render_report_json(report);
    CHECK(once == twice);

    // the echoed input section re-parses to an equivalent document
    const std::string echoed =
        nlohmann::json::parse(once)["input"].dump();
    const InputDocument round = parse_input_json(echoed);
    CHECK(round.dim == doc.dim);
    CHECK(round.a_scale == doc.a_scale);
    CHECK(round.seed == doc.seed);
    REQUIRE(round.a_frame.size() == doc.a_frame.size());
    for (std::size_t i = 0; i < doc.a_frame.size(); ++i) {
        for (std::size_t j = 0; j < doc.a_frame[i].size(); ++j) {
            CHECK(round.a_frame[i][j] == doc.a_frame[i][j]);
        }
    }
}

TEST_CASE("verification driver") {
    VerifyOptions options;
    options.seed = 42;
    options.trials = 10;
    options.nmax = 5;
    const VerifySummary summary = run_verification(options);
    CHECK(summary.all_passed);
    CHECK(summary.lines.size() > 20);

    // determinism of the formatted output
    const VerifySummary again = run_verification(options);
    CHECK(format_verify_text(summary) == format_verify_text(again));

    // the fault hook must surface as a failure with a digest
    options.inject_fault = true;
    const VerifySummary faulty = run_verification(options);
    CHECK_FALSE(faulty.all_passed);
    bool found = false;
    for (const auto& line : faulty.lines) {
        if (line.failures > 0) {
            found = true;
            CHECK(line.first_failure_digest.find("seed=42") !=
                  std::string::npos);
        }
    }
    CHECK(found);
}

TEST_CASE("command line interface") {
    const std::string doc_path = write_temp("blade_angles_doc.json", doc_text);

    SUBCASE("angles command") {
        const CommandResult r = run_cli("angles --input " + doc_path);
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("asymmetric") != std::string::npos);
    }
    SUBCASE("json output is byte-identical across runs") {
        const CommandResult r1 =
            run_cli("product --input " + doc_path + " --json");
        const CommandResult r2 =
            run_cli("product --input " + doc_path + " --json");
        CHECK(r1.exit_code == 0);
        CHECK(r1.output == r2.output);
        CHECK(r1.output.find("plucker") != std::string::npos);
    }
    SUBCASE("geodesic endpoints") {
        const CommandResult r =
            run_cli("geodesic --input " + doc_path + " --steps 3 --json");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("\"t\":0.5") != std::string::npos);
        CHECK(run_cli("geodesic --input " + doc_path + " --steps 1").exit_code ==
              2);
    }
    SUBCASE("identical subspaces give a constant geodesic") {
        const std::string same = write_temp(
            "blade_angles_same.json",
            R"({"dim": 3, "a_frame": [[1, 0, 0], [0, 1, 0]],
                "b_frame": [[1, 0, 0], [0, 1, 0]]})");
        const CommandResult r =
            run_cli("geodesic --input " + same + " --steps 3 --json");
        CHECK(r.exit_code == 0);
        const nlohmann::json j = nlohmann::json::parse(r.output);
        REQUIRE(j["geodesic"].size() == 3);
        const auto first = j["geodesic"][0]["frame"];
        for (const auto& step : j["geodesic"]) {
            CHECK(step["frame"] == first);
        }
    }
    SUBCASE("hitzer recovery") {
        const CommandResult r = run_cli("hitzer --input " + doc_path + " --json");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("recovery") != std::string::npos);
    }
    SUBCASE("parse failures exit with 2") {
        const std::string bad = write_temp("blade_angles_bad.json", "{oops");
        CHECK(run_cli("angles --input " + bad).exit_code == 2);
        CHECK(run_cli("angles --input /tmp/definitely_missing.json").exit_code ==
              2);
        CHECK(run_cli("nonsense-subcommand").exit_code == 2);
        CHECK(run_cli("verify --trials 0").exit_code == 2);
    }
    SUBCASE("rank failures exit with 3") {
        const std::string bad_rank = write_temp(
            "blade_angles_rank.json",
            R"({"dim": 3, "a_frame": [[1, 0, 0], [2, 0, 0]],
                "b_frame": [[0, 1, 0]]})");
        CHECK(run_cli("angles --input " + bad_rank).exit_code == 3);
    }
    SUBCASE("verify is deterministic and honors the fault hook") {
        const CommandResult r1 = run_cli("verify --seed 42 --trials 5 --nmax 5");
        CHECK(r1.exit_code == 0);
        const CommandResult r2 = run_cli("verify --seed 42 --trials 5 --nmax 5");
        CHECK(r1.output == r2.output);

        const std::string cmd =
            std::string("BLADE_ANGLES_FAULT=1 ") + BLADE_ANGLES_CLI_PATH +
            " verify --seed 42 --trials 5 --nmax 5 > /tmp/fault_out.txt 2>&1";
        const int status = std::system(cmd.c_str());
        CHECK(WEXITSTATUS(status) == 1);
        std::ifstream in("/tmp/fault_out.txt");
        std::ostringstream buf;
        buf << in.rdbuf();
        CHECK(buf.str().find("digest=") != std::string::npos);
    }
    SUBCASE("csv input") {
        const std::string a_csv =
            write_temp("blade_a.csv", "1, 0, 0\n0, 1, 0\n");
        const std::string b_csv = write_temp("blade_b.csv", "0, 0, 1\n");
        const CommandResult r =
            run_cli("angles --csv " + a_csv + " " + b_csv);
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("1.5708") != std::string::npos);
    }
}
