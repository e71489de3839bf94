#include "treepara/error.hpp"
#include "treepara/pipeline.hpp"

#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef TREEPARA_CLI_PATH
#error "TREEPARA_CLI_PATH must point at the treepara executable"
#endif
#ifndef TREEPARA_TEST_TMP
#error "TREEPARA_TEST_TMP must name a scratch directory"
#endif

using namespace treepara;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::path(TREEPARA_TEST_TMP) / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Runs the CLI, discarding its output, and returns the exit status.
int run_cli(const std::string& args, const fs::path& log) {
    const std::string cmd = std::string("\"") + TREEPARA_CLI_PATH + "\" " + args + " > \"" +
                            log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    if (status == -1 || !WIFEXITED(status)) return -1;
    return WEXITSTATUS(status);
}

const char* kGoldenSignal = "id,value\n0,1\n1,3\n2,2\n3,6\n";

}  // namespace

TEST_CASE("signal and matrix CSV") {
    std::istringstream in("value,id\n6,3\n1,0\n3,1\n2,2\n");
    const auto f = read_signal_csv(in);
    CHECK(f == std::vector<double>{1, 3, 2, 6});

    std::ostringstream out;
    write_signal_csv(out, std::vector<double>{0.1, -1.0 / 3.0});
    CHECK(out.str() == "id,value\n0,0.10000000000000001\n1,-0.33333333333333331\n");
    std::istringstream back(out.str());
    CHECK(read_signal_csv(back) == std::vector<double>{0.1, -1.0 / 3.0});

    std::istringstream no_value("id,amount\n0,1\n");
    CHECK_THROWS_AS(read_signal_csv(no_value), Error);
    std::istringstream dup("id,value\n0,1\n0,2\n");
    CHECK_THROWS_AS(read_signal_csv(dup), Error);

    Signal2D m(2, 3, std::vector<double>{1, 2, 3, 4, 5, 6.5});
    std::ostringstream mo;
    write_matrix_csv(mo, m);
    CHECK(mo.str() == "id,0,1,2\n0,1,2,3\n1,4,5,6.5\n");
    std::istringstream mi(mo.str());
    const auto m2 = read_matrix_csv(mi);
    CHECK(m2.rows() == 2);
    CHECK(m2.cols() == 3);
    CHECK(max_abs_diff(m, m2) == 0.0);
    std::istringstream bad_cols("id,0,2\n0,1,2\n");
    CHECK_THROWS_AS(read_matrix_csv(bad_cols), Error);
    std::istringstream ragged("id,0,1\n0,1\n");
    CHECK_THROWS_AS(read_matrix_csv(ragged), Error);
}

TEST_CASE("config documents") {
    const auto dir = scratch("config");
    write_file(dir / "s.csv", kGoldenSignal);

    PipelineConfig c;
    apply_config_json(c,
                      {{"signal", "s.csv"},
                       {"alpha", 0.25},
                       {"tree", "spec:trees/t.json"},
                       {"measure", "counting"},
                       {"include_coarse", true},
                       {"quad_order", 12},
                       {"thresholds", {{"gain_factor", 0.5}}},
                       {"min_fit_scale", 2}},
                      dir);
    CHECK(*c.signal == dir / "s.csv");
    CHECK(c.alpha == 0.25);
    CHECK(c.tree == "spec:" + (dir / "trees/t.json").string());
    CHECK(c.measure == MeasureMode::counting);
    CHECK(c.include_coarse);
    CHECK(c.quad_order == 12);
    CHECK(c.thresholds.gain_factor == 0.5);
    CHECK(c.thresholds.slope_margin == 0.2);
    CHECK(c.decay.min_fit_scale == 2);

    PipelineConfig d;
    CHECK_THROWS_AS(apply_config_json(d, {{"alhpa", 0.3}}), Error);
    CHECK_THROWS_AS(apply_config_json(d, {{"n", -3}}), Error);
    CHECK_THROWS_AS(apply_config_json(d, {{"alpha", "big"}}), Error);
    CHECK_THROWS_AS(apply_config_json(d, {{"thresholds", {{"speed", 1}}}}), Error);

    SUBCASE("validation") {
        PipelineConfig v;
        v.alpha = 0.5;
        CHECK_THROWS_AS(validate_config(v), Error);
        v.alpha = 0.2;
        CHECK_NOTHROW(validate_config(v));
        v.signal = dir / "missing.csv";
        CHECK_THROWS_AS(validate_config(v), Error);
        v.signal = dir / "s.csv";
        v.matrix = dir / "s.csv";
        CHECK_THROWS_AS(validate_config(v), Error);
        v.matrix.reset();
        v.tree = "random";
        CHECK_THROWS_AS(validate_config(v), Error);
        v.tree = "dyadic";
        v.family = Family::alpha;
        CHECK_THROWS_AS(validate_config(v), Error);
    }
}

TEST_CASE("pipeline commands in process") {
    const auto dir = scratch("inproc");
    write_file(dir / "s.csv", kGoldenSignal);
    PipelineConfig c;
    c.signal = dir / "s.csv";
    c.measure = MeasureMode::counting;
    c.out = dir / "out";
    const auto r = run_command("transform", c);
    CHECK(r.exit_code == 0);
    REQUIRE(r.files.size() == 2);
    const auto csv = read_file(dir / "out" / "coefficients.csv");
    CHECK(csv.find("d,0,,1,1,,,-2\n") != std::string::npos);
    CHECK_THROWS_AS(run_command("plot", c), Error);
    CHECK(command_names().size() == 6);
}

TEST_CASE("command line") {
    const auto dir = scratch("cli");
    const auto log = dir / "log.txt";
    const auto q = [](const fs::path& p) { return "\"" + p.string() + "\""; };
    write_file(dir / "s.csv", kGoldenSignal);

    SUBCASE("tree") {
        CHECK(run_cli("tree --n 8 --out " + q(dir / "t"), log) == 0);
        const auto spec = nlohmann::json::parse(read_file(dir / "t" / "tree.json"));
        CHECK(spec["levels"].size() == 4);
        CHECK(spec["n"] == 8);
        CHECK(nlohmann::json::parse(read_file(dir / "t" / "validation.json"))["ok"] == true);
        CHECK(run_cli("tree --n 6 --out " + q(dir / "t6"), log) == 2);
    }

    SUBCASE("overlapping spec") {
        const nlohmann::json bad = {
            {"n", 4},
            {"levels",
             {{{{"k", 0}, {"elements", {0, 1, 2, 3}}, {"children", {0, 1}}}},
              {{{"k", 0}, {"elements", {0, 1, 2}}, {"children", {0, 1}}},
               {{"k", 1}, {"elements", {2, 3}}, {"children", {2, 3}}}},
              {{{"k", 0}, {"elements", {0}}, {"children", nlohmann::json::array()}},
               {{"k", 1}, {"elements", {1}}, {"children", nlohmann::json::array()}},
               {{"k", 2}, {"elements", {2}}, {"children", nlohmann::json::array()}},
               {{"k", 3}, {"elements", {3}}, {"children", nlohmann::json::array()}}}}}};
        write_file(dir / "bad.json", bad.dump());
        CHECK(run_cli("tree --tree spec:" + q(dir / "bad.json") + " --out " + q(dir / "b"), log) == 2);
        CHECK(read_file(log).find("disjointness") != std::string::npos);
        const auto report = nlohmann::json::parse(read_file(dir / "b" / "validation.json"));
        CHECK(report["ok"] == false);
    }

    SUBCASE("cluster tree needs coordinates") {
        CHECK(run_cli("tree --tree cluster --n 4 --out " + q(dir / "c"), log) == 2);
        CHECK(read_file(log).find("MissingCoordinates") != std::string::npos);
        write_file(dir / "ids.csv", "id\n0\n1\n2\n3\n");
        CHECK(run_cli("tree --tree cluster --points " + q(dir / "ids.csv") + " --out " + q(dir / "c"), log) == 2);
        CHECK(read_file(log).find("MissingCoordinates") != std::string::npos);
        write_file(dir / "pts.csv", "id,x0\n0,0\n1,1\n2,10\n3,11\n");
        CHECK(run_cli("tree --tree cluster --points " + q(dir / "pts.csv") + " --out " + q(dir / "c"), log) == 0);
    }

    SUBCASE("transform") {
        CHECK(run_cli("transform --signal " + q(dir / "s.csv") + " --measure counting --out " + q(dir / "x"), log) == 0);
        const auto csv = read_file(dir / "x" / "coefficients.csv");
        CHECK(csv.find(",-2\n") != std::string::npos);
        CHECK(csv.find(",-1.414213562373095") != std::string::npos);
        CHECK(csv.find(",-2.828427124746190") != std::string::npos);
        CHECK(read_file(dir / "x" / "decay.csv").rfind("scale,l,s,max_abs", 0) == 0);

        write_file(dir / "flat.csv", "id,value\n0,2.5\n1,2.5\n2,2.5\n3,2.5\n4,2.5\n5,2.5\n6,2.5\n7,2.5\n");
        CHECK(run_cli("transform --signal " + q(dir / "flat.csv") + " --out " + q(dir / "z"), log) == 0);
        std::istringstream lines(read_file(dir / "z" / "coefficients.csv"));
        std::string line;
        std::getline(lines, line);
        std::size_t rows = 0;
        while (std::getline(lines, line)) {
            CHECK(std::abs(std::stod(line.substr(line.rfind(',') + 1))) < 1e-12);
            ++rows;
        }
        CHECK(rows == 7);

        write_file(dir / "novalue.csv", "id,v\n0,1\n1,2\n");
        CHECK(run_cli("transform --signal " + q(dir / "novalue.csv") + " --out " + q(dir / "y"), log) == 2);
        CHECK(read_file(log).find("SchemaError") != std::string::npos);
    }

    SUBCASE("para and verify with the identity") {
        CHECK(run_cli("para --signal " + q(dir / "s.csv") + " --nonlinearity identity --out " + q(dir / "p"), log) == 0);
        const auto manifest = nlohmann::json::parse(read_file(dir / "p" / "manifest.json"));
        CHECK(manifest["residual"]["constant"] == true);
        CHECK(manifest["residual"]["max"].get<double>() == doctest::Approx(3.0));
        CHECK(run_cli("verify --n 256 --nonlinearity identity --out " + q(dir / "v"), log) == 0);
        CHECK(nlohmann::json::parse(read_file(dir / "v" / "gain_report.json"))["pass"] == true);
    }

    SUBCASE("C1-only nonlinearity on a matrix") {
        CHECK(run_cli("synth --dims 2 --n 8 --out " + q(dir / "m"), log) == 0);
        CHECK(run_cli("para --matrix " + q(dir / "m" / "matrix.csv") + " --nonlinearity abs_pow_1_5 --out " +
                          q(dir / "n"),
                      log) == 2);
        CHECK(read_file(log).find("NotC2") != std::string::npos);
    }

    SUBCASE("usage errors") {
        CHECK(run_cli("verify --alpha 0.5 --out " + q(dir / "u"), log) == 2);
        CHECK(run_cli("", log) == 2);
        CHECK(run_cli("para --signal " + q(dir / "absent.csv"), log) == 2);
        CHECK(run_cli("para --threads many", log) == 2);
    }

    SUBCASE("config file with flag override") {
        write_file(dir / "cfg.json", nlohmann::json{{"signal", "s.csv"},
                                                    {"nonlinearity", "square"},
                                                    {"out", "cfg_out"}}
                                         .dump());
        CHECK(run_cli("para --config " + q(dir / "cfg.json"), log) == 0);
        CHECK(nlohmann::json::parse(read_file(dir / "cfg_out" / "manifest.json"))["nonlinearity"] == "square");
        CHECK(run_cli("para --config " + q(dir / "cfg.json") + " --nonlinearity sin", log) == 0);
        CHECK(nlohmann::json::parse(read_file(dir / "cfg_out" / "manifest.json"))["nonlinearity"] == "sin");
    }

    SUBCASE("byte-identical reruns") {
        for (const auto* name : {"r1", "r2"}) {
            CHECK(run_cli("synth --n 128 --seed 9 --alpha 0.35 --out " + q(dir / name), log) == 0);
            CHECK(run_cli("verify --signal " + q(dir / name / "signal.csv") + " --out " + q(dir / name) +
                              " --threads 3",
                          log) <= 1);
            CHECK(run_cli("para --signal " + q(dir / name / "signal.csv") + " --out " + q(dir / name), log) == 0);
        }
        for (const auto* file : {"signal.csv", "gain_report.json", "residual.csv", "manifest.json"}) {
            const auto a = read_file(dir / "r1" / file);
            CHECK(!a.empty());
            CHECK(a == read_file(dir / "r2" / file));
        }
    }
}
