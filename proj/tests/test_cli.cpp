#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "densecoding/io.hpp"

using densecoding::Json;

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string command = std::string(DENSECODING_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 4096> buffer;
    std::size_t n = 0;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        output.append(buffer.data(), n);
    }
    const int status = pclose(pipe);
    return RunResult{WEXITSTATUS(status), output};
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("bound command") {
    const RunResult res = run_cli("bound --d 2 --squared --lambdas 0.8,0.2");
    CHECK(res.exit_code == 0);
    const Json j = Json::parse(res.output);
    CHECK(j["approximate_bound"].get<double>() == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(j["unambiguous_bound"].get<double>() == doctest::Approx(0.4).epsilon(1e-12));

    // truncated decimals are renormalized, not rejected
    const RunResult trunc = run_cli("bound --d 2 --lambdas 0.894427,0.447214");
    CHECK(trunc.exit_code == 0);
    const Json jt = Json::parse(trunc.output);
    CHECK(jt["approximate_bound"].get<double>() == doctest::Approx(0.9).epsilon(1e-5));

    const RunResult max_ent = run_cli("bound --d 4");
    CHECK(max_ent.exit_code == 0);
    const Json jm = Json::parse(max_ent.output);
    CHECK(jm["approximate_bound"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(jm["unambiguous_bound"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));

    const RunResult product = run_cli("bound --d 2 --lambdas 1,0");
    CHECK(product.exit_code == 0);
    const Json jp = Json::parse(product.output);
    CHECK(jp["approximate_bound"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(jp["unambiguous_bound"].get<double>() == 0.0);

    const RunResult csv = run_cli("bound --d 2 --lambdas 1,0 --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.output.find("d,approximate_bound,unambiguous_bound") == 0);
}

TEST_CASE("bound command input errors give exit code 2") {
    CHECK(run_cli("bound").exit_code == 2);
    CHECK(run_cli("bound --d 2 --lambdas 0.5,-0.5").exit_code == 2);
    CHECK(run_cli("bound --no-such-flag").exit_code == 2);
    CHECK(run_cli("bound --input /nonexistent/state.json").exit_code == 2);
    CHECK(run_cli("bound --d 3 --lambdas 1,0").exit_code == 2);
}

TEST_CASE("simulate command") {
    const RunResult res = run_cli("simulate --d 2 --kind approximate");
    CHECK(res.exit_code == 0);
    const Json j = Json::parse(res.output);
    CHECK(j["summary"]["average_success_probability"].get<double>() ==
          doctest::Approx(1.0).epsilon(1e-10));
    const auto& p = j["outcome_matrix"]["p"];
    for (int r = 0; r < 4; ++r) {
        for (int s = 0; s < 4; ++s) {
            CHECK(p[r][s].get<double>() == doctest::Approx(r == s ? 1.0 : 0.0).epsilon(1e-10));
        }
    }

    const RunResult unamb = run_cli("simulate --d 2 --squared --lambdas 0.8,0.2 --kind unambiguous");
    CHECK(unamb.exit_code == 0);
    const Json ju = Json::parse(unamb.output);
    CHECK(ju["summary"]["conclusive_probability"].get<double>() ==
          doctest::Approx(0.4).epsilon(1e-12));
    CHECK(ju["summary"]["unambiguous"].get<bool>());
    CHECK(ju["outcome_matrix"]["p"][0][4].get<double>() == doctest::Approx(0.6).epsilon(1e-12));

    // degenerate unambiguous request is refused
    const RunResult refused = run_cli("simulate --d 2 --lambdas 1,0 --kind unambiguous");
    CHECK(refused.exit_code == 2);

    const RunResult csv = run_cli("simulate --d 2 --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.output.find("r,s0,s1,s2,s3") == 0);
}

TEST_CASE("verify command on built-in protocols") {
    const RunResult res = run_cli("verify --d 2 --squared --lambdas 0.8,0.2");
    CHECK(res.exit_code == 0);
    const Json j = Json::parse(res.output);
    CHECK(j["pass"].get<bool>());

    const RunResult d3 = run_cli("verify --d 3 --squared --lambdas 0.5,0.3,0.2 --kind unambiguous");
    CHECK(d3.exit_code == 0);
    const Json j3 = Json::parse(d3.output);
    bool found_c = false;
    for (const auto& check : j3["protocols"][0]["checks"]) {
        if (check["name"] == "unambiguous") {
            CHECK(check["conclusive_probability"].get<double>() ==
                  doctest::Approx(0.6).epsilon(1e-10));
            found_c = true;
        }
    }
    CHECK(found_c);

    // product state: approximate still passes, unambiguous is skipped
    const RunResult product = run_cli("verify --d 2 --lambdas 1,0");
    CHECK(product.exit_code == 0);
}

TEST_CASE("protocol round trip through emit-protocol and verify") {
    const std::string proto_path = temp_path("densecoding_cli_proto.json");
    const RunResult sim = run_cli("simulate --d 2 --squared --lambdas 0.8,0.2 --kind unambiguous "
                                  "--emit-protocol " +
                                  proto_path);
    CHECK(sim.exit_code == 0);

    const std::string verify_args =
        "verify --protocol " + proto_path + " --d 2 --squared --lambdas 0.8,0.2";
    const RunResult v1 = run_cli(verify_args);
    CHECK(v1.exit_code == 0);
    CHECK(Json::parse(v1.output)["pass"].get<bool>());

    // byte-identical on repeated runs
    const RunResult v2 = run_cli(verify_args);
    CHECK(v1.output == v2.output);

    std::remove(proto_path.c_str());
}

TEST_CASE("verify detects injected faults with exit code 1") {
    const std::string proto_path = temp_path("densecoding_cli_fault.json");
    const RunResult build = run_cli("build --d 2 --squared --lambdas 0.8,0.2 --kind approximate "
                                    "--output " +
                                    proto_path);
    CHECK(build.exit_code == 0);

    const Json proto = Json::parse(densecoding::read_text_file(proto_path));

    // scale one POVM element by 1.01
    {
        Json tampered = proto;
        for (auto& row : tampered["measurement"]["elements"][0]["re"]) {
            for (auto& entry : row) entry = entry.get<double>() * 1.01;
        }
        for (auto& row : tampered["measurement"]["elements"][0]["im"]) {
            for (auto& entry : row) entry = entry.get<double>() * 1.01;
        }
        const std::string tampered_path = temp_path("densecoding_cli_fault_povm.json");
        densecoding::write_text_file(tampered_path, tampered.dump());
        const RunResult res =
            run_cli("verify --protocol " + tampered_path + " --d 2 --squared --lambdas 0.8,0.2");
        CHECK(res.exit_code == 1);
        CHECK_FALSE(Json::parse(res.output)["pass"].get<bool>());
        std::remove(tampered_path.c_str());
    }

    // zero out one Kraus operator
    {
        Json tampered = proto;
        for (auto& row : tampered["encodings"][1]["kraus"][0]["re"]) {
            for (auto& entry : row) entry = 0.0;
        }
        for (auto& row : tampered["encodings"][1]["kraus"][0]["im"]) {
            for (auto& entry : row) entry = 0.0;
        }
        const std::string tampered_path = temp_path("densecoding_cli_fault_kraus.json");
        densecoding::write_text_file(tampered_path, tampered.dump());
        const RunResult res =
            run_cli("verify --protocol " + tampered_path + " --d 2 --squared --lambdas 0.8,0.2");
        CHECK(res.exit_code == 1);
        std::remove(tampered_path.c_str());
    }

    // unreadable protocol file is an input error
    CHECK(run_cli("verify --protocol /nonexistent/proto.json --d 2").exit_code == 2);

    // protocol dimension must match the supplied state
    CHECK(run_cli("verify --protocol " + proto_path + " --d 3").exit_code == 2);

    // missing state source for an imported protocol
    CHECK(run_cli("verify --protocol " + proto_path).exit_code == 2);

    std::remove(proto_path.c_str());
}

TEST_CASE("sweep command") {
    const RunResult res = run_cli("sweep --d 2 --steps 3 --format csv");
    CHECK(res.exit_code == 0);
    std::istringstream lines(res.output);
    std::string header;
    std::getline(lines, header);
    CHECK(header ==
          "d,lambda_sq_0,lambda_sq_1,approximate_bound,approximate_achieved,unambiguous_bound,"
          "unambiguous_achieved");
    const double expected_unamb[3] = {1.0, 0.5, 0.0};
    for (int i = 0; i < 3; ++i) {
        std::string line;
        REQUIRE(std::getline(lines, line));
        std::istringstream fields(line);
        std::string field;
        std::vector<double> values;
        std::getline(fields, field, ',');  // d column
        while (std::getline(fields, field, ',')) values.push_back(std::stod(field));
        REQUIRE(values.size() == 6);
        const double approx_bound = values[2], approx_achieved = values[3];
        const double unamb_bound = values[4], unamb_achieved = values[5];
        CHECK(unamb_bound == doctest::Approx(expected_unamb[i]).epsilon(1e-12));
        CHECK(std::abs(approx_achieved - approx_bound) < 1e-9);
        CHECK(std::abs(unamb_achieved - unamb_bound) < 1e-9);
    }

    // single-point grid at lambda_0^2 = 0.8
    const RunResult row = run_cli("sweep --d 2 --steps 1 --weight-min 0.8 --weight-max 0.8");
    CHECK(row.exit_code == 0);
    const Json j = Json::parse(row.output);
    CHECK(j["rows"][0]["approximate_bound"].get<double>() == doctest::Approx(0.9).epsilon(1e-12));

    CHECK(run_cli("sweep --d 2 --weight-min 0.2").exit_code == 2);
}

TEST_CASE("search command respects the bound and is deterministic") {
    const std::string args = "search --d 2 --squared --lambdas 0.8,0.2 --trials 300 --seed 7";
    const RunResult r1 = run_cli(args);
    CHECK(r1.exit_code == 0);
    const Json j = Json::parse(r1.output);
    CHECK(j["within_bound"].get<bool>());
    CHECK(j["best_found"].get<double>() <= 0.9 + 1e-9);
    CHECK(j["best_found"].get<double>() == doctest::Approx(0.9).epsilon(1e-9));

    const RunResult r2 = run_cli(args);
    CHECK(r1.output == r2.output);
}

TEST_CASE("montecarlo command") {
    const RunResult res = run_cli("montecarlo --d 2 --samples 2000 --seed 3");
    CHECK(res.exit_code == 0);
    const Json j = Json::parse(res.output);
    // identity outcome matrix: estimate 1, zero spread
    CHECK(j["estimate"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(j["std_error"].get<double>() <= 1e-12);
    CHECK(j["consistent"].get<bool>());

    const std::string args =
        "montecarlo --d 2 --squared --lambdas 0.7,0.3 --kind unambiguous --samples 5000 --seed 9";
    const RunResult r1 = run_cli(args);
    const RunResult r2 = run_cli(args);
    CHECK(r1.exit_code == 0);
    CHECK(r1.output == r2.output);
}
