#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "densecoding/io.hpp"
#include "test_util.hpp"

using namespace densecoding;

namespace {

struct TempFile {
    explicit TempFile(const std::string& name)
        : path((std::filesystem::temp_directory_path() / name).string()) {}
    ~TempFile() { std::remove(path.c_str()); }
    std::string path;
};

}  // namespace

TEST_CASE("spectrum JSON round trip") {
    const SchmidtSpectrum spec =
        SchmidtSpectrum::from_squared((RVector(3) << 0.5, 0.3, 0.2).finished());
    const Json j = spectrum_to_json(spec);
    CHECK(j["d"] == 3);
    const SchmidtSpectrum back = spectrum_from_json(j);
    CHECK((back.lambdas - spec.lambdas).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("state JSON round trip") {
    const BipartiteState psi =
        state_from_spectrum(SchmidtSpectrum::from_squared((RVector(2) << 0.8, 0.2).finished()));
    const BipartiteState back = state_from_json(state_to_json(psi));
    CHECK((back.amplitudes - psi.amplitudes).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("load_spectrum_file accepts both schemas") {
    TempFile lam("densecoding_test_spec.json");
    write_text_file(lam.path, R"({"d": 2, "lambdas": [0.89442719099991586, 0.44721359549995793]})");
    const SchmidtSpectrum s1 = load_spectrum_file(lam.path);
    CHECK(s1.lambdas(0) == doctest::Approx(std::sqrt(0.8)).epsilon(1e-14));

    TempFile amp("densecoding_test_state.json");
    // |+>|+> product state given as amplitudes; Schmidt spectrum is (1, 0)
    write_text_file(amp.path,
                    R"({"d": 2, "amplitudes_re": [0.5, 0.5, 0.5, 0.5], "amplitudes_im": [0, 0, 0, 0]})");
    const SchmidtSpectrum s2 = load_spectrum_file(amp.path);
    CHECK(s2.lambdas(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(s2.lambdas(1)) < 1e-12);
}

TEST_CASE("load_spectrum_file error paths") {
    CHECK_THROWS_AS(load_spectrum_file("/nonexistent/file.json"), std::runtime_error);

    TempFile bad("densecoding_test_bad.json");
    write_text_file(bad.path, "{ not json");
    CHECK_THROWS_AS(load_spectrum_file(bad.path), std::runtime_error);

    TempFile wrong("densecoding_test_wrong.json");
    write_text_file(wrong.path, R"({"d": 2})");
    CHECK_THROWS_WITH_AS(load_spectrum_file(wrong.path), doctest::Contains("lambdas"),
                         std::runtime_error);

    TempFile invalid("densecoding_test_invalid.json");
    write_text_file(invalid.path, R"({"d": 2, "lambdas": [0.9, 0.1]})");
    CHECK_THROWS_AS(load_spectrum_file(invalid.path), std::runtime_error);
}

TEST_CASE("matrix JSON round trip preserves entries") {
    std::mt19937_64 gen(8);
    const CMatrix m = testutil::random_cmatrix(3, 2, gen);
    const CMatrix back = matrix_from_json(matrix_to_json(m));
    CHECK(testutil::max_diff(back, m) == 0.0);

    CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"re": [[1]]})")), std::runtime_error);
    CHECK_THROWS_AS(matrix_from_json(Json::parse(R"({"re": [[1],[2,3]], "im": [[0],[0,0]]})")),
                    std::runtime_error);
}

TEST_CASE("protocol JSON round trip is exact") {
    const SchmidtSpectrum spec =
        SchmidtSpectrum::from_squared((RVector(2) << 0.8, 0.2).finished());
    const DenseCodingProtocol proto = build_unambiguous_protocol(spec);
    const Json j = protocol_to_json(proto);
    const DenseCodingProtocol back = protocol_from_json(j);

    CHECK(back.d == proto.d);
    CHECK(back.measurement.has_inconclusive);
    CHECK(back.measurement.labels == proto.measurement.labels);
    for (std::size_t r = 0; r < proto.encodings.size(); ++r) {
        CHECK(testutil::max_diff(back.encodings[r].kraus[0], proto.encodings[r].kraus[0]) == 0.0);
    }
    for (std::size_t s = 0; s < proto.measurement.elements.size(); ++s) {
        CHECK(testutil::max_diff(back.measurement.elements[s], proto.measurement.elements[s]) ==
              0.0);
    }

    // serialization is byte-stable
    CHECK(protocol_to_json(back).dump(2) == j.dump(2));
}

TEST_CASE("outcome matrix serialization") {
    const OutcomeMatrix om(2, RMatrix::Identity(4, 4), false);
    const Json j = outcome_to_json(om);
    CHECK(j["p"].size() == 4);
    CHECK(j["has_inconclusive"] == false);

    const std::string csv = outcome_to_csv(om);
    CHECK(csv.find("r,s0,s1,s2,s3\n") == 0);
    CHECK(csv.find("1,0,1,0,0") != std::string::npos);
}

TEST_CASE("format_full gives 17 significant digits") {
    CHECK(format_full(0.1) == "0.10000000000000001");
    CHECK(format_full(1.0) == "1");
}
