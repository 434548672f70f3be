#pragma once

#include <string>

#include "densecoding/protocol.hpp"

// vendored single-header nlohmann/json
#include "json.hpp"

namespace densecoding {

// Insertion-ordered JSON so that serialized output is byte-stable.
using Json = nlohmann::ordered_json;

/// {"d": int, "lambdas": [real]}
Json spectrum_to_json(const SchmidtSpectrum& spec);
SchmidtSpectrum spectrum_from_json(const Json& j);

/// {"d": int, "amplitudes_re": [real], "amplitudes_im": [real]}
Json state_to_json(const BipartiteState& psi);
BipartiteState state_from_json(const Json& j);

/// Reads a state file in either schema. An amplitude-form state is reduced
/// to its Schmidt coefficients; the toolkit works in the Schmidt basis.
SchmidtSpectrum load_spectrum_file(const std::string& path);

/// {"re": [[...]], "im": [[...]]} with row-major nested arrays.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

Json protocol_to_json(const DenseCodingProtocol& proto);
DenseCodingProtocol protocol_from_json(const Json& j);
DenseCodingProtocol load_protocol_file(const std::string& path);

Json outcome_to_json(const OutcomeMatrix& om);
std::string outcome_to_csv(const OutcomeMatrix& om);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Full-precision decimal rendering (17 significant digits).
std::string format_full(double value);

}  // namespace densecoding
