#include "densecoding/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace densecoding {

namespace {

RVector real_vector_from_json(const Json& j, const std::string& field) {
    if (!j.is_array()) throw std::runtime_error("field '" + field + "' must be an array");
    RVector v(j.size());
    Eigen::Index i = 0;
    for (const auto& entry : j) {
        if (!entry.is_number()) {
            throw std::runtime_error("field '" + field + "' must contain numbers only");
        }
        v(i++) = entry.get<double>();
    }
    return v;
}

Json real_vector_to_json(const RVector& v) {
    Json j = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v(i));
    return j;
}

const Json& require_field(const Json& j, const std::string& field) {
    const auto it = j.find(field);
    if (it == j.end()) throw std::runtime_error("missing field '" + field + "'");
    return *it;
}

}  // namespace

Json spectrum_to_json(const SchmidtSpectrum& spec) {
    Json j;
    j["d"] = spec.d();
    j["lambdas"] = real_vector_to_json(spec.lambdas);
    return j;
}

SchmidtSpectrum spectrum_from_json(const Json& j) {
    const int d = require_field(j, "d").get<int>();
    RVector lambdas = real_vector_from_json(require_field(j, "lambdas"), "lambdas");
    if (lambdas.size() != d) {
        throw std::runtime_error("field 'lambdas' must hold exactly d entries");
    }
    return SchmidtSpectrum(std::move(lambdas));
}

Json state_to_json(const BipartiteState& psi) {
    Json j;
    j["d"] = psi.d;
    j["amplitudes_re"] = real_vector_to_json(psi.amplitudes.real());
    j["amplitudes_im"] = real_vector_to_json(psi.amplitudes.imag());
    return j;
}

BipartiteState state_from_json(const Json& j) {
    const int d = require_field(j, "d").get<int>();
    const RVector re = real_vector_from_json(require_field(j, "amplitudes_re"), "amplitudes_re");
    const RVector im = real_vector_from_json(require_field(j, "amplitudes_im"), "amplitudes_im");
    if (re.size() != im.size()) {
        throw std::runtime_error("amplitude arrays must have equal length");
    }
    CVector amp(re.size());
    amp.real() = re;
    amp.imag() = im;
    return BipartiteState(d, std::move(amp));
}

SchmidtSpectrum load_spectrum_file(const std::string& path) {
    Json j;
    try {
        j = Json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    try {
        if (j.contains("lambdas")) return spectrum_from_json(j);
        if (j.contains("amplitudes_re")) {
            return schmidt_decompose(state_from_json(j)).spectrum;
        }
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    throw std::runtime_error(path + ": expected a 'lambdas' or 'amplitudes_re' field");
}

Json matrix_to_json(const CMatrix& m) {
    Json re = Json::array();
    Json im = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json re_row = Json::array();
        Json im_row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            re_row.push_back(m(i, j).real());
            im_row.push_back(m(i, j).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    Json out;
    out["re"] = std::move(re);
    out["im"] = std::move(im);
    return out;
}

CMatrix matrix_from_json(const Json& j) {
    const Json& re = require_field(j, "re");
    const Json& im = require_field(j, "im");
    if (!re.is_array() || !im.is_array() || re.size() != im.size() || re.empty()) {
        throw std::runtime_error("matrix 're'/'im' must be equal-shaped nonempty arrays");
    }
    const std::size_t rows = re.size();
    const std::size_t cols = re[0].is_array() ? re[0].size() : 0;
    if (cols == 0) throw std::runtime_error("matrix rows must be nonempty arrays");
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!re[i].is_array() || !im[i].is_array() || re[i].size() != cols ||
            im[i].size() != cols) {
            throw std::runtime_error("matrix rows must all have the same length");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            if (!re[i][c].is_number() || !im[i][c].is_number()) {
                throw std::runtime_error("matrix entries must be numbers");
            }
            m(i, c) = Complex(re[i][c].get<double>(), im[i][c].get<double>());
        }
    }
    return m;
}

Json protocol_to_json(const DenseCodingProtocol& proto) {
    Json j;
    j["format"] = "densecoding-protocol";
    j["version"] = 1;
    j["d"] = proto.d;
    Json encodings = Json::array();
    for (const auto& ch : proto.encodings) {
        Json kraus = Json::array();
        for (const auto& op : ch.kraus) kraus.push_back(matrix_to_json(op));
        Json entry;
        entry["kraus"] = std::move(kraus);
        encodings.push_back(std::move(entry));
    }
    j["encodings"] = std::move(encodings);
    Json measurement;
    measurement["dim"] = proto.measurement.dim;
    measurement["has_inconclusive"] = proto.measurement.has_inconclusive;
    measurement["labels"] = proto.measurement.labels;
    Json elements = Json::array();
    for (const auto& e : proto.measurement.elements) elements.push_back(matrix_to_json(e));
    measurement["elements"] = std::move(elements);
    j["measurement"] = std::move(measurement);
    return j;
}

DenseCodingProtocol protocol_from_json(const Json& j) {
    const int d = require_field(j, "d").get<int>();
    std::vector<QuantumChannel> encodings;
    for (const auto& entry : require_field(j, "encodings")) {
        std::vector<CMatrix> kraus;
        for (const auto& op : require_field(entry, "kraus")) {
            kraus.push_back(matrix_from_json(op));
        }
        encodings.emplace_back(d, std::move(kraus));
    }
    const Json& mj = require_field(j, "measurement");
    const int dim = require_field(mj, "dim").get<int>();
    const bool has_inconclusive = require_field(mj, "has_inconclusive").get<bool>();
    std::vector<std::string> labels;
    if (mj.contains("labels")) labels = mj["labels"].get<std::vector<std::string>>();
    std::vector<CMatrix> elements;
    for (const auto& e : require_field(mj, "elements")) {
        elements.push_back(matrix_from_json(e));
    }
    Povm measurement(dim, std::move(elements), has_inconclusive, std::move(labels));
    return DenseCodingProtocol(d, std::move(encodings), std::move(measurement));
}

DenseCodingProtocol load_protocol_file(const std::string& path) {
    Json j;
    try {
        j = Json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    try {
        return protocol_from_json(j);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

Json outcome_to_json(const OutcomeMatrix& om) {
    Json j;
    j["d"] = om.d;
    j["has_inconclusive"] = om.has_inconclusive;
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < om.p.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index s = 0; s < om.p.cols(); ++s) row.push_back(om.p(r, s));
        rows.push_back(std::move(row));
    }
    j["p"] = std::move(rows);
    return j;
}

std::string outcome_to_csv(const OutcomeMatrix& om) {
    std::ostringstream out;
    out << "r";
    for (int s = 0; s < om.n_signals(); ++s) out << ",s" << s;
    if (om.has_inconclusive) out << ",inconclusive";
    out << "\n";
    for (Eigen::Index r = 0; r < om.p.rows(); ++r) {
        out << r;
        for (Eigen::Index s = 0; s < om.p.cols(); ++s) out << "," << format_full(om.p(r, s));
        out << "\n";
    }
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << content;
    if (!out) throw std::runtime_error(path + ": write failed");
}

std::string format_full(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

}  // namespace densecoding
