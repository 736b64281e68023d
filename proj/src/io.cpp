#include "qinfo/io.hpp"

#include <fstream>
#include <sstream>

#include "qinfo/errors.hpp"

namespace qinfo {

using nlohmann::json;

namespace {

std::vector<double> number_array(const json &j, const char *key, size_t expected) {
    if (!j.contains(key)) {
        throw FormatError(std::string("missing field \"") + key + "\"");
    }
    const json &a = j.at(key);
    if (!a.is_array() || a.size() != expected) {
        throw FormatError(std::string("field \"") + key + "\" must be an array of " + std::to_string(expected) +
                          " numbers");
    }
    std::vector<double> out;
    for (const auto &x : a) {
        if (!x.is_number()) throw FormatError(std::string("non-numeric entry in \"") + key + "\"");
        out.push_back(x.get<double>());
    }
    return out;
}

size_t positive_field(const json &j, const char *key) {
    if (!j.contains(key) || !j.at(key).is_number_unsigned() || j.at(key).get<size_t>() == 0) {
        throw FormatError(std::string("field \"") + key + "\" must be a positive integer");
    }
    return j.at(key).get<size_t>();
}

Dims dims_field(const json &j) {
    const json &a = j.at("dims");
    if (!a.is_array() || a.empty()) throw FormatError("\"dims\" must be a nonempty array");
    Dims dims;
    for (const auto &x : a) {
        if (!x.is_number_unsigned() || x.get<size_t>() == 0) throw FormatError("\"dims\" entries must be positive");
        dims.push_back(x.get<size_t>());
    }
    return dims;
}

}  // namespace

json matrix_to_json(const ComplexMatrix &m, const std::optional<Dims> &dims) {
    json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    if (dims) j["dims"] = *dims;
    std::vector<double> re, im;
    for (const auto &z : m.entries()) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

ComplexMatrix matrix_from_json(const json &j, std::optional<Dims> *dims) {
    if (!j.is_object()) throw FormatError("matrix JSON must be an object");
    size_t rows = positive_field(j, "rows"), cols = positive_field(j, "cols");
    auto re = number_array(j, "re", rows * cols);
    auto im = number_array(j, "im", rows * cols);
    std::vector<Complex> entries(rows * cols);
    for (size_t i = 0; i < entries.size(); i++) entries[i] = {re[i], im[i]};
    if (dims) {
        *dims = j.contains("dims") ? std::optional<Dims>(dims_field(j)) : std::nullopt;
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

json state_to_json(const PureState &psi) {
    std::vector<double> re, im;
    for (const auto &z : psi.amplitudes()) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    return {{"amps_re", re}, {"amps_im", im}, {"dims", psi.dims()}};
}

json state_to_json(const DensityMatrix &rho) {
    return matrix_to_json(rho.matrix(), rho.dims());
}

PureState pure_state_from_json(const json &j) {
    if (!j.is_object() || !j.contains("amps_re")) throw FormatError("pure state JSON needs \"amps_re\"");
    const json &a = j.at("amps_re");
    if (!a.is_array() || a.empty()) throw FormatError("\"amps_re\" must be a nonempty array");
    size_t n = a.size();
    auto re = number_array(j, "amps_re", n);
    auto im = j.contains("amps_im") ? number_array(j, "amps_im", n) : std::vector<double>(n, 0.0);
    ComplexVector amps(n);
    for (size_t i = 0; i < n; i++) amps[i] = {re[i], im[i]};
    Dims dims = j.contains("dims") ? dims_field(j) : Dims{n};
    return PureState(std::move(amps), std::move(dims));
}

DensityMatrix density_from_json(const json &j) {
    std::optional<Dims> dims;
    ComplexMatrix m = matrix_from_json(j, &dims);
    if (!dims) throw FormatError("density matrix JSON needs \"dims\"");
    return DensityMatrix(std::move(m), *dims);
}

AnyState state_from_json(const json &j) {
    if (j.is_object() && j.contains("amps_re")) return pure_state_from_json(j);
    return density_from_json(j);
}

json load_json(const std::string &path_or_inline) {
    std::string text;
    if (!path_or_inline.empty() && path_or_inline.front() == '{') {
        text = path_or_inline;
    } else {
        std::ifstream in(path_or_inline);
        if (!in) throw FormatError("cannot open " + path_or_inline);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace qinfo
