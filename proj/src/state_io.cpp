#include "qcorr/state_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qcorr {

using nlohmann::json;

namespace {

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::ParseError, msg); }

double number_at(const json& v, const std::string& where) {
    if (!v.is_number()) fail(where + ": expected a number");
    return v.get<double>();
}

}  // namespace

DensityMatrix parse_state_json(std::string_view text, const Tolerances& tol) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        std::ostringstream os;
        os << "line " << line << ", column " << col << ": " << e.what();
        fail(os.str());
    }
    if (!doc.is_object()) fail("top level must be an object");
    if (!doc.contains("dims")) fail("missing \"dims\"");
    if (!doc.contains("matrix")) fail("missing \"matrix\"");

    const json& jd = doc["dims"];
    if (!jd.is_array() || jd.size() != 2 || !jd[0].is_number_integer() || !jd[1].is_number_integer())
        fail("\"dims\" must be [dA, dB] integers");
    const Dims dims{jd[0].get<int>(), jd[1].get<int>()};
    if (dims.a < 1 || dims.b < 1) fail("\"dims\" entries must be positive");
    const int n = dims.total();

    const json& jm = doc["matrix"];
    if (!jm.is_array() || jm.size() != static_cast<std::size_t>(n)) {
        std::ostringstream os;
        os << "\"matrix\" must have " << n << " rows for dims [" << dims.a << ", " << dims.b << "]";
        if (!jm.is_array()) fail(os.str());
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        const json& row = jm[static_cast<std::size_t>(i)];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) {
            std::ostringstream os;
            os << "matrix row " << i << " must have " << n << " entries";
            if (!row.is_array()) fail(os.str());
            throw Error(ErrorKind::DimensionMismatch, os.str());
        }
        for (int j = 0; j < n; ++j) {
            const json& e = row[static_cast<std::size_t>(j)];
            std::ostringstream where;
            where << "matrix[" << i << "][" << j << "]";
            if (e.is_number()) {
                m(i, j) = Complex(e.get<double>(), 0.0);
            } else if (e.is_array() && e.size() == 2) {
                m(i, j) = Complex(number_at(e[0], where.str()), number_at(e[1], where.str()));
            } else {
                fail(where.str() + ": expected [re, im]");
            }
        }
    }
    return make_density(m, dims, tol);
}

DensityMatrix load_state_file(const std::string& path, const Tolerances& tol) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_state_json(buf.str(), tol);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ParseError) throw Error(ErrorKind::ParseError, path + ": " + e.what());
        throw;
    }
}

std::string state_to_json(const ComplexMatrix& m, Dims dims) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    json doc = {{"dims", {dims.a, dims.b}}, {"matrix", rows}};
    return doc.dump();
}

}  // namespace qcorr
