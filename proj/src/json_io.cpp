#include "ckd/json_io.hpp"

#include <cmath>

#include "ckd/errors.hpp"

namespace ckd {

namespace {

double finite_number(const json& v, const char* what) {
    if (!v.is_number()) throw ParseError(std::string(what) + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ParseError(std::string(what) + " must be finite");
    return x;
}

} // namespace

json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
    const std::size_t rows = j.size();
    if (!j[0].is_array()) throw ParseError("matrix rows must be arrays");
    const std::size_t cols = j[0].size();
    Mat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) throw ParseError("matrix rows must have equal length");
        for (std::size_t c = 0; c < cols; ++c) {
            const json& e = j[r][c];
            if (e.is_number()) {
                m(r, c) = finite_number(e, "matrix entry");
            } else if (e.is_array() && e.size() == 2) {
                m(r, c) = cd(finite_number(e[0], "matrix entry"), finite_number(e[1], "matrix entry"));
            } else {
                throw ParseError("matrix entries must be [re, im] pairs");
            }
        }
    }
    return m;
}

json transition_to_json(const TransitionMatrix& a) { return a.rows(); }

json tuple_to_json(const TransitionMatrix& a, const OperatorTuple& t) {
    json out;
    out["n"] = t.n();
    out["dim"] = t.dim();
    out["A"] = transition_to_json(a);
    json ts = json::array();
    for (const auto& m : t.mats()) ts.push_back(matrix_to_json(m));
    out["T"] = std::move(ts);
    return out;
}

json tuple_to_json(const TransitionMatrix& a, const std::vector<SpMat>& ops) {
    std::vector<Mat> dense;
    for (const auto& s : ops) dense.emplace_back(s);
    return tuple_to_json(a, OperatorTuple(std::move(dense)));
}

InputBundle parse_bundle(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return parse_bundle(j);
}

InputBundle parse_bundle(const json& j) {
    if (!j.is_object()) throw ParseError("input must be a JSON object");
    if (!j.contains("A")) throw ParseError("input is missing \"A\"");
    ZeroOneMatrix rows;
    try {
        rows = j.at("A").get<ZeroOneMatrix>();
    } catch (const json::exception&) {
        throw ParseError("\"A\" must be a matrix of integers");
    }
    InputBundle b{TransitionMatrix(std::move(rows)), {}, {}, {}};
    if (j.contains("n") && (!j["n"].is_number_integer() || j["n"].get<int>() != b.A.n()))
        throw ParseError("\"n\" does not match the size of \"A\"");
    if (j.contains("T")) {
        const json& ts = j["T"];
        if (!ts.is_array()) throw ParseError("\"T\" must be an array of matrices");
        std::vector<Mat> mats;
        for (const auto& m : ts) mats.push_back(matrix_from_json(m));
        b.T = OperatorTuple(std::move(mats));
        if (b.T->n() != b.A.n()) throw ParseError("number of matrices in \"T\" differs from n");
        if (j.contains("dim") && (!j["dim"].is_number_integer() || j["dim"].get<int>() != b.T->dim()))
            throw ParseError("\"dim\" does not match the matrices");
    }
    if (j.contains("q")) {
        b.q = matrix_from_json(j["q"]);
        if (b.q->rows() != b.A.n() || b.q->cols() != b.A.n()) throw ParseError("\"q\" must be n x n");
    }
    if (j.contains("options")) {
        const json& o = j["options"];
        if (!o.is_object()) throw ParseError("\"options\" must be an object");
        try {
            if (o.contains("level")) b.options.level = o["level"].get<int>();
            if (o.contains("tol")) b.options.tol = finite_number(o["tol"], "tol");
            if (o.contains("method")) b.options.method = o["method"].get<std::string>();
            if (o.contains("r")) b.options.r = finite_number(o["r"], "r");
            if (o.contains("checks")) b.options.checks = o["checks"].get<std::vector<std::string>>();
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad option: ") + e.what());
        }
    }
    return b;
}

} // namespace ckd
