#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ckd/linalg.hpp"
#include "ckd/tuples.hpp"
#include "ckd/words.hpp"

namespace ckd {

using json = nlohmann::json;

struct BundleOptions {
    std::optional<int> level;
    std::optional<double> tol;
    std::optional<std::string> method;
    std::optional<double> r;
    std::optional<std::vector<std::string>> checks;
};

/// {"n", "dim", "A", "T", optional "options" and "q"}.  Matrices are rows of
/// [re, im] pairs.
struct InputBundle {
    TransitionMatrix A;
    std::optional<OperatorTuple> T;
    std::optional<Mat> q;
    BundleOptions options;
};

/// Throws ParseError on malformed input.
InputBundle parse_bundle(const std::string& text);
InputBundle parse_bundle(const json& j);
inline InputBundle parse_bundle(const char* text) { return parse_bundle(std::string(text)); }

json matrix_to_json(const Mat& m);
Mat matrix_from_json(const json& j);
json transition_to_json(const TransitionMatrix& a);
json tuple_to_json(const TransitionMatrix& a, const OperatorTuple& t);
json tuple_to_json(const TransitionMatrix& a, const std::vector<SpMat>& ops);

} // namespace ckd
