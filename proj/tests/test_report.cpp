#include "doctest.h"

#include <fstream>
#include <set>
#include <sstream>

#include "ckd/errors.hpp"
#include "ckd/json_io.hpp"
#include "ckd/random.hpp"
#include "ckd/report.hpp"
#include "oracles.hpp"

using namespace ckd;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string kFlip = R"({
  "n": 2, "dim": 2, "A": [[0, 1], [1, 0]],
  "T": [[[[0, 0], [1, 0]], [[0, 0], [0, 0]]],
        [[[0, 0], [0, 0]], [[1, 0], [0, 0]]]]
})";

const CheckRecord* find(const Report& r, const std::string& id) {
    for (const auto& c : r.checks)
        if (c.id == id) return &c;
    return nullptr;
}

} // namespace

TEST_SUITE("report") {

TEST_CASE("bundle parsing") {
    const InputBundle b = parse_bundle(kFlip);
    CHECK(b.A == oracle::flip());
    REQUIRE(b.T.has_value());
    CHECK(max_abs(Mat(b.T->op(1) - oracle::flip_pair().op(1))) == 0.0);
    CHECK(max_abs(Mat(b.T->op(2) - oracle::flip_pair().op(2))) == 0.0);
    CHECK_FALSE(b.options.level.has_value());

    // Plain numbers are accepted as real entries.
    const InputBundle r = parse_bundle(R"({"A": [[1]], "T": [[[0.5]]], "options": {"level": 3}})");
    CHECK(r.T->op(1)(0, 0) == cd(0.5));
    CHECK(r.options.level == 3);
    CHECK_FALSE(parse_bundle(R"({"A": [[1, 1], [1, 1]]})").T.has_value());

    CHECK_THROWS_AS(parse_bundle("{"), ParseError);
    CHECK_THROWS_AS(parse_bundle("[]"), ParseError);
    CHECK_THROWS_AS(parse_bundle(R"({"T": []})"), ParseError);
    CHECK_THROWS_AS(parse_bundle(R"({"A": [[1, 0], [0, 0]]})"), ParseError);
    CHECK_THROWS_AS(parse_bundle(R"({"A": [[1]], "n": 2})"), ParseError);
    CHECK_THROWS_AS(parse_bundle(R"({"A": [[1]], "T": [[[1, 2]]]})"), ParseError);
    CHECK_THROWS_AS(parse_bundle(R"({"A": [[1]], "T": [[[[1, 0, 0]]]]})"), ParseError);
    CHECK_THROWS_AS(parse_bundle(R"({"A": [[1]], "T": [[["x"]]]})"), ParseError);
    CHECK_THROWS_AS(parse_bundle(R"({"A": [[1]], "T": [[[1e999]]]})"), ParseError);
    CHECK_THROWS_AS(parse_bundle(R"({"A": [[1]], "T": [[[1]], [[1]]]})"), ParseError);
    CHECK_THROWS_AS(parse_bundle(R"({"A": [[1]], "dim": 2, "T": [[[1]]]})"), ParseError);
    CHECK_THROWS_AS(parse_bundle(R"({"A": [[1]], "options": []})"), ParseError);
    CHECK_THROWS_AS(parse_bundle(R"({"A": [[1]], "options": {"level": "x"}})"), ParseError);
}

TEST_CASE("matrices survive a JSON round trip bit for bit") {
    Rng rng(99);
    const Mat m = rng.gaussian(3, 4) / 3.0;
    const Mat back = matrix_from_json(json::parse(matrix_to_json(m).dump()));
    CHECK(back == m);
    const OperatorTuple t({rng.gaussian(2, 2), rng.gaussian(2, 2)});
    const InputBundle b = parse_bundle(tuple_to_json(TransitionMatrix::all_ones(2), t).dump());
    CHECK(b.T->op(1) == t.op(1));
    CHECK(b.T->op(2) == t.op(2));
}

TEST_CASE("flip pair report") {
    const Report r = run_suite(parse_bundle(kFlip));
    CHECK(r.all_pass());
    CHECK(r.checks.size() >= 12);
    CHECK(std::is_sorted(r.checks.begin(), r.checks.end(),
                         [](const CheckRecord& x, const CheckRecord& y) { return x.id < y.id; }));
    for (const auto& c : r.checks) {
        CHECK_FALSE(c.citation.empty());
        CHECK_FALSE(c.scope.empty());
        CHECK(c.pass == (c.residual <= c.threshold));
        CHECK(std::find(known_check_ids().begin(), known_check_ids().end(), c.id) !=
              known_check_ids().end());
    }
    for (const char* id : {"a_relations", "contractivity", "ck_relation", "kernel_psd",
                           "kernel_factorization", "dilation_coinvariance", "wold_projection",
                           "commutant_identity", "piece_annihilation", "defect_ranks"})
        CHECK(find(r, id) != nullptr);
    const json j = r.to_json();
    CHECK(j.at("checks").is_array());
    CHECK(j.at("artifacts").is_object());
}

TEST_CASE("violated relations are reported with the offending pair") {
    InputBundle b = parse_bundle(kFlip);
    b.A = TransitionMatrix(ZeroOneMatrix{{1, 0}, {1, 1}});
    const Report r = run_suite(b);
    CHECK_FALSE(r.all_pass());
    const CheckRecord* ar = find(r, "a_relations");
    REQUIRE(ar != nullptr);
    CHECK_FALSE(ar->pass);
    CHECK(ar->details.at("worst_pair") == json::array({1, 2}));
    // Dilation records need a contractive A-relation tuple.
    CHECK(find(r, "kernel_psd") == nullptr);
    CHECK_FALSE(r.artifacts.at("skipped").empty());
}

TEST_CASE("check selection") {
    SuiteConfig cfg;
    cfg.checks = std::vector<std::string>{};
    CHECK(run_suite(parse_bundle(kFlip), cfg).checks.empty());
    cfg.checks = std::vector<std::string>{"contractivity", "a_relations"};
    const Report r = run_suite(parse_bundle(kFlip), cfg);
    REQUIRE(r.checks.size() == 2);
    CHECK(r.checks[0].id == "a_relations");
    CHECK(r.checks[1].id == "contractivity");
    cfg.checks = std::vector<std::string>{"no_such_check"};
    CHECK_THROWS_AS(run_suite(parse_bundle(kFlip), cfg), ParseError);

    InputBundle b = parse_bundle(kFlip);
    b.options.checks = std::vector<std::string>{"kernel_psd"};
    b.options.level = 3;
    const SuiteConfig c2 = config_for(b);
    CHECK(c2.kernel_level == 3);
    CHECK(run_suite(b, c2).checks.size() == 1);
    b.options.level = 0;
    CHECK_THROWS_AS(config_for(b), ParseError);
}

TEST_CASE("non-contractive input") {
    InputBundle b = parse_bundle(kFlip);
    b.T = b.T->scaled(2.0);
    const Report r = run_suite(b);
    const CheckRecord* c = find(r, "contractivity");
    REQUIRE(c != nullptr);
    CHECK_FALSE(c->pass);
    CHECK(c->residual == doctest::Approx(3.0));
}

TEST_CASE("relation-only bundles") {
    const Report r = run_suite(parse_bundle(R"({"A": [[1, 1, 1, 0], [1, 1, 0, 0], [1, 1, 0, 0], [1, 0, 0, 1]]})"));
    CHECK(r.all_pass());
    CHECK(find(r, "commutant_identity") != nullptr);
    CHECK(find(r, "contractivity") == nullptr);
}

TEST_CASE("seeded suite is deterministic") {
    const std::string one = run_seeded_suite(5).to_json().dump();
    const std::string two = run_seeded_suite(5).to_json().dump();
    CHECK(one == two);
    const Report r = run_seeded_suite(5);
    CHECK(r.all_pass());
    CHECK(r.artifacts.at("seed") == 5);
    std::set<std::string> subjects;
    for (const auto& c : r.checks) subjects.insert(c.subject);
    CHECK(subjects.size() >= 6);
    CHECK(run_seeded_suite(6).to_json().dump() != one);
}

TEST_CASE("shipped example file") {
    const std::string text = read_file(std::string(CKD_TEST_DATA) + "/example15.json");
    const InputBundle b = parse_bundle(text);
    CHECK(b.A == oracle::flip());
    CHECK(run_suite(b).all_pass());
}

} // TEST_SUITE
