#include "doctest.h"

#include "ckd/fock.hpp"
#include "oracles.hpp"

using namespace ckd;

namespace {

Vec basis_vec(const TruncatedFock& f, const Word& w) {
    Vec e = Vec::Zero(f.dim());
    e(f.find(w)) = 1.0;
    return e;
}

// Max entry of (m - expected) restricted to the given source frame.
double on_frame(const Mat& m, const Mat& frame) { return max_abs(Mat(m * frame)); }

} // namespace

TEST_SUITE("fock") {

TEST_CASE("dimensions") {
    CHECK(TruncatedFock(oracle::flip(), 3).dim() == 7);
    CHECK(TruncatedFock::full(2, 2).dim() == 7);
    CHECK(TruncatedFock::full(3, 4).dim() == 121);
    const TruncatedFock f(oracle::example24(), 4);
    CHECK(f.basis().front().empty());
    CHECK(std::is_sorted(f.basis().begin(), f.basis().end(), length_lex_less));
    for (const auto& w : f.basis()) CHECK(oracle::admissible(f.A(), w));
    CHECK(f.find({3, 3}) == -1);
    CHECK(f.dim_up_to(0) == 1);
    CHECK(f.dim_up_to(1) == 5);
}

TEST_CASE("creation and annihilation on basis words") {
    const TruncatedFock f(oracle::flip(), 3);
    const auto S = creation_S(f);
    const auto Ss = annihilation_S_star(f);
    CHECK(Vec(S[0] * basis_vec(f, {2, 1})) == basis_vec(f, {1, 2, 1}));
    CHECK(Vec(S[0] * basis_vec(f, {1, 2})).norm() == 0.0);
    CHECK(Vec(S[0] * basis_vec(f, {})) == basis_vec(f, {1}));
    CHECK(Vec(S[0] * basis_vec(f, {1, 2, 1})).norm() == 0.0); // top level
    CHECK(Vec(Ss[0] * basis_vec(f, {1, 2, 1})) == basis_vec(f, {2, 1}));
    CHECK(Vec(Ss[0] * basis_vec(f, {})).norm() == 0.0);
    CHECK(Vec(Ss[1] * basis_vec(f, {1, 2})).norm() == 0.0);
    const auto del = deletion_formula(f);
    for (int i = 0; i < 2; ++i) {
        CHECK(max_abs(Mat(Mat(Ss[i]) - Mat(S[i]).adjoint())) == 0.0);
        CHECK(max_abs(Mat(Mat(Ss[i]) - Mat(del[i]))) == 0.0);
    }
}

TEST_CASE("right creation") {
    const TruncatedFock f(oracle::flip(), 3);
    const auto X = creation_X(f);
    CHECK(Vec(X[0] * basis_vec(f, {})) == basis_vec(f, {1}));
    CHECK(Vec(X[0] * basis_vec(f, {2})) == basis_vec(f, {2, 1}));
    CHECK(Vec(X[0] * basis_vec(f, {1})).norm() == 0.0);
    for (const auto& a : oracle::patterns()) {
        const TruncatedFock g(a, 4);
        const auto x = creation_X(g);
        const Mat interior = g.level_frame(3);
        for (int i = 1; i <= a.n(); ++i) {
            // X_i^* X_i projects onto words that may be followed by i.
            Mat expected = Mat::Zero(g.dim(), g.dim());
            for (int k = 0; k < g.dim(); ++k) {
                const Word& w = g.basis()[k];
                if (w.empty() || a(w.back(), i)) expected(k, k) = 1.0;
            }
            CHECK(on_frame(Mat(Mat(x[i - 1]).adjoint() * Mat(x[i - 1]) - expected), interior) == 0.0);
            for (int j = 1; j <= a.n(); ++j) {
                if (i != j) CHECK(max_abs(Mat(Mat(x[i - 1]).adjoint() * Mat(x[j - 1]))) == 0.0);
                // X satisfies the transposed relations.
                if (a(j, i) == 0) CHECK(max_abs(Mat(Mat(x[i - 1]) * Mat(x[j - 1]))) == 0.0);
            }
        }
    }
}

TEST_CASE("vacuum, range and relation identities on interior levels") {
    for (const auto& a : oracle::patterns()) {
        const int N = 6;
        const TruncatedFock f(a, N);
        const auto S = creation_S(f);
        const Mat interior = f.level_frame(N - 1);
        SpMat I(f.dim(), f.dim());
        I.setIdentity();
        SpMat sum(f.dim(), f.dim());
        for (const auto& s : S) sum += SpMat(s * s.adjoint());
        // I - sum S S^* is the vacuum projection on every level.
        CHECK(max_abs(Mat(Mat(I - sum) - vacuum_projection(f))) == 0.0);
        for (int i = 1; i <= a.n(); ++i) {
            const SpMat& si = S[i - 1];
            for (int j = 1; j <= a.n(); ++j)
                if (i != j) CHECK(max_abs(Mat(SpMat(si.adjoint() * S[j - 1]))) == 0.0);
            // Q_i e^w = e^w when i w is admissible, zero otherwise.
            SpMat q = I;
            for (int j = 1; j <= a.n(); ++j)
                if (a(i, j) == 0) q -= SpMat(S[j - 1] * S[j - 1].adjoint());
            Mat expected = Mat::Zero(f.dim(), f.dim());
            for (int k = 0; k < f.dim(); ++k) {
                const Word& w = f.basis()[k];
                if (w.empty() || a(i, w.front())) expected(k, k) = 1.0;
            }
            const Mat ss = Mat(SpMat(si.adjoint() * si));
            CHECK(on_frame(Mat(Mat(q) - expected), interior) == 0.0);
            CHECK(on_frame(Mat(ss - Mat(q)), interior) == 0.0);
            // The top level is where the truncation shows.
            CHECK(max_abs(Mat(ss - Mat(q))) == 1.0);
        }
    }
}

TEST_CASE("word identities on the truncated A-Fock space") {
    for (const auto& a : oracle::patterns()) {
        const TruncatedFock f(a, 6);
        const auto pr = partial_isometry_checks(creation_S(f), a, 4, f.interior_scope());
        CHECK(pr.idempotent <= 1e-12);
        CHECK(pr.orthogonal_ranges == 0.0);
        CHECK(pr.word_orthogonality <= 1e-12);
        CHECK(pr.word_partial_isometry <= 1e-12);
    }
}

TEST_CASE("commutant identity") {
    for (const auto& a : oracle::patterns()) CHECK(commutant_check(TruncatedFock(a, 5), 4) == 0.0);
    CHECK(commutant_check(TruncatedFock::full(2, 5), 5) == 0.0);
    CHECK_THROWS_AS(commutant_check(TruncatedFock(oracle::flip(), 3), 4), std::invalid_argument);
}

TEST_CASE("commuting A-Fock space") {
    const TransitionMatrix sym(ZeroOneMatrix{{1, 1}, {1, 1}});
    const SymTruncatedFock fs = build_sym_fock(sym, 3);
    const auto W = creation_W(fs);
    CHECK(fs.dim() == 1 + 2 + 3 + 4);
    CHECK(op_norm(Mat(fs.embed.adjoint() * fs.embed - identity(fs.dim()))) < 1e-14);
    Vec omega = Vec::Zero(fs.dim());
    omega(0) = 1.0;
    Vec e1 = Vec::Zero(fs.dim());
    e1(fs.find({1})) = 1.0;
    CHECK((W[0] * omega - e1).norm() < 1e-15);
    Vec e2 = Vec::Zero(fs.dim());
    e2(fs.find({2})) = 1.0;
    Vec e12 = Vec::Zero(fs.dim());
    e12(fs.find({1, 2})) = 1.0;
    // W_1 P e_2 = P e_12 for unnormalized symmetric projections P: in the orbit
    // normalized basis that is a factor sqrt(1/2).
    CHECK((W[0] * e2 - std::sqrt(0.5) * e12).norm() < 1e-15);

    const TransitionMatrix lop(ZeroOneMatrix{{1, 1}, {0, 1}});
    const SymTruncatedFock fl = build_sym_fock(lop, 3);
    const auto Wl = creation_W(fl);
    Vec f2 = Vec::Zero(fl.dim());
    f2(fl.find({2})) = 1.0;
    CHECK((Wl[0] * f2).norm() == 0.0);
    CHECK(fl.find({1, 2}) == -1);
}

TEST_CASE("W is the compression of S and matches the dense symmetrizer") {
    for (const auto& a : {TransitionMatrix::all_ones(2), TransitionMatrix::all_ones(3),
                          TransitionMatrix(ZeroOneMatrix{{1, 1, 1}, {1, 1, 0}, {1, 0, 1}})}) {
        const int N = 4;
        const SymTruncatedFock fs = build_sym_fock(a, N);
        const auto S = creation_S(fs.ambient);
        const auto W = creation_W(fs);
        const Mat interior = fs.embed.adjoint() * fs.ambient.level_frame(N - 1);
        for (int i = 0; i < a.n(); ++i) {
            const Mat comp = fs.embed.adjoint() * Mat(S[i]) * fs.embed;
            CHECK(op_norm(Mat((comp - W[i]) * interior.adjoint())) < 1e-12);
        }
        if (a.is_all_ones()) {
            const Mat dense = oracle::symmetric_frame(TruncatedFock::full(a.n(), N), false);
            CHECK(oracle::projector_gap(dense, fs.embed) < 1e-12);
        }
    }
}

TEST_CASE("self-commutator of W on symmetrized vectors") {
    const TransitionMatrix a(ZeroOneMatrix{{1, 1, 1}, {1, 1, 0}, {1, 0, 1}});
    const int N = 5;
    const SymTruncatedFock fs = build_sym_fock(a, N);
    const auto W = creation_W(fs);
    for (int i = 1; i <= a.n(); ++i) {
        const Mat c = W[i - 1] * W[i - 1].adjoint() - W[i - 1].adjoint() * W[i - 1];
        for (int k = 0; k < fs.dim(); ++k) {
            const Word& rep = fs.reps[k];
            if (rep.size() < 2 || static_cast<int>(rep.size()) > N - 1) continue;
            Vec e = Vec::Zero(fs.dim());
            e(k) = 1.0;
            const Vec v = c * e;
            CHECK((v - w_commutator_value(fs, i, rep) * e).norm() < 1e-12);
        }
    }
}

} // TEST_SUITE
