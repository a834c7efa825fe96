#include "doctest.h"

#include "ckd/fock.hpp"
#include "ckd/pieces.hpp"
#include "ckd/random.hpp"
#include "oracles.hpp"

using namespace ckd;

namespace {

std::vector<Mat> dense_ops(const std::vector<SpMat>& ops) {
    std::vector<Mat> out;
    for (const auto& s : ops) out.emplace_back(s);
    return out;
}

Mat random_q(int n, Rng& rng) {
    Mat q = Mat::Ones(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            q(i, j) = std::polar(1.0, rng.uniform(0.0, 6.28));
            q(j, i) = 1.0 / q(i, j);
        }
    return q;
}

struct Instance {
    OperatorTuple r;
    TransitionMatrix a;
    int level;
};

// Co-invariant compression of a truncated full-Fock creation tuple: rich enough
// that none of the presets is satisfied automatically.
Instance random_instance(Rng& rng) {
    const auto pats = oracle::patterns();
    const TransitionMatrix a = pats[rng.uniform_int(0, static_cast<int>(pats.size()) - 2)];
    const int N = a.n() == 2 ? 4 : 3;
    const TruncatedFock f = TruncatedFock::full(a.n(), N);
    return {random_compression(dense_ops(creation_S(f)), f.dim(), 6, 40, rng), a, N};
}

Mat sorted_frame(const TruncatedFock& f, const TransitionMatrix& a) {
    return f.frame_where([&](const Word& w) { return oracle::admissible(a, w); });
}

} // namespace

TEST_SUITE("pieces") {

TEST_CASE("polynomials") {
    const NcPoly p({{1.0, {2, 1}}, {2.0, {1}}, {-1.0, {2, 1}}, {0.0, {2}}, {3.0, {1}}});
    REQUIRE(p.terms().size() == 1);
    CHECK(p.terms()[0].second == Word{1});
    CHECK(p.terms()[0].first == cd(5.0));
    CHECK(NcPoly({{1.0, {1, 2}}, {-1.0, {1, 2}}}).is_zero());

    const OperatorTuple f = oracle::flip_pair();
    CHECK(max_abs(eval_poly(NcPoly({{1.0, {1, 1}}}), f)) == 0.0);
    Mat d1 = Mat::Zero(2, 2), d2 = Mat::Zero(2, 2);
    d1(0, 0) = 2.0;
    d2(1, 1) = -1.0;
    const OperatorTuple comm({d1, d2});
    CHECK(max_abs(eval_poly(NcPoly({{1.0, {1, 2}}, {-1.0, {2, 1}}}), comm)) == 0.0);
    const Mat e = eval_poly(NcPoly({{1.0, {1, 2}}, {2.0, {}}}), f);
    CHECK(e(0, 0) == cd(3.0));
    CHECK(e(1, 1) == cd(2.0));
}

TEST_CASE("presets") {
    const TransitionMatrix ones = TransitionMatrix::all_ones(3);
    CHECK(preset(ones, PresetKind::ARelation).empty());
    CHECK(preset(ones, PresetKind::Commuting).size() == 3);
    CHECK(preset(oracle::example24(), PresetKind::Commuting).size() == 6);
    const PolySet ar = preset(oracle::flip(), PresetKind::ARelation);
    REQUIRE(ar.size() == 2);
    CHECK(ar[0] == NcPoly({{1.0, {1, 1}}}));
    CHECK(ar[1] == NcPoly({{1.0, {2, 2}}}));

    // n = 2 fermionic family: z_1 z_1, z_2 z_2 and z_1 z_2 + z_2 z_1.
    const PolySet fe = preset(TransitionMatrix::all_ones(2), PresetKind::Fermionic);
    const PolySet want{NcPoly({{1.0, {1, 1}}}), NcPoly({{1.0, {2, 2}}}),
                       NcPoly({{1.0, {1, 2}}, {1.0, {2, 1}}})};
    CHECK(fe.size() == want.size());
    for (const auto& p : want) CHECK(std::find(fe.begin(), fe.end(), p) != fe.end());

    Mat q = Mat::Ones(2, 2);
    q(0, 1) = cd(0.0, 1.0);
    q(1, 0) = cd(0.0, -1.0);
    const PolySet qs = preset(TransitionMatrix::all_ones(2), PresetKind::QCommuting, q);
    CHECK(qs.size() == 2);
    CHECK_THROWS(preset(TransitionMatrix::all_ones(2), PresetKind::QCommuting));
    CHECK(preset_by_name(oracle::flip(), "union").size() == 3);
    CHECK_THROWS(preset_by_name(oracle::flip(), "bogus"));
}

TEST_CASE("trivial pieces") {
    for (const auto& a : oracle::patterns()) {
        const TruncatedFock f(a, 4);
        const OperatorTuple s = dense_tuple(creation_S(f));
        const Subspace p = maximal_piece(s, preset(a, PresetKind::ARelation));
        CHECK(p.dim() == f.dim());
        const OperatorTuple c = compress(s, p);
        for (int i = 1; i <= a.n(); ++i)
            CHECK(op_norm(Mat(c.op(i) - p.frame.adjoint() * s.op(i) * p.frame)) < 1e-14);
    }
    const OperatorTuple zero({Mat::Zero(3, 3), Mat::Zero(3, 3)});
    CHECK(maximal_piece(zero, preset(oracle::flip(), PresetKind::ARelation)).dim() == 3);
    CHECK(maximal_piece(zero, {}).dim() == 3);
    CHECK(maximal_piece_oracle(zero, preset(oracle::flip(), PresetKind::Commuting), 2).dim() == 3);
    // An invertible relation value leaves nothing.
    const OperatorTuple id({identity(3), identity(3)});
    CHECK(maximal_piece(id, preset(oracle::flip(), PresetKind::ARelation)).dim() == 0);
    CHECK(maximal_piece_oracle(id, preset(oracle::flip(), PresetKind::ARelation), 2).dim() == 0);
}

TEST_CASE("A-relation piece of the full Fock tuple is the A-Fock space") {
    for (const auto& a : oracle::patterns()) {
        const int N = a.n() == 2 ? 5 : 4;
        const TruncatedFock full = TruncatedFock::full(a.n(), N);
        const OperatorTuple l = dense_tuple(creation_S(full));
        const Subspace p = maximal_piece(l, preset(a, PresetKind::ARelation));
        const Mat adm = sorted_frame(full, a);
        CHECK(principal_angle(p.frame, adm) <= 1e-8);

        // Compressing L to the piece gives S on the A-Fock space, up to the
        // unitary that relates the two frames.
        const TruncatedFock fa(a, N);
        const OperatorTuple s = dense_tuple(creation_S(fa));
        const Mat u = adm.adjoint() * p.frame;
        CHECK(op_norm(Mat(u.adjoint() * u - identity(u.cols()))) < 1e-10);
        const PieceCompression pc = compress_piece(l, p, preset(a, PresetKind::ARelation));
        CHECK(pc.coinvariance <= 1e-9);
        CHECK(pc.relations <= 1e-9);
        for (int i = 1; i <= a.n(); ++i)
            CHECK(op_norm(Mat(pc.tuple.op(i) - u.adjoint() * s.op(i) * u)) <= 1e-10);
    }
}

TEST_CASE("compress_piece rejects subspaces that are not co-invariant") {
    const TruncatedFock f = TruncatedFock::full(2, 3);
    const OperatorTuple l = dense_tuple(creation_S(f));
    // The span of e_(1) alone: L_1^* e_(1) is the vacuum.
    Subspace s{f.dim(), f.frame_where([](const Word& w) { return w == Word{1}; })};
    CHECK(coinvariance_residual(l, s) == doctest::Approx(1.0));
    CHECK_THROWS_AS(compress_piece(l, s, {}), std::domain_error);
}

TEST_CASE("iterative piece agrees with the brute-force oracle") {
    Rng rng(2024);
    for (int k = 0; k < 20; ++k) {
        const Instance in = random_instance(rng);
        const std::vector<PolySet> sets{preset(in.a, PresetKind::ARelation),
                                        preset(in.a, PresetKind::Commuting),
                                        preset(in.a, PresetKind::QCommuting, random_q(in.a.n(), rng)),
                                        preset(in.a, PresetKind::Fermionic)};
        for (const auto& ps : sets) {
            const Subspace fast = maximal_piece(in.r, ps);
            const Subspace slow = maximal_piece_oracle(in.r, ps, in.level);
            CHECK(fast.dim() == slow.dim());
            CHECK(subspace_distance(fast, slow) <= 1e-8);
            CHECK(coinvariance_residual(in.r, fast) <= 1e-9);
            CHECK(op_norm(Mat(fast.frame.adjoint() * fast.frame - identity(fast.dim()))) <= 1e-12);
        }
    }
}

TEST_CASE("union piece is the intersection of the pieces") {
    Rng rng(77);
    for (int k = 0; k < 20; ++k) {
        const Instance in = random_instance(rng);
        const PolySet pa = preset(in.a, PresetKind::ARelation);
        const PolySet pc = preset(in.a, PresetKind::Commuting);
        PolySet both = pa;
        both.insert(both.end(), pc.begin(), pc.end());
        const Subspace u = maximal_piece(in.r, both);
        const Subspace i = intersect(maximal_piece(in.r, pa), maximal_piece(in.r, pc));
        CHECK(u.dim() == i.dim());
        CHECK(subspace_distance(u, i) <= 1e-8);
        CHECK(subspace_distance(u, maximal_piece(in.r, preset_by_name(in.a, "union"))) <= 1e-8);
    }
}

TEST_CASE("symmetric and antisymmetric spans") {
    for (int n = 2; n <= 3; ++n)
        for (int N = 2; N <= 4; ++N) {
            const TransitionMatrix ones = TransitionMatrix::all_ones(n);
            const TruncatedFock f = TruncatedFock::full(n, N);
            const OperatorTuple l = dense_tuple(creation_S(f));
            const Subspace sym = maximal_piece(l, preset(ones, PresetKind::Commuting));
            CHECK(oracle::projector_gap(sym.frame, oracle::symmetric_frame(f, false)) <= 1e-8);
            const Subspace anti = maximal_piece(l, preset(ones, PresetKind::Fermionic));
            CHECK(oracle::projector_gap(anti.frame, oracle::symmetric_frame(f, true)) <= 1e-8);
        }
}

TEST_CASE("pieces of direct sums and tensor copies") {
    Rng rng(9);
    for (int k = 0; k < 5; ++k) {
        const TruncatedFock f = TruncatedFock::full(2, 2);
        const auto ops = dense_ops(creation_S(f));
        const OperatorTuple r = random_compression(ops, f.dim(), 2, 4, rng);
        const OperatorTuple t = random_compression(ops, f.dim(), 2, 3, rng);
        const PolySet ps = preset(oracle::flip(), PresetKind::ARelation);
        const Subspace pr = maximal_piece(r, ps);
        const Subspace pt = maximal_piece(t, ps);
        const Subspace sum = maximal_piece(direct_sum(r, t), ps);
        CHECK(sum.dim() == pr.dim() + pt.dim());
        CHECK(principal_angle(sum.frame, direct_sum(pr.frame, pt.frame)) <= 1e-8);
        const Subspace tens = maximal_piece(tensor_identity(r, 2), ps);
        CHECK(principal_angle(tens.frame, kron(pr.frame, identity(2))) <= 1e-8);
    }
}

TEST_CASE("pieces restrict to co-invariant subspaces") {
    Rng rng(31);
    for (int k = 0; k < 10; ++k) {
        const Instance in = random_instance(rng);
        // A co-invariant subspace: invariant under every R_i^*.
        std::vector<Mat> adj;
        for (const auto& m : in.r.mats()) adj.push_back(m.adjoint());
        const Mat h = invariant_span(OperatorTuple(adj), rng.gaussian(in.r.dim(), 1), 1e-10);
        const Subspace hs{in.r.dim(), h};
        CHECK(coinvariance_residual(in.r, hs) <= 1e-9);
        const OperatorTuple t = compress(in.r, hs);
        const PolySet ps = preset(in.a, PresetKind::ARelation);
        const Subspace pt = maximal_piece(t, ps);
        const Subspace lifted{in.r.dim(), h * pt.frame};
        const Subspace expected = intersect(maximal_piece(in.r, ps), hs);
        CHECK(lifted.dim() == expected.dim());
        CHECK(subspace_distance(lifted, expected) <= 1e-8);
    }
}

} // TEST_SUITE
