#include "ckd/dilate.hpp"

#include <algorithm>

namespace ckd {

SchafferDilation dilate_isometric_schaffer(const OperatorTuple& t, int N, double tol) {
    if (N < 1) throw std::invalid_argument("Schaffer truncation level must be >= 1");
    const int n = t.n();
    const int d = t.dim();
    Mat row(d, static_cast<Eigen::Index>(n) * d);
    for (int i = 0; i < n; ++i) row.middleCols(static_cast<Eigen::Index>(i) * d, d) = t.mats()[i];
    const Mat d2 = hermitize(identity(static_cast<Eigen::Index>(n) * d) - row.adjoint() * row);
    if (min_eig(d2) < -tol) throw std::domain_error("tuple is not a row contraction");

    SchafferDilation s;
    s.method = "schaffer";
    s.level = N;
    s.D_is_projection = op_norm(Mat(d2 * d2 - d2)) <= tol;
    s.D = s.D_is_projection ? d2 : psd_sqrt(d2);
    const HermEig eg = eig_desc(s.D);
    Eigen::Index rd = 0;
    while (rd < eg.values.size() && eg.values(rd) > tol) ++rd;
    s.defect_basis = eg.vectors.leftCols(rd);

    const TruncatedFock f = TruncatedFock::full(n, N);
    s.fock_dim = f.dim();
    const Eigen::Index total = d + static_cast<Eigen::Index>(f.dim()) * rd;
    const auto L = creation_S(f);
    for (int i = 1; i <= n; ++i) {
        std::vector<Eigen::Triplet<cd>> trip;
        const Mat& ti = t.op(i);
        for (int x = 0; x < d; ++x)
            for (int y = 0; y < d; ++y)
                if (ti(x, y) != cd(0.0)) trip.emplace_back(x, y, ti(x, y));
        // D(e_i (x) h) lands on the vacuum of the Fock part.
        const Mat into_vacuum =
            s.defect_basis.adjoint() * s.D.middleCols(static_cast<Eigen::Index>(i - 1) * d, d);
        for (Eigen::Index x = 0; x < rd; ++x)
            for (int y = 0; y < d; ++y)
                if (into_vacuum(x, y) != cd(0.0)) trip.emplace_back(d + x, y, into_vacuum(x, y));
        const SpMat li = kron_identity(L[i - 1], rd);
        for (int c = 0; c < li.outerSize(); ++c)
            for (SpMat::InnerIterator it(li, c); it; ++it)
                trip.emplace_back(d + it.row(), d + it.col(), it.value());
        SpMat op(total, total);
        op.setFromTriplets(trip.begin(), trip.end());
        s.ops.push_back(std::move(op));
    }
    s.embedding = Mat::Zero(total, d);
    s.embedding.topRows(d) = identity(d);
    return s;
}

Mat schaffer_level_frame(const SchafferDilation& s, int k) {
    const int d = static_cast<int>(s.embedding.cols());
    const Eigen::Index rd = s.defect_basis.cols();
    const TruncatedFock f = TruncatedFock::full(s.n(), s.level);
    const Eigen::Index cols = d + static_cast<Eigen::Index>(f.dim_up_to(k)) * rd;
    Mat out = Mat::Zero(s.dim(), cols);
    for (Eigen::Index c = 0; c < cols; ++c) out(c, c) = 1.0;
    return out;
}

double annihilation_residual(const SchafferDilation& s, const TransitionMatrix& a) {
    if (a.n() != s.n()) throw std::invalid_argument("alphabet size of A and dilation differ");
    const int N = s.level;
    if (N < 2) return 0.0;
    std::vector<SpMat> adj;
    for (const auto& op : s.ops) adj.push_back(op.adjoint());
    // Iterates stay sparse: co-invariance keeps them inside the embedded block, so
    // the products only touch the columns of L^* that block reaches.
    const auto words = all_words_up_to(s.n(), N - 2);
    std::map<Word, SpMat> y;
    double worst = 0.0;
    for (const auto& w : words) {
        SpMat cur = w.empty() ? to_sparse(s.embedding)
                              : SpMat(adj[w.back() - 1] * y.at(Word(w.begin(), w.end() - 1)));
        cur.prune(cd(0.0));
        for (int i = 1; i <= s.n(); ++i) {
            const SpMat after_i = adj[i - 1] * cur;
            for (int j = 1; j <= s.n(); ++j)
                if (a(i, j) == 0) worst = std::max(worst, op_norm(SpMat(adj[j - 1] * after_i)));
        }
        y.emplace(w, std::move(cur));
    }
    return worst;
}

double annihilation_check(const OperatorTuple& t, const TransitionMatrix& a, int m, int N,
                          double tol) {
    const KernelDilation kd = dilate_kernel(t, a, m, tol);
    const SchafferDilation s = dilate_isometric_schaffer(kd.dense(), N, tol);
    return annihilation_residual(s, a);
}

int defect_rank(const Mat& gap) {
    if (gap.size() == 0) return 0;
    return numerical_rank(gap, 1e-8 * std::max(op_norm(gap), 1.0));
}

std::array<int, 3> defect_rank_triple(const OperatorTuple& t, const TransitionMatrix& a,
                                      int m, int N) {
    auto gap_of = [](const std::vector<SpMat>& ops) {
        const Eigen::Index dim = ops.front().rows();
        SpMat sum(dim, dim);
        for (const auto& op : ops) sum += op * SpMat(op.adjoint());
        return Mat(identity(dim) - Mat(sum));
    };
    const SchafferDilation s = dilate_isometric_schaffer(t, N);
    const KernelDilation kd = dilate_kernel(t, a, m);
    return {defect_rank(gap_of(s.ops)), defect_rank(gap_of(kd.ops)),
            defect_rank(identity(t.dim()) - row_square(t))};
}

} // namespace ckd
