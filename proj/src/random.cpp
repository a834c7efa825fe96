#include "ckd/random.hpp"

#include <stdexcept>

#include "ckd/pieces.hpp"
#include "ckd/variety.hpp"

namespace ckd {

double Rng::uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
}

int Rng::uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

cd Rng::gauss() {
    std::normal_distribution<double> nd(0.0, 1.0);
    const double re = nd(eng_);
    const double im = nd(eng_);
    return {re, im};
}

Mat Rng::gaussian(Eigen::Index rows, Eigen::Index cols) {
    Mat m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = gauss();
    return m;
}

Mat Rng::unitary(Eigen::Index d) {
    Eigen::HouseholderQR<Mat> qr(gaussian(d, d));
    Mat q = qr.householderQ() * identity(d);
    // Fix the phases so the distribution does not depend on the QR sign convention.
    const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < d; ++k) {
        const cd diag = r(k, k);
        if (std::abs(diag) > 0) q.col(k) *= diag / std::abs(diag);
    }
    return q;
}

OperatorTuple random_compression(const std::vector<Mat>& ops, int support, int min_dim,
                                 int max_dim, Rng& rng, bool rotate) {
    const auto dim = ops.front().rows();
    std::vector<Mat> adj;
    for (const auto& m : ops) adj.push_back(m.adjoint());
    const OperatorTuple star(adj);
    for (int attempt = 0; attempt < 500; ++attempt) {
        const int seeds = rng.uniform_int(1, 2);
        const int supp = rng.uniform_int(2, static_cast<int>(std::min<Eigen::Index>(support, dim)));
        Mat x = Mat::Zero(dim, seeds);
        x.topRows(supp) = rng.gaussian(supp, seeds);
        const Mat v = invariant_span(star, x, 1e-10);
        if (v.cols() < min_dim || v.cols() > max_dim) continue;
        std::vector<Mat> out;
        for (const auto& m : ops) out.push_back(v.adjoint() * m * v);
        OperatorTuple t(std::move(out));
        return rotate ? t.conjugated(rng.unitary(v.cols())) : t;
    }
    throw std::runtime_error("could not draw a compression of the requested dimension");
}

OperatorTuple random_fock_compression(const TruncatedFock& f, int min_dim, int max_dim, Rng& rng,
                                      bool rotate) {
    std::vector<Mat> ops;
    for (const auto& s : creation_S(f)) ops.emplace_back(s);
    return random_compression(ops, f.dim(), min_dim, max_dim, rng, rotate);
}

OperatorTuple random_commuting_tuple(const TransitionMatrix& a, int N, int min_dim, int max_dim,
                                     Rng& rng) {
    const SymTruncatedFock fs = build_sym_fock(a, N);
    return random_compression(creation_W(fs), fs.dim(), min_dim, max_dim, rng, true);
}

Vec random_variety_point(const TransitionMatrix& a, Rng& rng) {
    const auto supports = admissible_supports(symmetrize(a));
    if (supports.empty()) throw std::domain_error("the variety of this A is empty");
    const auto& s = supports[rng.uniform_int(0, static_cast<int>(supports.size()) - 1)];
    Vec z = Vec::Zero(a.n());
    for (int l : s) z(l - 1) = rng.gauss();
    return z / z.norm();
}

OperatorTuple random_spherical_tuple(const TransitionMatrix& a, int copies, Rng& rng) {
    std::vector<Mat> diag(a.n(), Mat::Zero(copies, copies));
    for (int c = 0; c < copies; ++c) {
        const Vec z = random_variety_point(a, rng);
        for (int i = 0; i < a.n(); ++i) diag[i](c, c) = z(i);
    }
    return OperatorTuple(std::move(diag)).conjugated(rng.unitary(copies));
}

} // namespace ckd
