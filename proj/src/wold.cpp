#include "ckd/dilate.hpp"

#include <sstream>

#include "ckd/errors.hpp"
#include "ckd/pieces.hpp"

namespace ckd {

namespace {

Mat eigen_frame(const Mat& h, double above) {
    const HermEig eg = eig_desc(h);
    Eigen::Index k = 0;
    while (k < eg.values.size() && eg.values(k) > above) ++k;
    return eg.vectors.leftCols(k);
}

} // namespace

WoldResult wold(const OperatorTuple& t, const TransitionMatrix& a, int k_max, double tol) {
    if (a.n() != t.n()) throw std::invalid_argument("alphabet size of A and tuple differ");
    const auto ps = level_projections(t, a, k_max + 1);
    WoldResult w;
    int stable = -1;
    for (int k = 0; k + 1 < static_cast<int>(ps.size()); ++k) {
        w.steps.push_back(op_norm(Mat(ps[k + 1] - ps[k])));
        const std::size_t s = w.steps.size();
        if (s >= 2 && w.steps[s - 1] <= tol && w.steps[s - 2] <= tol) {
            stable = k + 1;
            break;
        }
    }
    if (stable < 0) {
        std::ostringstream os;
        os << "level projections did not stabilize within " << k_max << " steps";
        throw StabilizationError(os.str(), w.steps);
    }
    w.stable_at = stable;
    w.P_N = hermitize(ps[stable]);
    const int d = t.dim();
    // P_N is a projection for Cuntz-Krieger families; split its spectrum at 1/2.
    w.H_N = eigen_frame(w.P_N, 0.5);
    w.wandering = eigen_frame(identity(d) - row_square(t), 1e-8);
    w.H_C = invariant_span(t, w.wandering, 1e-9);
    for (int i = 1; i <= t.n(); ++i)
        w.ck_residual = std::max(
            w.ck_residual, op_norm(Mat(t.op(i).adjoint() * t.op(i) - q_operator(t, a, i))));
    w.split_residual = op_norm(
        Mat(w.H_C * w.H_C.adjoint() + w.H_N * w.H_N.adjoint() - identity(d)));
    return w;
}

} // namespace ckd
