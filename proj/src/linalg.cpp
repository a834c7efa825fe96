#include "ckd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ckd {

double op_norm(const Mat& m) {
    if (m.size() == 0) return 0.0;
    // Exact identities produce exact zeros; skip the SVD for them.
    if (m.cwiseAbs().maxCoeff() == 0.0) return 0.0;
    if (m.rows() == 1 || m.cols() == 1) return m.norm();
    // Largest eigenvalue of the smaller Gram matrix.  Only the top of the spectrum
    // is needed, so squaring costs no accuracy here.
    const Mat g = m.rows() <= m.cols() ? Mat(m * m.adjoint()) : Mat(m.adjoint() * m);
    Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues()(g.rows() - 1)));
}

double op_norm(const SpMat& m) {
    if (m.size() == 0 || m.nonZeros() == 0) return 0.0;
    if (m.rows() == 1 || m.cols() == 1) return m.norm();
    // Form the Gram matrix of the smaller side sparsely; tall iterates are common.
    const Mat g = m.rows() <= m.cols() ? Mat(SpMat(m * SpMat(m.adjoint())))
                                       : Mat(SpMat(SpMat(m.adjoint()) * m));
    if (g.cwiseAbs().maxCoeff() == 0.0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(g), Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues()(g.rows() - 1)));
}

double max_abs(const Mat& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

Mat hermitize(const Mat& m) { return (m + m.adjoint()) * 0.5; }

HermEig eig_desc(const Mat& m) {
    HermEig out;
    if (m.rows() == 0) return out;
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(m));
    // Eigen returns ascending order.
    out.values = es.eigenvalues().reverse();
    out.vectors = es.eigenvectors().rowwise().reverse();
    return out;
}

double min_eig(const Mat& m) {
    if (m.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

Mat psd_sqrt(const Mat& m) {
    if (m.rows() == 0) return m;
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(m));
    RealVec ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.cast<cd>().asDiagonal() * es.eigenvectors().adjoint();
}

Mat range_basis(const Mat& m, double rel, double abs_floor) {
    if (m.size() == 0) return Mat(m.rows(), 0);
    // JacobiSVD: the divide-and-conquer SVD of Eigen 3.4.0 returns wrong factors for
    // some rank-deficient inputs.
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
    const RealVec& s = svd.singularValues();
    const double cut = std::max(rel * s(0), abs_floor);
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > cut) ++r;
    return svd.matrixU().leftCols(r);
}

int numerical_rank(const Mat& m, double cutoff) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Mat> svd(m);
    const RealVec& s = svd.singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff) ++r;
    return r;
}

Mat complement(const Mat& frame, Eigen::Index ambient) {
    const Eigen::Index k = frame.cols();
    if (k == 0) return identity(ambient);
    if (k >= ambient) return Mat(ambient, 0);
    Eigen::HouseholderQR<Mat> qr(frame);
    Mat q = qr.householderQ() * identity(ambient);
    return q.rightCols(ambient - k);
}

Mat pinv(const Mat& m, double rel) {
    if (m.size() == 0) return Mat(m.cols(), m.rows());
    Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVec& s = svd.singularValues();
    const double cut = rel * s(0);
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > cut) ++r;
    RealVec inv = s.head(r).cwiseInverse();
    return svd.matrixV().leftCols(r) * inv.cast<cd>().asDiagonal() *
           svd.matrixU().leftCols(r).adjoint();
}

double principal_angle(const Mat& f1, const Mat& f2) {
    if (f1.cols() != f2.cols()) return std::numbers::pi / 2;
    if (f1.cols() == 0) return 0.0;
    Mat resid = f1 - f2 * (f2.adjoint() * f1);
    return std::asin(std::min(1.0, op_norm(resid)));
}

Mat direct_sum(const Mat& a, const Mat& b) {
    Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

SpMat kron_identity(const SpMat& a, Eigen::Index k) {
    std::vector<Eigen::Triplet<cd>> trip;
    trip.reserve(a.nonZeros() * k);
    for (int c = 0; c < a.outerSize(); ++c)
        for (SpMat::InnerIterator it(a, c); it; ++it)
            for (Eigen::Index t = 0; t < k; ++t)
                trip.emplace_back(it.row() * k + t, it.col() * k + t, it.value());
    SpMat out(a.rows() * k, a.cols() * k);
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

SpMat to_sparse(const Mat& m) { return m.sparseView(cd(0.0), 0.0); }

Mat identity(Eigen::Index d) { return Mat::Identity(d, d); }

} // namespace ckd
