#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace ckd {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using SpMat = Eigen::SparseMatrix<cd>;
using RealVec = Eigen::VectorXd;

/// Largest singular value; 0 for empty matrices.
double op_norm(const Mat& m);
double op_norm(const SpMat& m);

/// Largest absolute entry.  Used where identities are expected to hold exactly.
double max_abs(const Mat& m);

Mat hermitize(const Mat& m);

struct HermEig {
    RealVec values; // descending
    Mat vectors;    // columns match values
};

/// Eigendecomposition of the Hermitian part of m, sorted by descending eigenvalue.
HermEig eig_desc(const Mat& m);

double min_eig(const Mat& m);

/// PSD square root.  Eigenvalues in [-clip, 0) are treated as zero.
Mat psd_sqrt(const Mat& m);

/// Orthonormal basis of range(m).  Singular values are kept if they exceed
/// max(rel * sigma_max, abs_floor).
Mat range_basis(const Mat& m, double rel, double abs_floor = 0.0);

int numerical_rank(const Mat& m, double cutoff);

/// Orthonormal basis of the orthogonal complement of span(frame) in C^ambient.
/// frame must have orthonormal columns.
Mat complement(const Mat& frame, Eigen::Index ambient);

/// Moore-Penrose pseudo-inverse with singular values below rel * sigma_max dropped.
Mat pinv(const Mat& m, double rel);

/// Largest principal angle between the spans of two orthonormal frames.
/// Frames of different dimension are pi/2 apart.
double principal_angle(const Mat& f1, const Mat& f2);

Mat direct_sum(const Mat& a, const Mat& b);
Mat kron(const Mat& a, const Mat& b);
SpMat kron_identity(const SpMat& a, Eigen::Index k);
SpMat to_sparse(const Mat& m);
Mat identity(Eigen::Index d);

} // namespace ckd
