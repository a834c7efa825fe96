#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ckd/fock.hpp"
#include "ckd/linalg.hpp"
#include "ckd/tuples.hpp"
#include "ckd/words.hpp"

namespace ckd {

inline constexpr double kDilationTol = 1e-9;

/// Block matrix K(u, v) over admissible words |u|, |v| <= m, d x d blocks:
/// I at (0,0), Q_t(u) at (u,u), T^g when v = ug, (T^g)^* when u = vg, else 0.
struct KernelGram {
    int m = 0;
    int d = 0;
    std::vector<Word> words; // length-lex
    Mat matrix;              // assembled, (words.size() * d) square
    Mat block(std::size_t u, std::size_t v) const {
        return matrix.block(static_cast<Eigen::Index>(u) * d, static_cast<Eigen::Index>(v) * d, d, d);
    }
    int find(const Word& w) const;
};

/// Throws std::domain_error unless T is contractive and satisfies A-relations within tol.
KernelGram kernel_gram(const OperatorTuple& t, const TransitionMatrix& a, int m,
                       double tol = kDefaultTol);

double kernel_psd_check(const KernelGram& g);

struct FactorizationCheck {
    double residual = 0.0;
    bool augmented = false;       // the tuple was extended by its defect
    double augmented_relations = 0.0; // A-relation violation of the extended tuple
};

/// ||K^(m) - L_1 ... L_m Q^(m) L_m^* ... L_1^*||.  Non-unital tuples are first
/// extended to (T_1, ..., T_n, Delta_T) with A extended by ones.
FactorizationCheck kernel_factorization_check(const OperatorTuple& t, const TransitionMatrix& a,
                                              int m, double tol = kDefaultTol);

/// Dilation tuple on a constructed space plus the isometric embedding of H.
struct DilationResult {
    std::string method;
    int level = 0;
    std::vector<SpMat> ops;
    Mat embedding;

    int dim() const { return ops.empty() ? 0 : static_cast<int>(ops.front().rows()); }
    int n() const { return static_cast<int>(ops.size()); }
    OperatorTuple dense() const;
};

struct KernelDilation : DilationResult {
    Mat factor;                    // F with G = F^* F; columns indexed by (word, basis vector)
    RealVec gram_eigenvalues;      // descending, before clipping
    int gram_rank = 0;
    std::vector<Mat> level_frames; // orthonormal frames of span{lambda(w,u): |w| <= k}
    /// Word length L is certified on levels <= m - L.
    LevelScope scope() const;
};

KernelDilation dilate_kernel(const OperatorTuple& t, const TransitionMatrix& a, int m,
                             double tol = kDefaultTol);

struct PoissonDilation : DilationResult {
    double r = 1.0;
    Mat defect_basis; // orthonormal basis of range(Delta) in C^d
    int defect_rank = 0;
    int fock_dim = 0;
    double isometry_defect = 0.0; // ||K^* K - I||
};

/// K h = sum_w e^w (x) Delta (T^w)^* h over admissible |w| <= N, with (S_i (x) I).
/// With r given, the same for rT.  Without r, T must be pure at level N.
PoissonDilation dilate_poisson(const OperatorTuple& t, const TransitionMatrix& a, int N,
                               std::optional<double> r = {}, double tol = kDefaultTol);

struct SchafferDilation : DilationResult {
    Mat D;            // (I - R^* R)^{1/2}, R = [T_1 ... T_n]
    Mat defect_basis; // orthonormal basis of range(D) in C^{nd}
    bool D_is_projection = false;
    int fock_dim = 0;
};

/// Minimal isometric dilation on H (+) (full Fock level N (x) range D).
SchafferDilation dilate_isometric_schaffer(const OperatorTuple& t, int N, double tol = kDefaultTol);

/// Coordinates of the Fock part of a Schaffer dilation up to level k.
Mat schaffer_level_frame(const SchafferDilation& s, int k);

/// max ||ops_i^* E - E T_i^*||.
double coinvariance_residual(const DilationResult& dr, const OperatorTuple& t);

/// max over admissible |u|, |v| <= len of ||E^* T~^u (T~^v)^* E - T^u (T^v)^*||.
double compression_residual(const DilationResult& dr, const OperatorTuple& t,
                            const TransitionMatrix& a, int len);

/// max over a_ij = 0 and |w| <= N - 2 of ||(L^w L_i L_j)^* E||, with T~ the kernel
/// dilation at level m and L its Schaffer dilation at level N.
double annihilation_check(const OperatorTuple& t, const TransitionMatrix& a, int m, int N,
                          double tol = kDefaultTol);
/// The same residual for a given Schaffer dilation.
double annihilation_residual(const SchafferDilation& s, const TransitionMatrix& a);

/// Ranks of I - sum T^ T^^*, I - sum T~ T~^*, I - sum T T^* (Schaffer, kernel, input).
/// Cutoff 1e-8 * max(sigma_max, 1).
std::array<int, 3> defect_rank_triple(const OperatorTuple& t, const TransitionMatrix& a,
                                      int m, int N);

int defect_rank(const Mat& gap);

/// Purity profile of the compression of T~ to the complement of the embedded H.
std::vector<double> q_purity_check(const KernelDilation& kd, const TransitionMatrix& a, int depth);

/// max |<T~^u x, T~^v y>_kernel - <(S^u (x) I) K x, (S^v (x) I) K y>_poisson|
/// over admissible |u|, |v| <= m - 1 and basis vectors x, y.
double gram_equivalence(const OperatorTuple& t, const TransitionMatrix& a, int m, int N,
                        double tol = kDefaultTol);

struct WoldResult {
    Mat P_N;                      // limit of the level projections
    Mat H_C;                      // frame of the invariant span of the wandering subspace
    Mat H_N;                      // frame of range(P_N)
    Mat wandering;                // frame of range(I - sum T_i T_i^*)
    std::vector<double> steps;    // ||P_{k+1} - P_k||
    int stable_at = 0;
    double ck_residual = 0.0;     // T_i^* T_i = Q_i, reported only
    double split_residual = 0.0;  // ||P_C + P_N - I|| with P_C onto H_C
};

/// Throws StabilizationError (carrying the step profile) if the level projections
/// do not settle within k_max.
WoldResult wold(const OperatorTuple& t, const TransitionMatrix& a, int k_max,
                double tol = kDefaultTol);

} // namespace ckd
