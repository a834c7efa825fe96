#pragma once

#include <vector>

#include "ckd/linalg.hpp"
#include "ckd/words.hpp"

namespace ckd {

inline constexpr double kDefaultTol = 1e-10;

/// n complex d x d matrices T_1..T_n.
class OperatorTuple {
public:
    OperatorTuple() = default;
    explicit OperatorTuple(std::vector<Mat> mats);

    int n() const { return static_cast<int>(mats_.size()); }
    int dim() const { return dim_; }
    /// T_i for a 1-based letter i.
    const Mat& op(int letter) const { return mats_[letter - 1]; }
    const std::vector<Mat>& mats() const { return mats_; }

    OperatorTuple scaled(double r) const;
    /// U^* T_i U for each i.
    OperatorTuple conjugated(const Mat& u) const;

private:
    std::vector<Mat> mats_;
    int dim_ = 0;
};

OperatorTuple direct_sum(const OperatorTuple& a, const OperatorTuple& b);
/// (T_i (x) I_k).
OperatorTuple tensor_identity(const OperatorTuple& t, int k);

/// T^w; the empty word gives the identity.
Mat eval_word(const OperatorTuple& t, const Word& w);

/// sum_i T_i T_i^*.
Mat row_square(const OperatorTuple& t);

struct RowContraction {
    bool contractive = false;
    bool unital = false;
    double deficiency = 0.0; // ||I - sum T_i T_i^*||
    double min_eig = 0.0;    // of I - sum T_i T_i^*
};

RowContraction is_row_contraction(const OperatorTuple& t, double tol = kDefaultTol);

struct ARelationReport {
    bool holds = true;
    double max_violation = 0.0;
    int worst_i = 0; // 1-based, 0 if there is no constrained pair
    int worst_j = 0;
};

ARelationReport satisfies_A_relations(const OperatorTuple& t, const TransitionMatrix& a,
                                      double tol = kDefaultTol);

/// (I - sum T_i T_i^*)^{1/2}.  Throws std::domain_error if T is not contractive within tol.
Mat defect(const OperatorTuple& t, double tol = kDefaultTol);

/// Q_i = I - sum_j (1 - a_ij) T_j T_j^*.
Mat q_operator(const OperatorTuple& t, const TransitionMatrix& a, int i);

/// P_k = sum over admissible |w| = k of T^w (T^w)^*, for k = 0..k_max.
std::vector<Mat> level_projections(const OperatorTuple& t, const TransitionMatrix& a,
                                   int k_max);

/// p_m = ||P_m|| for m = 1..m_max.
std::vector<double> purity_profile(const OperatorTuple& t, const TransitionMatrix& a,
                                   int m_max);

/// Source frames by word length.  An identity is certified for a word (or pair of
/// words) of length L only on the columns of frame(L).  An empty scope means the
/// whole space for every L.
struct LevelScope {
    std::vector<Mat> frames;
    Mat frame(std::size_t len, int dim) const;
};

struct PartialIsometryReport {
    double idempotent = 0.0;           // T_i T_i^* T_i = T_i
    double orthogonal_ranges = 0.0;    // T_i^* T_j = 0, i != j
    std::vector<double> ck_relation;   // per i: T_i^* T_i = I - sum_j (1-a_ij) T_j T_j^*
    double ck_relation_max = 0.0;
    double word_partial_isometry = 0.0; // T^w (T^w)^* T^w = T^w, admissible 1 <= |w| <= L
    double word_orthogonality = 0.0;    // (T^u)^* T^v against the case formula
    int word_len = 0;
};

/// Expected value of (T^u)^* T^v for a Cuntz-Krieger family: Q_t(u) T^g if v = ug,
/// the adjoint case if u = vg, Q_t(u) on the diagonal, identity/T^v/T^u* when a
/// word is empty, and zero otherwise.
Mat word_pair_expected(const OperatorTuple& t, const TransitionMatrix& a, const Word& u,
                       const Word& v);

PartialIsometryReport partial_isometry_checks(const OperatorTuple& t, const TransitionMatrix& a,
                                              int word_len, const LevelScope& scope = {});
/// Same checks for a tuple of sparse matrices (Fock-space operators).
PartialIsometryReport partial_isometry_checks(const std::vector<SpMat>& ops,
                                              const TransitionMatrix& a, int word_len,
                                              const LevelScope& scope = {});

struct SphericalReport {
    bool spherical = false;
    double commutator = 0.0;      // max ||[T_i, T_j]||
    double self_commutator = 0.0; // max ||[T_i, T_i^*]||
    double unitality = 0.0;       // ||I - sum T_i T_i^*||
};

SphericalReport is_spherical_unitary(const OperatorTuple& t, double tol = kDefaultTol);

} // namespace ckd
