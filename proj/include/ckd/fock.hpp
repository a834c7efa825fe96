#pragma once

#include <map>
#include <vector>

#include "ckd/linalg.hpp"
#include "ckd/tuples.hpp"
#include "ckd/words.hpp"

namespace ckd {

/// Span of e^w for admissible words |w| <= N, basis in length-lex order.
/// The full Fock space is the case A = all ones.
class TruncatedFock {
public:
    TruncatedFock(const TransitionMatrix& a, int N);
    static TruncatedFock full(int n, int N);

    const TransitionMatrix& A() const { return a_; }
    int n() const { return a_.n(); }
    int level() const { return N_; }
    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Word>& basis() const { return basis_; }
    /// Basis position of w, or -1 if w is not a basis word.
    int find(const Word& w) const;
    /// Number of basis words of length <= k.
    int dim_up_to(int k) const;
    /// Coordinate frame of the basis words of length <= k.
    Mat level_frame(int k) const;
    /// Coordinate frame of the basis words satisfying pred.
    template <class Pred>
    Mat frame_where(Pred pred) const {
        std::vector<int> cols;
        for (int k = 0; k < dim(); ++k)
            if (pred(basis_[k])) cols.push_back(k);
        Mat f = Mat::Zero(dim(), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c) f(cols[c], static_cast<Eigen::Index>(c)) = 1.0;
        return f;
    }
    /// Scope under which an identity for words of length L holds on levels <= N - L.
    LevelScope interior_scope() const;

private:
    TransitionMatrix a_;
    int N_;
    std::vector<Word> basis_;
    std::map<Word, int> index_;
    std::vector<int> level_end_;
};

/// S_i: e^w -> e^{iw} when iw is admissible and |w| < N, else 0.
std::vector<SpMat> creation_S(const TruncatedFock& f);
/// Adjoints of creation_S.
std::vector<SpMat> annihilation_S_star(const TruncatedFock& f);
/// Deletion of the first letter, built directly from the basis (e^{iw} -> e^w).
std::vector<SpMat> deletion_formula(const TruncatedFock& f);
/// X_i: e^w -> e^{wi} when wi is admissible and |w| < N, else 0.
std::vector<SpMat> creation_X(const TruncatedFock& f);
/// Rank-one projection onto the vacuum.
Mat vacuum_projection(const TruncatedFock& f);

OperatorTuple dense_tuple(const std::vector<SpMat>& ops);

/// max ||S^a X^{b'} e^g - X^{b'} S^a e^g|| over admissible a, b, g with
/// |a| + |b| + |g| <= max_total_len; b' is b reversed.
double commutant_check(const TruncatedFock& f, int max_total_len);

/// Commuting A-Fock space: orbit representatives (sorted letter multisets) of
/// words whose letters pairwise satisfy a_{xy} a_{yx} = 1 at distinct positions.
struct SymTruncatedFock {
    TruncatedFock ambient;
    std::vector<Word> reps;             // length-lex
    std::vector<double> orbit_size;     // number of distinct rearrangements
    Mat embed;                          // ambient.dim() x reps.size(), orthonormal columns
    int dim() const { return static_cast<int>(reps.size()); }
    int find(const Word& sorted_rep) const;
};

SymTruncatedFock build_sym_fock(const TransitionMatrix& a, int N);

/// W_i in the symmetrized basis from the orbit-size formula.
std::vector<Mat> creation_W(const SymTruncatedFock& fs);

/// Eigenvalue of [W_i, W_i^*] = W_i W_i^* - W_i^* W_i on the symmetrized vector of
/// rep (|rep| = m >= 1): c/m - (c+1)/(m+1) if the letter i can be added, else c/m,
/// where c counts occurrences of i in rep.
double w_commutator_value(const SymTruncatedFock& fs, int i, const Word& rep);

} // namespace ckd
