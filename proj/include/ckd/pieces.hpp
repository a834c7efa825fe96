#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ckd/linalg.hpp"
#include "ckd/tuples.hpp"
#include "ckd/words.hpp"

namespace ckd {

inline constexpr double kPieceTol = 1e-9;

/// Noncommutative polynomial sum c_w z^w.  Terms are kept sorted by word
/// (length-lex) with duplicates merged and zero coefficients dropped.
class NcPoly {
public:
    NcPoly() = default;
    explicit NcPoly(std::vector<std::pair<cd, Word>> terms);

    const std::vector<std::pair<cd, Word>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const NcPoly&) const = default;
    std::string to_string() const;

private:
    std::vector<std::pair<cd, Word>> terms_;
};

using PolySet = std::vector<NcPoly>;

/// Frame with orthonormal columns inside C^ambient_dim.
struct Subspace {
    int ambient_dim = 0;
    Mat frame;
    int dim() const { return static_cast<int>(frame.cols()); }
    Mat projector() const { return frame * frame.adjoint(); }
    static Subspace whole(int d) { return {d, identity(d)}; }
};

Mat eval_poly(const NcPoly& p, const OperatorTuple& r);

/// Orthonormal frame of the smallest subspace containing span(seed) and invariant
/// under every R_i.  Directions below cut (absolute) are dropped.
Mat invariant_span(const OperatorTuple& r, const Mat& seed, double cut);

/// Complement of the smallest R-invariant subspace containing every range(p(R)).
Subspace maximal_piece(const OperatorTuple& r, const PolySet& ps, double tol = kPieceTol);

/// Brute force: kernel of all (R^a p(R) R^b)^* over words |a|, |b| <= l_max.
Subspace maximal_piece_oracle(const OperatorTuple& r, const PolySet& ps, int l_max,
                              double tol = kPieceTol);

/// frame^* R_i frame.
OperatorTuple compress(const OperatorTuple& r, const Subspace& s);

struct PieceCompression {
    OperatorTuple tuple;
    double coinvariance = 0.0; // max ||(I - PP^*) R_i^* P||
    double relations = 0.0;    // max ||p(compressed)||
};

/// Compression to a piece; throws std::domain_error if co-invariance fails beyond tol.
PieceCompression compress_piece(const OperatorTuple& r, const Subspace& s, const PolySet& ps,
                                double tol = kPieceTol);

/// max ||(I - PP^*) R_i^* P|| over i.
double coinvariance_residual(const OperatorTuple& r, const Subspace& s);

enum class PresetKind { ARelation, Commuting, QCommuting, Fermionic };

/// Polynomial families: z_l z_m for a_lm = 0; z_l z_m - z_m z_l for l < m;
/// z_j z_i - q_ij z_i z_j; and the fermionic family (q = -1 off the diagonal
/// together with A = 1 - identity).  Zero members are dropped, duplicates removed.
PolySet preset(const TransitionMatrix& a, PresetKind kind, const std::optional<Mat>& q = {});

/// Parses "a", "c", "q", "fermionic", "union" (= a and c) or a comma-separated
/// combination; the result is the union of the families.
PolySet preset_by_name(const TransitionMatrix& a, const std::string& spec,
                       const std::optional<Mat>& q = {});

/// Intersection of two subspaces of the same ambient space.
Subspace intersect(const Subspace& s1, const Subspace& s2, double tol = kPieceTol);

double subspace_distance(const Subspace& s1, const Subspace& s2);

} // namespace ckd
