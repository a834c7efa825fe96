#pragma once

#include <utility>
#include <vector>

#include "ckd/dilate.hpp"
#include "ckd/linalg.hpp"
#include "ckd/words.hpp"

namespace ckd {

/// Symmetrized graph a'_ij = a_ij a_ji.  A' may have zero rows, so it is kept
/// as a plain 0-1 matrix.
struct GraphSummary {
    ZeroOneMatrix A_sym;
    std::vector<int> zero_vertices;              // 1-based, a'_ii = 0
    std::vector<std::pair<int, int>> edges;      // i < j with a'_ij = 1
    int n() const { return static_cast<int>(A_sym.size()); }
};

GraphSummary symmetrize(const ZeroOneMatrix& a);
GraphSummary symmetrize(const TransitionMatrix& a);

/// Maximal sets of non-zero vertices that are pairwise adjacent in A', each sorted,
/// listed in lexicographic order.  Requires n <= 20.
std::vector<std::vector<int>> admissible_supports(const GraphSummary& g);

struct Membership {
    bool in_M = false;
    double norm_residual = 0.0;     // |sum |z_i|^2 - 1|
    double relation_residual = 0.0; // max |z_i z_j (1 - a_ij)|
};

Membership membership(const TransitionMatrix& a, const Vec& z);
bool point_in_M(const TransitionMatrix& a, const Vec& z, double tol = 1e-12);

/// Membership through the support description: the support of z (entries above
/// tol) lies inside one admissible support and ||z|| = 1.
bool point_in_M_by_supports(const GraphSummary& g, const Vec& z, double tol = 1e-12);

struct StateEntry {
    Word u, v;
    cd value;    // <E, T~^u (T~^v)^* E>
    cd expected; // z^u conj(z^v)
};

struct CkState {
    KernelDilation dilation;
    std::vector<StateEntry> table;
    double max_deviation = 0.0;
};

/// GNS space of the Cuntz-Krieger state of z, realized as the kernel dilation of
/// the scalar tuple z at level m.  The table covers admissible |u|, |v| <= m - 2.
/// Throws std::domain_error if z is not in M.
CkState ck_state_gns(const TransitionMatrix& a, const Vec& z, int m, double tol = 1e-10);

} // namespace ckd
