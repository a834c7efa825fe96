#include "ckd/variety.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ckd {

GraphSummary symmetrize(const ZeroOneMatrix& a) {
    const int n = static_cast<int>(a.size());
    GraphSummary g;
    g.A_sym.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(a[i].size()) != n) throw std::invalid_argument("matrix must be square");
        for (int j = 0; j < n; ++j) g.A_sym[i][j] = a[i][j] * a[j][i];
    }
    for (int i = 0; i < n; ++i) {
        if (g.A_sym[i][i] == 0) g.zero_vertices.push_back(i + 1);
        for (int j = i + 1; j < n; ++j)
            if (g.A_sym[i][j]) g.edges.emplace_back(i + 1, j + 1);
    }
    return g;
}

GraphSummary symmetrize(const TransitionMatrix& a) { return symmetrize(a.rows()); }

std::vector<std::vector<int>> admissible_supports(const GraphSummary& g) {
    const int n = g.n();
    if (n > 20) throw std::invalid_argument("support enumeration limited to n <= 20");
    std::vector<std::uint32_t> adj(n, 0);
    std::uint32_t live = 0;
    for (int i = 0; i < n; ++i) {
        if (g.A_sym[i][i]) live |= 1u << i;
        for (int j = 0; j < n; ++j)
            if (j != i && g.A_sym[i][j]) adj[i] |= 1u << j;
    }
    auto is_clique = [&](std::uint32_t s) {
        for (int i = 0; i < n; ++i)
            if ((s >> i & 1u) && (s & ~(1u << i) & ~adj[i])) return false;
        return true;
    };
    std::vector<std::uint32_t> cliques;
    for (std::uint32_t s = 1; s < (1u << n); ++s)
        if ((s & ~live) == 0 && is_clique(s)) cliques.push_back(s);
    std::vector<std::vector<int>> out;
    for (auto s : cliques) {
        bool maximal = true;
        for (int i = 0; i < n && maximal; ++i)
            if (!(s >> i & 1u) && (live >> i & 1u) && (adj[i] & s) == s) maximal = false;
        if (!maximal) continue;
        std::vector<int> set;
        for (int i = 0; i < n; ++i)
            if (s >> i & 1u) set.push_back(i + 1);
        out.push_back(std::move(set));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Membership membership(const TransitionMatrix& a, const Vec& z) {
    if (z.size() != a.n()) throw std::invalid_argument("point has wrong number of coordinates");
    Membership m;
    m.norm_residual = std::abs(z.squaredNorm() - 1.0);
    for (int i = 1; i <= a.n(); ++i)
        for (int j = 1; j <= a.n(); ++j)
            if (a(i, j) == 0)
                m.relation_residual = std::max(m.relation_residual, std::abs(z(i - 1) * z(j - 1)));
    return m;
}

bool point_in_M(const TransitionMatrix& a, const Vec& z, double tol) {
    const Membership m = membership(a, z);
    return m.norm_residual <= tol && m.relation_residual <= tol;
}

bool point_in_M_by_supports(const GraphSummary& g, const Vec& z, double tol) {
    if (z.size() != g.n()) throw std::invalid_argument("point has wrong number of coordinates");
    if (std::abs(z.squaredNorm() - 1.0) > tol) return false;
    std::vector<int> supp;
    for (int i = 0; i < g.n(); ++i)
        if (std::abs(z(i)) > tol) supp.push_back(i + 1);
    for (const auto& s : admissible_supports(g))
        if (std::includes(s.begin(), s.end(), supp.begin(), supp.end())) return true;
    return false;
}

CkState ck_state_gns(const TransitionMatrix& a, const Vec& z, int m, double tol) {
    Membership mem = membership(a, z);
    if (mem.norm_residual > tol || mem.relation_residual > tol)
        throw std::domain_error("point is not on the variety M");
    std::vector<Mat> scal;
    for (Eigen::Index i = 0; i < z.size(); ++i) scal.push_back(Mat::Constant(1, 1, z(i)));
    const OperatorTuple t(std::move(scal));
    CkState out{dilate_kernel(t, a, m, tol), {}, 0.0};
    const KernelDilation& kd = out.dilation;

    const auto words = enumerate_up_to(a, std::max(0, m - 2));
    std::vector<Mat> adj;
    for (const auto& w : words) {
        Mat x = kd.embedding;
        for (int l : w) x = kd.ops[l - 1].adjoint() * x;
        adj.push_back(std::move(x));
    }
    auto zpow = [&](const Word& w) {
        cd p = 1.0;
        for (int l : w) p *= z(l - 1);
        return p;
    };
    for (std::size_t u = 0; u < words.size(); ++u)
        for (std::size_t v = 0; v < words.size(); ++v) {
            StateEntry e{words[u], words[v], (adj[u].adjoint() * adj[v])(0, 0),
                         zpow(words[u]) * std::conj(zpow(words[v]))};
            out.max_deviation = std::max(out.max_deviation, std::abs(e.value - e.expected));
            out.table.push_back(std::move(e));
        }
    return out;
}

} // namespace ckd
