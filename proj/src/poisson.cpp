#include "ckd/dilate.hpp"

#include <sstream>

#include "ckd/errors.hpp"

namespace ckd {

PoissonDilation dilate_poisson(const OperatorTuple& t, const TransitionMatrix& a, int N,
                               std::optional<double> r, double tol) {
    if (a.n() != t.n()) throw std::invalid_argument("alphabet size of A and tuple differ");
    if (N < 1) throw std::invalid_argument("Poisson truncation level must be >= 1");
    if (r && (*r <= 0.0 || *r > 1.0)) throw std::invalid_argument("r must lie in (0, 1]");
    const OperatorTuple tr = r ? t.scaled(*r) : t;
    if (!satisfies_A_relations(tr, a, tol).holds)
        throw std::domain_error("Poisson dilation needs a tuple satisfying A-relations");
    if (!r) {
        auto prof = purity_profile(t, a, N);
        if (prof.back() > tol) {
            std::ostringstream os;
            os << "tuple is not pure at level " << N << " (p_N = " << prof.back()
               << "); supply r < 1";
            throw PurityError(os.str(), std::move(prof));
        }
    }

    PoissonDilation pd;
    pd.method = "poisson";
    pd.level = N;
    pd.r = r.value_or(1.0);
    const Mat delta = defect(tr, tol);
    const Mat gap = identity(t.dim()) - row_square(tr);
    const HermEig eg = eig_desc(gap);
    Eigen::Index rd = 0;
    while (rd < eg.values.size() && eg.values(rd) > tol) ++rd;
    pd.defect_basis = eg.vectors.leftCols(rd);
    pd.defect_rank = static_cast<int>(rd);

    const TruncatedFock f(a, N);
    pd.fock_dim = f.dim();
    for (const auto& s : creation_S(f)) pd.ops.push_back(kron_identity(s, rd));

    // (T^w)^* from the word with its last letter removed.
    const Mat coord = pd.defect_basis.adjoint() * delta;
    std::vector<Mat> adj(f.dim());
    pd.embedding = Mat::Zero(static_cast<Eigen::Index>(f.dim()) * rd, t.dim());
    for (int k = 0; k < f.dim(); ++k) {
        const Word& w = f.basis()[k];
        adj[k] = w.empty() ? identity(t.dim())
                           : Mat(tr.op(w.back()).adjoint() * adj[f.find(Word(w.begin(), w.end() - 1))]);
        pd.embedding.middleRows(k * rd, rd) = coord * adj[k];
    }
    pd.isometry_defect =
        op_norm(Mat(pd.embedding.adjoint() * pd.embedding - identity(t.dim())));
    return pd;
}

double gram_equivalence(const OperatorTuple& t, const TransitionMatrix& a, int m, int N,
                        double tol) {
    const KernelDilation kd = dilate_kernel(t, a, m, tol);
    const PoissonDilation pd = dilate_poisson(t, a, N, {}, tol);
    const auto words = enumerate_up_to(a, m - 1);
    auto images = [&](const DilationResult& dr) {
        std::vector<Mat> out;
        for (const auto& w : words) {
            Mat x = dr.embedding;
            for (auto it = w.rbegin(); it != w.rend(); ++it) x = dr.ops[*it - 1] * x;
            out.push_back(std::move(x));
        }
        return out;
    };
    const auto xk = images(kd);
    const auto xp = images(pd);
    double worst = 0.0;
    for (std::size_t u = 0; u < words.size(); ++u)
        for (std::size_t v = 0; v < words.size(); ++v)
            worst = std::max(worst, max_abs(Mat(xk[u].adjoint() * xk[v] - xp[u].adjoint() * xp[v])));
    return worst;
}

} // namespace ckd
