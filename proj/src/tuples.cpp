#include "ckd/tuples.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "ckd/errors.hpp"

namespace ckd {

OperatorTuple::OperatorTuple(std::vector<Mat> mats) : mats_(std::move(mats)) {
    if (mats_.empty()) throw ParseError("operator tuple must contain at least one matrix");
    dim_ = static_cast<int>(mats_.front().rows());
    if (dim_ == 0) throw ParseError("operator tuple matrices must be non-empty");
    for (const auto& m : mats_)
        if (m.rows() != dim_ || m.cols() != dim_)
            throw ParseError("operator tuple matrices must be square of equal size");
    for (const auto& m : mats_)
        if (!m.allFinite()) throw ParseError("operator tuple entries must be finite");
}

OperatorTuple OperatorTuple::scaled(double r) const {
    std::vector<Mat> out;
    for (const auto& m : mats_) out.push_back(r * m);
    return OperatorTuple(std::move(out));
}

OperatorTuple OperatorTuple::conjugated(const Mat& u) const {
    std::vector<Mat> out;
    for (const auto& m : mats_) out.push_back(u.adjoint() * m * u);
    return OperatorTuple(std::move(out));
}

OperatorTuple direct_sum(const OperatorTuple& a, const OperatorTuple& b) {
    if (a.n() != b.n()) throw std::invalid_argument("direct sum of tuples of different length");
    std::vector<Mat> out;
    for (int i = 1; i <= a.n(); ++i) out.push_back(direct_sum(a.op(i), b.op(i)));
    return OperatorTuple(std::move(out));
}

OperatorTuple tensor_identity(const OperatorTuple& t, int k) {
    std::vector<Mat> out;
    for (const auto& m : t.mats()) out.push_back(kron(m, identity(k)));
    return OperatorTuple(std::move(out));
}

Mat eval_word(const OperatorTuple& t, const Word& w) {
    check_letters(w, t.n());
    Mat out = identity(t.dim());
    for (int l : w) out = out * t.op(l);
    return out;
}

Mat row_square(const OperatorTuple& t) {
    Mat s = Mat::Zero(t.dim(), t.dim());
    for (const auto& m : t.mats()) s += m * m.adjoint();
    return s;
}

RowContraction is_row_contraction(const OperatorTuple& t, double tol) {
    Mat gap = identity(t.dim()) - row_square(t);
    RowContraction r;
    r.min_eig = min_eig(gap);
    r.deficiency = op_norm(gap);
    r.contractive = r.min_eig >= -tol;
    r.unital = r.deficiency <= tol;
    return r;
}

ARelationReport satisfies_A_relations(const OperatorTuple& t, const TransitionMatrix& a,
                                      double tol) {
    if (a.n() != t.n()) throw std::invalid_argument("alphabet size of A and tuple differ");
    ARelationReport r;
    for (int i = 1; i <= t.n(); ++i)
        for (int j = 1; j <= t.n(); ++j) {
            if (a(i, j)) continue;
            double v = op_norm(Mat(t.op(i) * t.op(j)));
            if (r.worst_i == 0 || v > r.max_violation) {
                r.max_violation = v;
                r.worst_i = i;
                r.worst_j = j;
            }
        }
    r.holds = r.max_violation <= tol;
    return r;
}

Mat defect(const OperatorTuple& t, double tol) {
    Mat gap = identity(t.dim()) - row_square(t);
    if (min_eig(gap) < -tol) throw std::domain_error("tuple is not a row contraction");
    // Eigenvalues at rounding level would turn into ~1e-8 entries after the square root.
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(gap));
    RealVec ev = es.eigenvalues();
    for (Eigen::Index k = 0; k < ev.size(); ++k) ev(k) = ev(k) <= tol ? 0.0 : std::sqrt(ev(k));
    return es.eigenvectors() * ev.cast<cd>().asDiagonal() * es.eigenvectors().adjoint();
}

Mat q_operator(const OperatorTuple& t, const TransitionMatrix& a, int i) {
    Mat q = identity(t.dim());
    for (int j = 1; j <= t.n(); ++j)
        if (a(i, j) == 0) q -= t.op(j) * t.op(j).adjoint();
    return q;
}

std::vector<Mat> level_projections(const OperatorTuple& t, const TransitionMatrix& a,
                                   int k_max) {
    // by_first[i] = sum over admissible |w| = k starting with letter i of T^w (T^w)^*.
    const int n = t.n();
    std::vector<Mat> out{identity(t.dim())};
    std::vector<Mat> by_first(n);
    for (int i = 0; i < n; ++i) by_first[i] = t.mats()[i] * t.mats()[i].adjoint();
    for (int k = 1; k <= k_max; ++k) {
        Mat p = Mat::Zero(t.dim(), t.dim());
        for (const auto& b : by_first) p += b;
        out.push_back(p);
        if (k == k_max) break;
        std::vector<Mat> next(n);
        for (int i = 1; i <= n; ++i) {
            Mat inner = Mat::Zero(t.dim(), t.dim());
            for (int j = 1; j <= n; ++j)
                if (a(i, j)) inner += by_first[j - 1];
            next[i - 1] = t.op(i) * inner * t.op(i).adjoint();
        }
        by_first.swap(next);
    }
    return out;
}

std::vector<double> purity_profile(const OperatorTuple& t, const TransitionMatrix& a,
                                   int m_max) {
    if (m_max < 1) throw std::invalid_argument("purity profile needs m_max >= 1");
    auto ps = level_projections(t, a, m_max);
    std::vector<double> out;
    for (int m = 1; m <= m_max; ++m) out.push_back(op_norm(ps[m]));
    return out;
}

Mat LevelScope::frame(std::size_t len, int dim) const {
    if (frames.empty()) return identity(dim);
    if (len < frames.size()) return frames[len];
    return Mat(dim, 0);
}

namespace {

// Shared by the dense and sparse entry points.  M is Mat or SpMat.
template <class M>
struct Family {
    const std::vector<M>& ops;
    const TransitionMatrix& a;
    int dim;

    M eye() const {
        M e(dim, dim);
        e.setIdentity();
        return e;
    }
    // Products are reused across the word pairs, so both are memoized.
    mutable std::map<Word, M> words_seen = {};
    mutable std::map<int, M> q_seen = {};

    const M& word(const Word& w) const {
        auto it = words_seen.find(w);
        if (it != words_seen.end()) return it->second;
        M out = w.empty() ? eye() : M(word(Word(w.begin(), w.end() - 1)) * ops[w.back() - 1]);
        return words_seen.emplace(w, std::move(out)).first->second;
    }
    const M& q(int i) const {
        auto it = q_seen.find(i);
        if (it != q_seen.end()) return it->second;
        M out = eye();
        for (int j = 1; j <= a.n(); ++j)
            if (a(i, j) == 0) out = M(out - ops[j - 1] * M(ops[j - 1].adjoint()));
        return q_seen.emplace(i, std::move(out)).first->second;
    }
    M expected(const Word& u, const Word& v, const M& tu, const M& tv) const {
        Word g;
        if (u == v) return u.empty() ? eye() : M(q(terminus(u)));
        if (proper_prefix(u, v, &g)) return u.empty() ? tv : M(q(terminus(u)) * word(g));
        if (proper_prefix(v, u, &g))
            return v.empty() ? M(tu.adjoint()) : M(M(word(g).adjoint()) * q(terminus(v)));
        M z(dim, dim);
        z.setZero();
        return z;
    }
};

template <class M>
double scoped_norm(const M& x, const Mat& f) {
    if (f.cols() == 0) return 0.0;
    return op_norm(Mat(x * f));
}

template <class M>
PartialIsometryReport run_checks(const Family<M>& fam, int word_len, const LevelScope& scope) {
    const int n = fam.a.n();
    const int d = fam.dim;
    PartialIsometryReport r;
    r.word_len = word_len;
    const Mat f1 = scope.frame(1, d);
    for (int i = 1; i <= n; ++i) {
        const M& ti = fam.ops[i - 1];
        const M tis = ti.adjoint();
        r.idempotent = std::max(r.idempotent, scoped_norm(M(M(ti * tis) * ti - ti), f1));
        for (int j = 1; j <= n; ++j)
            if (j != i)
                r.orthogonal_ranges =
                    std::max(r.orthogonal_ranges, scoped_norm(M(tis * fam.ops[j - 1]), f1));
        double ck = scoped_norm(M(tis * ti - fam.q(i)), f1);
        r.ck_relation.push_back(ck);
        r.ck_relation_max = std::max(r.ck_relation_max, ck);
    }
    const auto words = enumerate_up_to(fam.a, word_len);
    std::vector<M> vals;
    for (const auto& w : words) vals.push_back(fam.word(w));
    for (std::size_t k = 0; k < words.size(); ++k) {
        if (words[k].empty()) continue;
        const M& tw = vals[k];
        const M tws = tw.adjoint();
        r.word_partial_isometry = std::max(
            r.word_partial_isometry,
            scoped_norm(M(M(tw * tws) * tw - tw), scope.frame(words[k].size(), d)));
    }
    for (std::size_t p = 0; p < words.size(); ++p) {
        const M ps = vals[p].adjoint();
        for (std::size_t q = 0; q < words.size(); ++q) {
            if (words[p].empty() && words[q].empty()) continue;
            Mat f = scope.frame(std::max(words[p].size(), words[q].size()), d);
            M diff = M(ps * vals[q]) - fam.expected(words[p], words[q], vals[p], vals[q]);
            r.word_orthogonality = std::max(r.word_orthogonality, scoped_norm(diff, f));
        }
    }
    return r;
}

} // namespace

Mat word_pair_expected(const OperatorTuple& t, const TransitionMatrix& a, const Word& u,
                       const Word& v) {
    Family<Mat> fam{t.mats(), a, t.dim()};
    return fam.expected(u, v, fam.word(u), fam.word(v));
}

PartialIsometryReport partial_isometry_checks(const OperatorTuple& t, const TransitionMatrix& a,
                                              int word_len, const LevelScope& scope) {
    if (a.n() != t.n()) throw std::invalid_argument("alphabet size of A and tuple differ");
    return run_checks(Family<Mat>{t.mats(), a, t.dim()}, word_len, scope);
}

PartialIsometryReport partial_isometry_checks(const std::vector<SpMat>& ops,
                                              const TransitionMatrix& a, int word_len,
                                              const LevelScope& scope) {
    if (static_cast<int>(ops.size()) != a.n())
        throw std::invalid_argument("alphabet size of A and tuple differ");
    return run_checks(Family<SpMat>{ops, a, static_cast<int>(ops.front().rows())}, word_len,
                      scope);
}

SphericalReport is_spherical_unitary(const OperatorTuple& t, double tol) {
    SphericalReport r;
    for (int i = 1; i <= t.n(); ++i) {
        const Mat& ti = t.op(i);
        r.self_commutator = std::max(
            r.self_commutator, op_norm(Mat(ti * ti.adjoint() - ti.adjoint() * ti)));
        for (int j = i + 1; j <= t.n(); ++j)
            r.commutator =
                std::max(r.commutator, op_norm(Mat(ti * t.op(j) - t.op(j) * ti)));
    }
    r.unitality = op_norm(Mat(identity(t.dim()) - row_square(t)));
    r.spherical = r.commutator <= tol && r.self_commutator <= tol && r.unitality <= tol;
    return r;
}

} // namespace ckd
