#include "ckd/dilate.hpp"

#include <algorithm>
#include <sstream>

#include "ckd/errors.hpp"

namespace ckd {

int KernelGram::find(const Word& w) const {
    auto it = std::lower_bound(words.begin(), words.end(), w, length_lex_less);
    if (it == words.end() || *it != w) return -1;
    return static_cast<int>(it - words.begin());
}

namespace {

void require_ck_input(const OperatorTuple& t, const TransitionMatrix& a, double tol) {
    if (a.n() != t.n()) throw std::invalid_argument("alphabet size of A and tuple differ");
    auto rc = is_row_contraction(t, tol);
    if (!rc.contractive) {
        std::ostringstream os;
        os << "tuple is not a row contraction (min eigenvalue " << rc.min_eig << ")";
        throw std::domain_error(os.str());
    }
    auto ar = satisfies_A_relations(t, a, tol);
    if (!ar.holds) {
        std::ostringstream os;
        os << "A-relations fail at (" << ar.worst_i << "," << ar.worst_j << "), norm "
           << ar.max_violation;
        throw std::domain_error(os.str());
    }
}

// T^w for every word in the list, built from the word with its last letter removed.
std::vector<Mat> word_values(const OperatorTuple& t, const std::vector<Word>& words,
                             const KernelGram& g) {
    std::vector<Mat> vals(words.size());
    for (std::size_t k = 0; k < words.size(); ++k) {
        const Word& w = words[k];
        if (w.empty()) {
            vals[k] = identity(t.dim());
            continue;
        }
        Word pre(w.begin(), w.end() - 1);
        vals[k] = vals[g.find(pre)] * t.op(w.back());
    }
    return vals;
}

KernelGram assemble(const OperatorTuple& t, const TransitionMatrix& a, int m) {
    KernelGram g;
    g.m = m;
    g.d = t.dim();
    g.words = enumerate_up_to(a, m);
    const int d = g.d;
    const auto W = static_cast<Eigen::Index>(g.words.size());
    const auto vals = word_values(t, g.words, g);
    std::vector<Mat> q;
    for (int i = 1; i <= t.n(); ++i) q.push_back(q_operator(t, a, i));

    g.matrix = Mat::Zero(W * d, W * d);
    for (Eigen::Index u = 0; u < W; ++u) {
        const Word& wu = g.words[u];
        g.matrix.block(u * d, u * d, d, d) = wu.empty() ? identity(d) : q[terminus(wu) - 1];
        for (Eigen::Index v = u + 1; v < W; ++v) {
            const Word& wv = g.words[v];
            Word rest;
            // Length-lex order puts the shorter word first, so only v = u g occurs here.
            if (!proper_prefix(wu, wv, &rest)) continue;
            const Mat& tg = vals[g.find(rest)];
            g.matrix.block(u * d, v * d, d, d) = tg;
            g.matrix.block(v * d, u * d, d, d) = tg.adjoint();
        }
    }
    return g;
}

} // namespace

KernelGram kernel_gram(const OperatorTuple& t, const TransitionMatrix& a, int m, double tol) {
    if (m < 1) throw std::invalid_argument("kernel level must be >= 1");
    require_ck_input(t, a, tol);
    return assemble(t, a, m);
}

double kernel_psd_check(const KernelGram& g) { return min_eig(g.matrix); }

FactorizationCheck kernel_factorization_check(const OperatorTuple& t, const TransitionMatrix& a,
                                              int m, double tol) {
    if (m < 1) throw std::invalid_argument("kernel level must be >= 1");
    require_ck_input(t, a, tol);
    FactorizationCheck out;
    OperatorTuple tt = t;
    TransitionMatrix aa = a;
    if (!is_row_contraction(t, tol).unital) {
        std::vector<Mat> ext = t.mats();
        ext.push_back(defect(t, tol));
        tt = OperatorTuple(std::move(ext));
        aa = a.extended_by_ones();
        out.augmented = true;
        out.augmented_relations = satisfies_A_relations(tt, aa, tol).max_violation;
    }
    const KernelGram g = assemble(tt, aa, m);
    const int d = g.d;
    const auto W = static_cast<Eigen::Index>(g.words.size());
    const Eigen::Index size = W * d;

    auto sparse_blocks = [&](auto&& fill) {
        std::vector<Eigen::Triplet<cd>> trip;
        fill(trip);
        SpMat s(size, size);
        s.setFromTriplets(trip.begin(), trip.end());
        return s;
    };
    auto put = [d](std::vector<Eigen::Triplet<cd>>& trip, Eigen::Index r, Eigen::Index c,
                   const Mat& b) {
        for (int x = 0; x < d; ++x)
            for (int y = 0; y < d; ++y)
                if (b(x, y) != cd(0.0)) trip.emplace_back(r * d + x, c * d + y, b(x, y));
    };

    // Q^(m): Q_t(w) on the diagonal blocks of level m, zero elsewhere.
    Mat prod = Mat::Zero(size, size);
    for (Eigen::Index u = 0; u < W; ++u)
        if (static_cast<int>(g.words[u].size()) == m)
            prod.block(u * d, u * d, d, d) = q_operator(tt, aa, terminus(g.words[u]));

    for (int k = m; k >= 1; --k) {
        // L_k: T_i at (w, wi) for |wi| = k, identity at (w, w) for |w| >= k.
        SpMat lk = sparse_blocks([&](std::vector<Eigen::Triplet<cd>>& trip) {
            for (Eigen::Index u = 0; u < W; ++u) {
                const Word& w = g.words[u];
                const int len = static_cast<int>(w.size());
                if (len >= k) put(trip, u, u, identity(d));
                if (len == k - 1)
                    for (int i = 1; i <= tt.n(); ++i) {
                        if (!w.empty() && aa(w.back(), i) == 0) continue;
                        put(trip, u, g.find(concat(w, Word{i})), tt.op(i));
                    }
            }
        });
        Mat left = lk * prod;
        prod = left * SpMat(lk.adjoint());
    }
    out.residual = op_norm(Mat(g.matrix - prod));
    return out;
}

OperatorTuple DilationResult::dense() const { return dense_tuple(ops); }

LevelScope KernelDilation::scope() const {
    LevelScope s;
    const int m = level;
    for (int len = 0; len <= m; ++len) s.frames.push_back(level_frames[m - len]);
    return s;
}

KernelDilation dilate_kernel(const OperatorTuple& t, const TransitionMatrix& a, int m,
                             double tol) {
    const KernelGram g = kernel_gram(t, a, m, tol);
    const int d = g.d;
    const HermEig eg = eig_desc(g.matrix);
    const double lmax = eg.values(0);
    if (eg.values(eg.values.size() - 1) < -1e-8 * std::max(1.0, lmax)) {
        std::ostringstream os;
        os << "kernel is not positive: min eigenvalue " << eg.values(eg.values.size() - 1);
        throw ConstructionError(os.str());
    }
    Eigen::Index r = 0;
    while (r < eg.values.size() && eg.values(r) > tol * lmax) ++r;

    KernelDilation kd;
    kd.method = "kernel";
    kd.level = m;
    kd.gram_eigenvalues = eg.values;
    kd.gram_rank = static_cast<int>(r);
    RealVec sq = eg.values.head(r).cwiseSqrt();
    kd.factor = sq.cast<cd>().asDiagonal() * eg.vectors.leftCols(r).adjoint();
    kd.embedding = kd.factor.leftCols(d);

    TruncatedFock index(a, m);
    const Eigen::Index nsrc = static_cast<Eigen::Index>(index.dim_up_to(m - 1)) * d;
    const Mat src = kd.factor.leftCols(nsrc);
    const Mat src_pinv = pinv(src, 1e-9);
    for (int i = 1; i <= t.n(); ++i) {
        Mat tgt = Mat::Zero(r, nsrc);
        for (Eigen::Index u = 0; u < nsrc / d; ++u) {
            const Word& w = g.words[u];
            if (!w.empty() && a(i, w.front()) == 0) continue;
            Word iw{i};
            iw.insert(iw.end(), w.begin(), w.end());
            tgt.middleCols(u * d, d) = kd.factor.middleCols(g.find(iw) * d, d);
        }
        kd.ops.push_back(to_sparse(Mat(tgt * src_pinv)));
    }
    for (int k = 0; k <= m; ++k)
        kd.level_frames.push_back(
            range_basis(kd.factor.leftCols(static_cast<Eigen::Index>(index.dim_up_to(k)) * d), 1e-9));
    return kd;
}

double coinvariance_residual(const DilationResult& dr, const OperatorTuple& t) {
    double worst = 0.0;
    for (int i = 1; i <= t.n(); ++i) {
        Mat lhs = dr.ops[i - 1].adjoint() * dr.embedding;
        worst = std::max(worst, op_norm(Mat(lhs - dr.embedding * t.op(i).adjoint())));
    }
    return worst;
}

double compression_residual(const DilationResult& dr, const OperatorTuple& t,
                            const TransitionMatrix& a, int len) {
    const auto words = enumerate_up_to(a, len);
    // Y_w = (T~^w)^* E and Z_w = (T^w)^*, extended letter by letter.
    std::vector<Mat> y(words.size()), z(words.size());
    std::map<Word, std::size_t> pos;
    for (std::size_t k = 0; k < words.size(); ++k) {
        const Word& w = words[k];
        pos[w] = k;
        if (w.empty()) {
            y[k] = dr.embedding;
            z[k] = identity(t.dim());
            continue;
        }
        const std::size_t p = pos[Word(w.begin(), w.end() - 1)];
        y[k] = dr.ops[w.back() - 1].adjoint() * y[p];
        z[k] = t.op(w.back()).adjoint() * z[p];
    }
    double worst = 0.0;
    for (std::size_t u = 0; u < words.size(); ++u)
        for (std::size_t v = 0; v < words.size(); ++v)
            worst = std::max(worst, op_norm(Mat(y[u].adjoint() * y[v] - z[u].adjoint() * z[v])));
    return worst;
}

std::vector<double> q_purity_check(const KernelDilation& kd, const TransitionMatrix& a,
                                   int depth) {
    const Mat e = range_basis(kd.embedding, 1e-9);
    const Mat c = complement(e, kd.dim());
    if (c.cols() == 0) return {};
    std::vector<Mat> q;
    for (const auto& op : kd.ops) q.push_back(c.adjoint() * op * c);
    return purity_profile(OperatorTuple(std::move(q)), a, depth);
}

} // namespace ckd
