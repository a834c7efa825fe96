#include "ckd/pieces.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ckd {

NcPoly::NcPoly(std::vector<std::pair<cd, Word>> terms) {
    std::stable_sort(terms.begin(), terms.end(),
                     [](const auto& x, const auto& y) { return length_lex_less(x.second, y.second); });
    for (auto& t : terms) {
        if (!terms_.empty() && terms_.back().second == t.second)
            terms_.back().first += t.first;
        else
            terms_.push_back(std::move(t));
    }
    std::erase_if(terms_, [](const auto& t) { return t.first == cd(0.0); });
}

std::string NcPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        if (k) os << " + ";
        os << "(" << terms_[k].first.real() << "," << terms_[k].first.imag() << ")*z"
           << ckd::to_string(terms_[k].second);
    }
    return os.str();
}

Mat eval_poly(const NcPoly& p, const OperatorTuple& r) {
    Mat out = Mat::Zero(r.dim(), r.dim());
    for (const auto& [c, w] : p.terms()) out += c * eval_word(r, w);
    return out;
}

namespace {

double input_scale(const OperatorTuple& r, const std::vector<Mat>& vals) {
    double s = 0.0;
    for (const auto& m : r.mats()) s = std::max(s, op_norm(m));
    for (const auto& m : vals) s = std::max(s, op_norm(m));
    return s;
}

Mat hstack(const std::vector<Mat>& blocks, Eigen::Index rows) {
    Eigen::Index cols = 0;
    for (const auto& b : blocks) cols += b.cols();
    Mat out(rows, cols);
    Eigen::Index c = 0;
    for (const auto& b : blocks) {
        out.middleCols(c, b.cols()) = b;
        c += b.cols();
    }
    return out;
}

} // namespace

Mat invariant_span(const OperatorTuple& r, const Mat& seed, double cut) {
    const Eigen::Index d = r.dim();
    Mat v = range_basis(seed, 0.0, cut);
    for (Eigen::Index step = 0; step <= d && v.cols() < d; ++step) {
        std::vector<Mat> imgs;
        for (const auto& m : r.mats()) imgs.push_back(m * v);
        Mat c = hstack(imgs, d);
        c -= v * (v.adjoint() * c);
        Mat fresh = range_basis(c, 0.0, cut);
        if (fresh.cols() == 0) break;
        // Re-orthogonalize against the current frame to keep drift at round-off level.
        fresh -= v * (v.adjoint() * fresh);
        Eigen::HouseholderQR<Mat> qr(fresh);
        Mat q = qr.householderQ() * Mat::Identity(d, fresh.cols());
        Mat next(d, v.cols() + q.cols());
        next << v, q;
        v = next;
    }
    return v;
}

Subspace maximal_piece(const OperatorTuple& r, const PolySet& ps, double tol) {
    const int d = r.dim();
    std::vector<Mat> vals;
    for (const auto& p : ps) vals.push_back(eval_poly(p, r));
    const double scale = input_scale(r, vals);
    if (vals.empty() || scale == 0.0) return Subspace::whole(d);
    Mat v = invariant_span(r, hstack(vals, d), tol * scale);
    return {d, complement(v, d)};
}

Subspace maximal_piece_oracle(const OperatorTuple& r, const PolySet& ps, int l_max,
                              double tol) {
    const int d = r.dim();
    const auto words = all_words_up_to(r.n(), l_max);
    std::vector<Mat> powers;
    for (const auto& w : words) powers.push_back(eval_word(r, w));
    // range of [R^b]_b is range of (sum_b R^b R^b*)^{1/2}.
    Mat b = Mat::Zero(d, d);
    for (const auto& m : powers) b += m * m.adjoint();
    const Mat root = psd_sqrt(b);
    std::vector<Mat> blocks;
    std::vector<Mat> vals;
    for (const auto& p : ps) vals.push_back(eval_poly(p, r));
    for (const auto& pv : vals) {
        const Mat right = pv * root;
        for (const auto& left : powers) blocks.push_back(left * right);
    }
    const double scale = input_scale(r, vals);
    if (blocks.empty() || scale == 0.0) return Subspace::whole(d);
    Mat k = range_basis(hstack(blocks, d), tol, 0.0);
    return {d, complement(k, d)};
}

OperatorTuple compress(const OperatorTuple& r, const Subspace& s) {
    if (s.ambient_dim != r.dim()) throw std::invalid_argument("subspace ambient dimension mismatch");
    if (s.dim() == 0) throw std::invalid_argument("cannot compress to the zero subspace");
    std::vector<Mat> out;
    for (const auto& m : r.mats()) out.push_back(s.frame.adjoint() * m * s.frame);
    return OperatorTuple(std::move(out));
}

double coinvariance_residual(const OperatorTuple& r, const Subspace& s) {
    double worst = 0.0;
    for (const auto& m : r.mats()) {
        Mat x = m.adjoint() * s.frame;
        x -= s.frame * (s.frame.adjoint() * x);
        worst = std::max(worst, op_norm(x));
    }
    return worst;
}

PieceCompression compress_piece(const OperatorTuple& r, const Subspace& s, const PolySet& ps,
                                double tol) {
    const double co = coinvariance_residual(r, s);
    if (co > tol)
        throw std::domain_error("subspace is not co-invariant (residual " + std::to_string(co) + ")");
    PieceCompression out{compress(r, s), co, 0.0};
    for (const auto& p : ps) out.relations = std::max(out.relations, op_norm(eval_poly(p, out.tuple)));
    return out;
}

namespace {

void push_unique(PolySet& set, NcPoly p) {
    if (p.is_zero()) return;
    if (std::find(set.begin(), set.end(), p) == set.end()) set.push_back(std::move(p));
}

} // namespace

PolySet preset(const TransitionMatrix& a, PresetKind kind, const std::optional<Mat>& q) {
    const int n = a.n();
    PolySet out;
    switch (kind) {
    case PresetKind::ARelation:
        for (int l = 1; l <= n; ++l)
            for (int m = 1; m <= n; ++m)
                push_unique(out, NcPoly({{cd(1.0 - a(l, m)), Word{l, m}}}));
        break;
    case PresetKind::Commuting:
        for (int l = 1; l <= n; ++l)
            for (int m = l + 1; m <= n; ++m)
                push_unique(out, NcPoly({{1.0, Word{l, m}}, {-1.0, Word{m, l}}}));
        break;
    case PresetKind::QCommuting: {
        if (!q || q->rows() != n || q->cols() != n)
            throw std::invalid_argument("q-commuting preset needs an n x n q matrix");
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                push_unique(out, NcPoly({{1.0, Word{j, i}}, {-(*q)(i - 1, j - 1), Word{i, j}}}));
        break;
    }
    case PresetKind::Fermionic: {
        Mat fq = Mat::Constant(n, n, -1.0);
        fq.diagonal().setOnes();
        ZeroOneMatrix fa(n, std::vector<int>(n, 1));
        for (int i = 0; i < n; ++i) fa[i][i] = 0;
        const TransitionMatrix ta(std::move(fa));
        for (auto& p : preset(ta, PresetKind::QCommuting, fq)) push_unique(out, std::move(p));
        for (auto& p : preset(ta, PresetKind::ARelation)) push_unique(out, std::move(p));
        break;
    }
    }
    return out;
}

PolySet preset_by_name(const TransitionMatrix& a, const std::string& spec,
                       const std::optional<Mat>& q) {
    PolySet out;
    auto add = [&](PresetKind k) {
        for (auto& p : preset(a, k, q)) push_unique(out, std::move(p));
    };
    std::stringstream ss(spec);
    std::string item;
    bool any = false;
    while (std::getline(ss, item, ',')) {
        any = true;
        if (item == "a" || item == "a_relation") add(PresetKind::ARelation);
        else if (item == "c" || item == "commuting") add(PresetKind::Commuting);
        else if (item == "q" || item == "q_commuting") add(PresetKind::QCommuting);
        else if (item == "fermionic") add(PresetKind::Fermionic);
        else if (item == "union") {
            add(PresetKind::ARelation);
            add(PresetKind::Commuting);
        } else
            throw std::invalid_argument("unknown relation preset '" + item + "'");
    }
    if (!any) throw std::invalid_argument("empty relation preset");
    return out;
}

Subspace intersect(const Subspace& s1, const Subspace& s2, double tol) {
    if (s1.ambient_dim != s2.ambient_dim) throw std::invalid_argument("ambient dimensions differ");
    const int d = s1.ambient_dim;
    // (S1 ∩ S2) = (S1^perp + S2^perp)^perp
    Mat c1 = complement(s1.frame, d);
    Mat c2 = complement(s2.frame, d);
    Mat both(d, c1.cols() + c2.cols());
    both << c1, c2;
    if (both.cols() == 0) return Subspace::whole(d);
    Mat span = range_basis(both, 0.0, tol);
    return {d, complement(span, d)};
}

double subspace_distance(const Subspace& s1, const Subspace& s2) {
    return principal_angle(s1.frame, s2.frame);
}

} // namespace ckd
