#include "ckd/fock.hpp"

#include <algorithm>
#include <stdexcept>

namespace ckd {

namespace {

SpMat from_triplets(int rows, int cols, std::vector<Eigen::Triplet<cd>>& trip) {
    SpMat m(rows, cols);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

} // namespace

TruncatedFock::TruncatedFock(const TransitionMatrix& a, int N) : a_(a), N_(N) {
    if (N < 1) throw std::invalid_argument("Fock truncation level must be >= 1");
    for (int m = 0; m <= N; ++m) {
        auto lvl = enumerate_admissible(a, m);
        basis_.insert(basis_.end(), lvl.begin(), lvl.end());
        level_end_.push_back(static_cast<int>(basis_.size()));
    }
    for (int k = 0; k < dim(); ++k) index_.emplace(basis_[k], k);
}

TruncatedFock TruncatedFock::full(int n, int N) {
    return TruncatedFock(TransitionMatrix::all_ones(n), N);
}

int TruncatedFock::find(const Word& w) const {
    auto it = index_.find(w);
    return it == index_.end() ? -1 : it->second;
}

int TruncatedFock::dim_up_to(int k) const {
    if (k < 0) return 0;
    return level_end_[std::min(k, N_)];
}

Mat TruncatedFock::level_frame(int k) const {
    const int c = dim_up_to(k);
    Mat f = Mat::Zero(dim(), c);
    for (int j = 0; j < c; ++j) f(j, j) = 1.0;
    return f;
}

LevelScope TruncatedFock::interior_scope() const {
    LevelScope s;
    for (int len = 0; len <= N_; ++len) s.frames.push_back(level_frame(N_ - len));
    return s;
}

std::vector<SpMat> creation_S(const TruncatedFock& f) {
    std::vector<SpMat> out;
    for (int i = 1; i <= f.n(); ++i) {
        std::vector<Eigen::Triplet<cd>> trip;
        for (int k = 0; k < f.dim(); ++k) {
            const Word& w = f.basis()[k];
            if (static_cast<int>(w.size()) >= f.level()) continue;
            if (!w.empty() && f.A()(i, w.front()) == 0) continue;
            Word iw{i};
            iw.insert(iw.end(), w.begin(), w.end());
            trip.emplace_back(f.find(iw), k, 1.0);
        }
        out.push_back(from_triplets(f.dim(), f.dim(), trip));
    }
    return out;
}

std::vector<SpMat> annihilation_S_star(const TruncatedFock& f) {
    std::vector<SpMat> out;
    for (const auto& s : creation_S(f)) out.push_back(s.adjoint());
    return out;
}

std::vector<SpMat> deletion_formula(const TruncatedFock& f) {
    std::vector<SpMat> out;
    for (int i = 1; i <= f.n(); ++i) {
        std::vector<Eigen::Triplet<cd>> trip;
        for (int k = 0; k < f.dim(); ++k) {
            const Word& w = f.basis()[k];
            if (w.empty() || w.front() != i) continue;
            trip.emplace_back(f.find(Word(w.begin() + 1, w.end())), k, 1.0);
        }
        out.push_back(from_triplets(f.dim(), f.dim(), trip));
    }
    return out;
}

std::vector<SpMat> creation_X(const TruncatedFock& f) {
    std::vector<SpMat> out;
    for (int i = 1; i <= f.n(); ++i) {
        std::vector<Eigen::Triplet<cd>> trip;
        for (int k = 0; k < f.dim(); ++k) {
            const Word& w = f.basis()[k];
            if (static_cast<int>(w.size()) >= f.level()) continue;
            if (!w.empty() && f.A()(w.back(), i) == 0) continue;
            trip.emplace_back(f.find(concat(w, Word{i})), k, 1.0);
        }
        out.push_back(from_triplets(f.dim(), f.dim(), trip));
    }
    return out;
}

Mat vacuum_projection(const TruncatedFock& f) {
    Mat p = Mat::Zero(f.dim(), f.dim());
    p(0, 0) = 1.0;
    return p;
}

OperatorTuple dense_tuple(const std::vector<SpMat>& ops) {
    std::vector<Mat> m;
    for (const auto& s : ops) m.emplace_back(s);
    return OperatorTuple(std::move(m));
}

double commutant_check(const TruncatedFock& f, int max_total_len) {
    if (max_total_len > f.level())
        throw std::invalid_argument("commutant check needs total length <= truncation level");
    const auto S = creation_S(f);
    const auto X = creation_X(f);
    const auto words = enumerate_up_to(f.A(), max_total_len);
    double worst = 0.0;
    for (const auto& g : words) {
        Vec e = Vec::Zero(f.dim());
        e(f.find(g)) = 1.0;
        for (const auto& a : words)
            for (const auto& b : words) {
                if (a.size() + b.size() + g.size() > static_cast<std::size_t>(max_total_len))
                    continue;
                if (a.empty() || b.empty()) continue;
                // X^{b'} = X_{b_m} ... X_{b_1}: apply X_{b_1} first.
                Vec lhs = e;
                for (int l : b) lhs = X[l - 1] * lhs;
                for (auto it = a.rbegin(); it != a.rend(); ++it) lhs = S[*it - 1] * lhs;
                Vec rhs = e;
                for (auto it = a.rbegin(); it != a.rend(); ++it) rhs = S[*it - 1] * rhs;
                for (int l : b) rhs = X[l - 1] * rhs;
                worst = std::max(worst, (lhs - rhs).norm());
            }
    }
    return worst;
}

} // namespace ckd
