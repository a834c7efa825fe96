#include "ckd/fock.hpp"

#include <algorithm>
#include <cmath>

namespace ckd {

namespace {

bool pairwise_ok(const TransitionMatrix& a, const Word& w) {
    for (std::size_t p = 0; p < w.size(); ++p)
        for (std::size_t q = p + 1; q < w.size(); ++q)
            if (a(w[p], w[q]) * a(w[q], w[p]) == 0) return false;
    return true;
}

double orbit_count(const Word& sorted) {
    double num = std::tgamma(static_cast<double>(sorted.size()) + 1.0);
    std::size_t k = 0;
    while (k < sorted.size()) {
        std::size_t e = k;
        while (e < sorted.size() && sorted[e] == sorted[k]) ++e;
        num /= std::tgamma(static_cast<double>(e - k) + 1.0);
        k = e;
    }
    return std::round(num);
}

void multisets(int n, int m, int lo, Word& cur, std::vector<Word>& out) {
    if (static_cast<int>(cur.size()) == m) {
        out.push_back(cur);
        return;
    }
    for (int l = lo; l <= n; ++l) {
        cur.push_back(l);
        multisets(n, m, l, cur, out);
        cur.pop_back();
    }
}

} // namespace

int SymTruncatedFock::find(const Word& sorted_rep) const {
    auto it = std::lower_bound(reps.begin(), reps.end(), sorted_rep, length_lex_less);
    if (it == reps.end() || *it != sorted_rep) return -1;
    return static_cast<int>(it - reps.begin());
}

SymTruncatedFock build_sym_fock(const TransitionMatrix& a, int N) {
    SymTruncatedFock fs{TruncatedFock(a, N), {}, {}, {}};
    for (int m = 0; m <= N; ++m) {
        std::vector<Word> lvl;
        Word cur;
        multisets(a.n(), m, 1, cur, lvl);
        for (auto& w : lvl)
            if (pairwise_ok(a, w)) {
                fs.orbit_size.push_back(orbit_count(w));
                fs.reps.push_back(std::move(w));
            }
    }
    fs.embed = Mat::Zero(fs.ambient.dim(), fs.dim());
    for (int c = 0; c < fs.dim(); ++c) {
        Word p = fs.reps[c];
        const double coef = 1.0 / std::sqrt(fs.orbit_size[c]);
        do {
            fs.embed(fs.ambient.find(p), c) = coef;
        } while (std::next_permutation(p.begin(), p.end()));
    }
    return fs;
}

std::vector<Mat> creation_W(const SymTruncatedFock& fs) {
    const TransitionMatrix& a = fs.ambient.A();
    std::vector<Mat> out;
    for (int i = 1; i <= a.n(); ++i) {
        Mat w = Mat::Zero(fs.dim(), fs.dim());
        for (int c = 0; c < fs.dim(); ++c) {
            const Word& rep = fs.reps[c];
            if (static_cast<int>(rep.size()) >= fs.ambient.level()) continue;
            bool ok = true;
            for (int l : rep) ok = ok && a(i, l) * a(l, i) == 1;
            if (!ok) continue;
            Word target = rep;
            target.insert(std::upper_bound(target.begin(), target.end(), i), i);
            const int t = fs.find(target);
            w(t, c) = std::sqrt(fs.orbit_size[c] / fs.orbit_size[t]);
        }
        out.push_back(std::move(w));
    }
    return out;
}

double w_commutator_value(const SymTruncatedFock& fs, int i, const Word& rep) {
    const TransitionMatrix& a = fs.ambient.A();
    const double m = static_cast<double>(rep.size());
    const double c = static_cast<double>(std::count(rep.begin(), rep.end(), i));
    bool addable = true;
    for (int l : rep) addable = addable && a(i, l) * a(l, i) == 1;
    return c / m - (addable ? (c + 1.0) / (m + 1.0) : 0.0);
}

} // namespace ckd
