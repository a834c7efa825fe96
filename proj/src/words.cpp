#include "ckd/words.hpp"

#include <stdexcept>

#include "ckd/errors.hpp"

namespace ckd {

TransitionMatrix::TransitionMatrix(ZeroOneMatrix rows) : rows_(std::move(rows)) {
    const std::size_t n = rows_.size();
    if (n == 0) throw ParseError("transition matrix must be non-empty");
    std::vector<int> colsum(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows_[i].size() != n) throw ParseError("transition matrix must be square");
        int rowsum = 0;
        for (std::size_t j = 0; j < n; ++j) {
            int v = rows_[i][j];
            if (v != 0 && v != 1) throw ParseError("transition matrix entries must be 0 or 1");
            rowsum += v;
            colsum[j] += v;
        }
        if (rowsum == 0)
            throw ParseError("transition matrix row " + std::to_string(i + 1) + " is zero");
    }
    for (std::size_t j = 0; j < n; ++j)
        if (colsum[j] == 0)
            throw ParseError("transition matrix column " + std::to_string(j + 1) + " is zero");
}

TransitionMatrix TransitionMatrix::all_ones(int n) {
    return TransitionMatrix(ZeroOneMatrix(n, std::vector<int>(n, 1)));
}

bool TransitionMatrix::is_all_ones() const {
    for (const auto& r : rows_)
        for (int v : r)
            if (v == 0) return false;
    return true;
}

TransitionMatrix TransitionMatrix::extended_by_ones() const {
    ZeroOneMatrix r = rows_;
    for (auto& row : r) row.push_back(1);
    r.emplace_back(rows_.size() + 1, 1);
    return TransitionMatrix(std::move(r));
}

TransitionMatrix TransitionMatrix::transpose() const {
    ZeroOneMatrix r(rows_.size(), std::vector<int>(rows_.size()));
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (std::size_t j = 0; j < rows_.size(); ++j) r[j][i] = rows_[i][j];
    return TransitionMatrix(std::move(r));
}

void check_letters(const Word& w, int n) {
    for (int l : w)
        if (l < 1 || l > n)
            throw std::invalid_argument("letter " + std::to_string(l) + " outside 1.." +
                                        std::to_string(n));
}

bool is_admissible(const TransitionMatrix& a, const Word& w) {
    check_letters(w, a.n());
    for (std::size_t k = 1; k < w.size(); ++k)
        if (a(w[k - 1], w[k]) == 0) return false;
    return true;
}

namespace {

void extend(const TransitionMatrix& a, Word& cur, int m, std::vector<Word>& out) {
    if (static_cast<int>(cur.size()) == m) {
        out.push_back(cur);
        return;
    }
    for (int l = 1; l <= a.n(); ++l) {
        if (!cur.empty() && a(cur.back(), l) == 0) continue;
        cur.push_back(l);
        extend(a, cur, m, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<Word> enumerate_admissible(const TransitionMatrix& a, int m) {
    if (m < 0) throw std::invalid_argument("word length must be non-negative");
    std::vector<Word> out;
    Word cur;
    extend(a, cur, m, out);
    return out;
}

std::vector<Word> enumerate_up_to(const TransitionMatrix& a, int N) {
    std::vector<Word> out;
    for (int m = 0; m <= N; ++m) {
        auto lvl = enumerate_admissible(a, m);
        out.insert(out.end(), lvl.begin(), lvl.end());
    }
    return out;
}

std::vector<Word> all_words_up_to(int n, int N) {
    return enumerate_up_to(TransitionMatrix::all_ones(n), N);
}

std::uint64_t count_admissible(const TransitionMatrix& a, int m) {
    if (m < 0) throw std::invalid_argument("word length must be non-negative");
    if (m == 0) return 1;
    const int n = a.n();
    // v_i = number of admissible words of the current length ending in i.
    std::vector<std::uint64_t> v(n, 1), next(n);
    for (int step = 1; step < m; ++step) {
        for (int j = 0; j < n; ++j) {
            std::uint64_t s = 0;
            for (int i = 0; i < n; ++i)
                if (a.rows()[i][j]) s += v[i];
            next[j] = s;
        }
        v.swap(next);
    }
    std::uint64_t total = 0;
    for (auto x : v) total += x;
    return total;
}

int origin(const Word& w) {
    if (w.empty()) throw std::domain_error("origin of the empty word");
    return w.front();
}

int terminus(const Word& w) {
    if (w.empty()) throw std::domain_error("terminus of the empty word");
    return w.back();
}

Word concat(const Word& u, const Word& v) {
    Word out = u;
    out.insert(out.end(), v.begin(), v.end());
    return out;
}

bool proper_prefix(const Word& u, const Word& w, Word* rest) {
    if (u.size() >= w.size()) return false;
    for (std::size_t k = 0; k < u.size(); ++k)
        if (u[k] != w[k]) return false;
    if (rest) rest->assign(w.begin() + static_cast<std::ptrdiff_t>(u.size()), w.end());
    return true;
}

bool length_lex_less(const Word& u, const Word& v) {
    if (u.size() != v.size()) return u.size() < v.size();
    return u < v;
}

std::string to_string(const Word& w) {
    std::string s = "(";
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) s += ",";
        s += std::to_string(w[k]);
    }
    return s + ")";
}

} // namespace ckd
