#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ckd {

/// A word over {1..n}.  Letters are 1-based; the empty word is the unit.
using Word = std::vector<int>;

using ZeroOneMatrix = std::vector<std::vector<int>>;

/// n x n 0-1 matrix with no zero row and no zero column.
class TransitionMatrix {
public:
    explicit TransitionMatrix(ZeroOneMatrix rows);
    static TransitionMatrix all_ones(int n);

    int n() const { return static_cast<int>(rows_.size()); }
    /// a_ij for 1-based letters i, j.
    int operator()(int i, int j) const { return rows_[i - 1][j - 1]; }
    const ZeroOneMatrix& rows() const { return rows_; }
    bool is_all_ones() const;

    /// Adds one letter n+1 with a row and a column of ones.
    TransitionMatrix extended_by_ones() const;
    TransitionMatrix transpose() const;

    bool operator==(const TransitionMatrix&) const = default;

private:
    ZeroOneMatrix rows_;
};

void check_letters(const Word& w, int n);

bool is_admissible(const TransitionMatrix& a, const Word& w);

/// All admissible words of length m, lexicographic.
std::vector<Word> enumerate_admissible(const TransitionMatrix& a, int m);

/// All admissible words of length <= N in length-lex order.
std::vector<Word> enumerate_up_to(const TransitionMatrix& a, int N);

/// All words over n letters of length <= N in length-lex order.
std::vector<Word> all_words_up_to(int n, int N);

/// Number of admissible words of length m, by integer matrix powers.
std::uint64_t count_admissible(const TransitionMatrix& a, int m);

int origin(const Word& w);
int terminus(const Word& w);
Word concat(const Word& u, const Word& v);

/// True if u is a proper prefix of w; the remainder is written to rest.
bool proper_prefix(const Word& u, const Word& w, Word* rest);

/// Length-lex comparison.
bool length_lex_less(const Word& u, const Word& v);

std::string to_string(const Word& w);

} // namespace ckd
