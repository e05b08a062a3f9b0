#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fatsurf {

struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& msg) : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

// A letter is +g or -g for a generator index g >= 1.
using Letter = int;
using Word = std::vector<Letter>;

inline Letter inv(Letter x) { return -x; }
inline int gen(Letter x) { return x > 0 ? x : -x; }

// Order a < b < ... < A < B < ...
inline int letter_key(Letter x) { return x > 0 ? x : (1 << 20) - x; }

Word parse_word(const std::string& s);
std::string to_string(const Word& w);

Word reduce(const Word& w);
bool is_reduced(const Word& w);
bool is_cyclically_reduced(const Word& w);
Word inverse(const Word& w);
// Strips cancelling ends; the result is conjugate to the input.
Word cyclic_reduce(const Word& w);
// Index of the rotation that is minimal in letter_key order.
size_t least_rotation(const Word& w);
Word rotate(const Word& w, size_t k);

class CyclicWord {
 public:
  CyclicWord() = default;
  // Throws EmptyAfterReduction when w is trivial.
  explicit CyclicWord(const Word& w);
  static CyclicWord parse(const std::string& s) { return CyclicWord(parse_word(s)); }
  const Word& letters() const { return w_; }
  size_t size() const { return w_.size(); }
  Letter operator[](size_t i) const { return w_[i % w_.size()]; }
  CyclicWord inverse() const { return CyclicWord(fatsurf::inverse(w_)); }
  std::string str() const { return to_string(w_); }
  bool operator==(const CyclicWord& o) const { return w_ == o.w_; }
  bool operator!=(const CyclicWord& o) const { return w_ != o.w_; }
  bool operator<(const CyclicWord& o) const;

 private:
  Word w_;
};

struct CyclicWordHash {
  size_t operator()(const CyclicWord& c) const;
};

CyclicWord cyclic_canonical(const Word& w);

// Gap i sits immediately before letter i (between letters i-1 and i, cyclically).
struct TaggedLoop {
  Word word;
  std::vector<int> tags;
  std::vector<std::string> payload;  // empty or parallel to tags

  TaggedLoop() = default;
  TaggedLoop(Word w, std::vector<int> t = {});
  size_t size() const { return word.size(); }
  int gap_distance(int g1, int g2) const;
  int min_tag_separation() const;
  // Rotates to canonical word order, moving tags with it.
  TaggedLoop canonical() const;
  bool operator==(const TaggedLoop& o) const { return word == o.word && tags == o.tags; }
};

TaggedLoop iota(const TaggedLoop& loop);
CyclicWord iota(const CyclicWord& c);

using HomologyVector = std::vector<long>;
HomologyVector homology_class(const std::vector<CyclicWord>& loops, int k);
HomologyVector homology_class(const Word& w, int k);
int max_generator(const Word& w);

struct Run {
  Letter letter;  // signed generator
  int length;
  int exponent() const { return letter > 0 ? length : -length; }
};
// Cyclically maximal runs, starting at the first run boundary at or after position 0.
std::vector<Run> runs(const Word& w);
inline std::vector<Run> runs(const CyclicWord& w) { return runs(w.letters()); }
// Offset of the first letter of the first run returned by runs().
size_t run_start(const Word& w);

struct CommonSubword {
  int length = 0;
  // (position in u, position in v, inverted) for each maximal occurrence pair
  std::vector<std::tuple<int, int, bool>> occurrences;
};
// Cyclic inputs are unrolled; match length is capped at the shorter length.
// When same_word is set u and v are the same word and the trivial self-occurrence is excluded.
CommonSubword longest_common_subword(const Word& u, bool u_cyclic, const Word& v, bool v_cyclic,
                                     bool allow_inverses, bool same_word = false);
int longest_common_length(const Word& u, const Word& v, bool allow_inverses);

}  // namespace fatsurf
