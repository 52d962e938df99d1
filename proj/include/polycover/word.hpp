#pragma once

// Circular 3-letter words over {a,b,c} and D-J classes over the polygon P_m:
// canonical forms, supports, pieces, inversions, the chessboard sets
// Omega_r(S), positionwise deltas and mod-2 blow-ups. Vertices are 1-based;
// vertex sets are single-word bit masks, so m is capped at 30. Every
// operation is a pure function over immutable values.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "polycover/errors.hpp"

namespace polycover {

inline constexpr int kMaxVertices = 30;

char letter_char(int letter);       // 0,1,2 -> 'a','b','c'
int letter_index(char c);           // 'a','b','c' -> 0,1,2; -1 otherwise
char third_letter(char x, char y);  // the letter distinct from both

// Subset of {1,...,m}; bit p-1 represents vertex p.
struct VertexSet {
  int m = 0;
  std::uint32_t bits = 0;

  VertexSet() = default;
  VertexSet(int m, std::uint32_t bits);
  static VertexSet of(int m, std::initializer_list<int> elems);

  bool contains(int p) const { return (bits >> (p - 1)) & 1u; }
  bool empty() const { return bits == 0; }
  int size() const;
  int min_element() const;  // requires nonempty
  std::vector<int> elements() const;
  bool non_consecutive() const;  // no {p, p+1 mod m} inside

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
};

VertexSet operator|(const VertexSet& a, const VertexSet& b);
VertexSet operator&(const VertexSet& a, const VertexSet& b);
VertexSet operator^(const VertexSet& a, const VertexSet& b);  // symmetric difference

std::string to_string(const VertexSet& s);                     // "{2,4,7}", "{}"
VertexSet parse_vertex_set(const std::string& text, int m);

// Word over {a,b,c} with no two circularly adjacent letters equal. This is
// exactly a rank-2 mod-2 characteristic map over the m-gon.
class Word {
 public:
  explicit Word(std::string letters);  // validates; throws std::invalid_argument

  int size() const { return static_cast<int>(letters_.size()); }
  char at(int p) const { return letters_[p - 1]; }  // 1-based
  const std::string& str() const { return letters_; }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::string letters_;
};

// D-J class over P_m: the canonical word (lexicographically least among the
// six letter permutations, positions fixed) together with the induced weak
// partition of {1,...,m} into the three letter blocks.
class DJClass {
 public:
  const Word& word() const { return word_; }
  int size() const { return word_.size(); }
  char letter_at(int p) const { return word_.at(p); }
  VertexSet block(int letter) const { return VertexSet(size(), blocks_[letter]); }
  VertexSet support(int p) const;  // the block containing p

  friend bool operator==(const DJClass&, const DJClass&) = default;
  friend bool operator<(const DJClass& a, const DJClass& b) {
    return a.word_.str() < b.word_.str();
  }

 private:
  friend DJClass canonicalize(const Word& w);
  explicit DJClass(Word w);

  Word word_;
  std::array<std::uint32_t, 3> blocks_{};
};

DJClass canonicalize(const Word& w);
DJClass parse_class(const std::string& text);

// t_m = (2^{m-1} - (-1)^{m-1}) / 3
std::uint64_t count_classes(int m);
std::vector<DJClass> enumerate_classes(int m);  // lexicographic by canonical word

VertexSet support(const DJClass& cls, int p);

// Maximal arc of [m] \ S strictly between two circularly consecutive
// delimiters, read in circular order.
struct Piece {
  int start = 0;
  std::string letters;
  friend bool operator==(const Piece&, const Piece&) = default;
};

// The |S| arcs of [m] \ S in circular order, the first one starting just
// after min(S). Positions inside each arc are in circular order.
std::vector<std::vector<int>> circular_arc_positions(const VertexSet& s);

std::vector<Piece> pieces(const Word& w, const VertexSet& s);
std::vector<Piece> pieces(const DJClass& cls, const VertexSet& s);

// Word-level inversion: swap the two letters other than the common letter of
// S inside the "black" arcs of the chessboard coloring of [m] \ S. The first
// overload paints the arc just after min(S) black; the second keeps the arcs
// carrying the anchor's color fixed (the anchor's letter never changes).
Word invert_word(const Word& w, const VertexSet& s);
Word invert_word(const Word& w, const VertexSet& s, int anchor);

// Class-level inversion inv_S; the chessboard coloring choice is absorbed by
// canonicalization, so this is well defined on classes. Involution in S.
DJClass invert(const DJClass& cls, const VertexSet& s);

// Omega_r(S): S together with the arcs opposite in chessboard color to the
// arc containing r. Requires S nonempty, even, non-consecutive, r outside S.
VertexSet omega(const VertexSet& s, int r);

VertexSet delta(const Word& a, const Word& b);  // positionwise disagreement
VertexSet bar(const VertexSet& a);              // circular 1-neighborhood closure

// Insert the mod-2 sum of the letters at i and i+1 (the third letter)
// between them, giving a valid word of length m+1.
Word blow_up(const Word& w, int i);

}  // namespace polycover
