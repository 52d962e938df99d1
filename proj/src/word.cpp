#include "polycover/word.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace polycover {

namespace {

std::uint32_t full_mask(int m) { return (m == 32) ? ~0u : ((1u << m) - 1u); }

std::uint32_t bit_of(int p) { return 1u << (p - 1); }

void check_same_ambient(const VertexSet& a, const VertexSet& b) {
  if (a.m != b.m)
    throw std::invalid_argument("vertex sets have different ambient sizes");
}

constexpr std::array<std::array<char, 3>, 6> kLetterPerms = {{
    {'a', 'b', 'c'},
    {'a', 'c', 'b'},
    {'b', 'a', 'c'},
    {'b', 'c', 'a'},
    {'c', 'a', 'b'},
    {'c', 'b', 'a'},
}};

}  // namespace

char letter_char(int letter) { return static_cast<char>('a' + letter); }

int letter_index(char c) {
  if (c < 'a' || c > 'c') return -1;
  return c - 'a';
}

char third_letter(char x, char y) {
  return static_cast<char>('a' + 'b' + 'c' - x - y);
}

VertexSet::VertexSet(int m_, std::uint32_t bits_) : m(m_), bits(bits_) {
  if (m < 1 || m > kMaxVertices)
    throw std::invalid_argument("vertex set: ambient size must be between 1 and 30");
  if (bits & ~full_mask(m))
    throw std::invalid_argument("vertex set: member outside {1,...,m}");
}

VertexSet VertexSet::of(int m, std::initializer_list<int> elems) {
  std::uint32_t bits = 0;
  for (int p : elems) {
    if (p < 1 || p > m) throw std::invalid_argument("vertex set: member outside {1,...,m}");
    bits |= bit_of(p);
  }
  return VertexSet(m, bits);
}

int VertexSet::size() const { return std::popcount(bits); }

int VertexSet::min_element() const {
  if (bits == 0) throw std::invalid_argument("vertex set: empty set has no minimum");
  return std::countr_zero(bits) + 1;
}

std::vector<int> VertexSet::elements() const {
  std::vector<int> out;
  for (int p = 1; p <= m; ++p)
    if (contains(p)) out.push_back(p);
  return out;
}

bool VertexSet::non_consecutive() const {
  if (bits == 0) return true;
  std::uint32_t succ = ((bits << 1) | (bits >> (m - 1))) & full_mask(m);
  return (bits & succ) == 0;
}

VertexSet operator|(const VertexSet& a, const VertexSet& b) {
  check_same_ambient(a, b);
  return VertexSet(a.m, a.bits | b.bits);
}

VertexSet operator&(const VertexSet& a, const VertexSet& b) {
  check_same_ambient(a, b);
  return VertexSet(a.m, a.bits & b.bits);
}

VertexSet operator^(const VertexSet& a, const VertexSet& b) {
  check_same_ambient(a, b);
  return VertexSet(a.m, a.bits ^ b.bits);
}

std::string to_string(const VertexSet& s) {
  std::string out = "{";
  bool first = true;
  for (int p : s.elements()) {
    if (!first) out += ',';
    out += std::to_string(p);
    first = false;
  }
  out += '}';
  return out;
}

VertexSet parse_vertex_set(const std::string& text, int m) {
  if (text.empty() || text.front() != '{')
    throw std::invalid_argument("vertex set: expected '{' at position 1");
  if (text.back() != '}')
    throw std::invalid_argument("vertex set: expected '}' at position " +
                                std::to_string(text.size()));
  std::uint32_t bits = 0;
  std::size_t i = 1;
  while (i + 1 < text.size()) {
    std::size_t start = i;
    while (i + 1 < text.size() && text[i] != ',') ++i;
    const std::string item = text.substr(start, i - start);
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("vertex set: malformed entry at position " +
                                  std::to_string(start + 1));
    int p = std::stoi(item);
    if (p < 1 || p > m)
      throw std::invalid_argument("vertex set: entry " + item + " outside 1.." +
                                  std::to_string(m));
    if (bits & bit_of(p))
      throw std::invalid_argument("vertex set: duplicate entry " + item);
    bits |= bit_of(p);
    if (i + 1 < text.size() && text[i] == ',') ++i;
  }
  return VertexSet(m, bits);
}

Word::Word(std::string letters) : letters_(std::move(letters)) {
  const int m = static_cast<int>(letters_.size());
  if (m < 3) throw std::invalid_argument("word: length must be at least 3");
  if (m > kMaxVertices)
    throw std::invalid_argument("word: length must be at most 30");
  for (int i = 0; i < m; ++i) {
    if (letter_index(letters_[i]) < 0)
      throw std::invalid_argument("word: letter at position " + std::to_string(i + 1) +
                                  " must be one of a, b, c");
  }
  for (int i = 0; i < m; ++i) {
    int k = (i + 1) % m;
    if (letters_[i] == letters_[k])
      throw std::invalid_argument("word: letters at positions " + std::to_string(i + 1) +
                                  " and " + std::to_string(k + 1) + " are equal");
  }
}

DJClass::DJClass(Word w) : word_(std::move(w)) {
  for (int p = 1; p <= word_.size(); ++p)
    blocks_[letter_index(word_.at(p))] |= bit_of(p);
}

VertexSet DJClass::support(int p) const {
  if (p < 1 || p > size())
    throw std::invalid_argument("support: vertex outside 1.." + std::to_string(size()));
  return block(letter_index(word_.at(p)));
}

DJClass canonicalize(const Word& w) {
  const std::string& s = w.str();
  std::string best;
  std::string cand(s.size(), 'a');
  for (const auto& perm : kLetterPerms) {
    for (std::size_t i = 0; i < s.size(); ++i) cand[i] = perm[letter_index(s[i])];
    if (best.empty() || cand < best) best = cand;
  }
  return DJClass(Word(std::move(best)));
}

DJClass parse_class(const std::string& text) { return canonicalize(Word(text)); }

std::uint64_t count_classes(int m) {
  if (m < 3) throw std::invalid_argument("count_classes: m must be at least 3");
  if (m > 62) throw std::invalid_argument("count_classes: m must be at most 62");
  std::uint64_t p = std::uint64_t{1} << (m - 1);
  return (m % 2 == 1) ? (p - 1) / 3 : (p + 1) / 3;
}

std::vector<DJClass> enumerate_classes(int m) {
  if (m < 3) throw std::invalid_argument("enumerate_classes: m must be at least 3");
  if (m > 26) throw guard_error("enumerate_classes: enumeration guard allows m <= 26");
  std::vector<DJClass> out;
  std::string s(m, 'a');
  s[1] = 'b';
  // Canonical words start with "ab"; generate all valid completions in
  // lexicographic order and keep the ones already canonical.
  auto dfs = [&](auto&& self, int pos) -> void {
    if (pos == m) {
      if (s.back() == s.front()) return;
      DJClass cls = canonicalize(Word(s));
      if (cls.word().str() == s) out.push_back(std::move(cls));
      return;
    }
    for (char c : {'a', 'b', 'c'}) {
      if (c == s[pos - 1]) continue;
      s[pos] = c;
      self(self, pos + 1);
    }
  };
  dfs(dfs, 2);
  return out;
}

VertexSet support(const DJClass& cls, int p) { return cls.support(p); }

std::vector<std::vector<int>> circular_arc_positions(const VertexSet& s) {
  auto elems = s.elements();
  const int k = static_cast<int>(elems.size());
  const int m = s.m;
  std::vector<std::vector<int>> arcs(k);
  for (int i = 0; i < k; ++i) {
    int end = elems[(i + 1) % k];
    for (int v = elems[i] % m + 1; v != end; v = v % m + 1) arcs[i].push_back(v);
  }
  return arcs;
}

std::vector<Piece> pieces(const Word& w, const VertexSet& s) {
  if (s.m != w.size())
    throw std::invalid_argument("pieces: set ambient size does not match the word");
  if (s.size() < 2)
    throw std::invalid_argument("pieces: delimiting set needs at least two vertices");
  if (!s.non_consecutive())
    throw std::invalid_argument("pieces: delimiting set must be non-consecutive");
  std::vector<Piece> out;
  for (const auto& arc : circular_arc_positions(s)) {
    Piece piece;
    piece.start = arc.front();
    for (int v : arc) piece.letters += w.at(v);
    out.push_back(std::move(piece));
  }
  return out;
}

std::vector<Piece> pieces(const DJClass& cls, const VertexSet& s) {
  return pieces(cls.word(), s);
}

namespace {

// The common letter of S; rejects odd or block-spanning sets.
char inversion_letter(const Word& w, const VertexSet& s) {
  if (s.m != w.size())
    throw std::invalid_argument("invert: set ambient size does not match the word");
  if (s.size() % 2 != 0)
    throw std::invalid_argument("invert: inversion set must have even cardinality");
  char keep = w.at(s.min_element());
  for (int v : s.elements())
    if (w.at(v) != keep)
      throw std::invalid_argument("invert: inversion set spans more than one block");
  return keep;
}

Word invert_arcs(const Word& w, const VertexSet& s, char keep, int black_parity) {
  std::string out = w.str();
  auto arcs = circular_arc_positions(s);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (static_cast<int>(i % 2) != black_parity) continue;
    for (int v : arcs[i]) {
      char c = out[v - 1];
      if (c != keep) out[v - 1] = third_letter(c, keep);
    }
  }
  return Word(std::move(out));
}

}  // namespace

Word invert_word(const Word& w, const VertexSet& s) {
  if (s.empty()) {
    if (s.m != w.size())
      throw std::invalid_argument("invert: set ambient size does not match the word");
    return w;
  }
  char keep = inversion_letter(w, s);
  return invert_arcs(w, s, keep, 0);
}

Word invert_word(const Word& w, const VertexSet& s, int anchor) {
  if (anchor < 1 || anchor > w.size())
    throw std::invalid_argument("invert: anchor outside 1..m");
  if (s.contains(anchor))
    throw std::invalid_argument("invert: anchor must avoid the inversion set");
  if (s.empty()) {
    if (s.m != w.size())
      throw std::invalid_argument("invert: set ambient size does not match the word");
    return w;
  }
  char keep = inversion_letter(w, s);
  auto arcs = circular_arc_positions(s);
  int anchor_arc = -1;
  for (std::size_t i = 0; i < arcs.size(); ++i)
    for (int v : arcs[i])
      if (v == anchor) anchor_arc = static_cast<int>(i);
  return invert_arcs(w, s, keep, (anchor_arc % 2) ^ 1);
}

DJClass invert(const DJClass& cls, const VertexSet& s) {
  if (s.empty()) {
    if (s.m != cls.size())
      throw std::invalid_argument("invert: set ambient size does not match the class");
    return cls;
  }
  return canonicalize(invert_word(cls.word(), s));
}

VertexSet omega(const VertexSet& s, int r) {
  if (s.empty()) throw std::invalid_argument("omega: S must be nonempty");
  if (s.size() % 2 != 0) throw std::invalid_argument("omega: S must have even cardinality");
  if (!s.non_consecutive()) throw std::invalid_argument("omega: S must be non-consecutive");
  if (r < 1 || r > s.m) throw std::invalid_argument("omega: r outside 1..m");
  if (s.contains(r)) throw std::invalid_argument("omega: r must avoid S");
  auto arcs = circular_arc_positions(s);
  int r_arc = -1;
  std::vector<std::uint32_t> arc_bits(arcs.size(), 0);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    for (int v : arcs[i]) {
      arc_bits[i] |= bit_of(v);
      if (v == r) r_arc = static_cast<int>(i);
    }
  }
  std::uint32_t a = 0;
  for (std::size_t i = 0; i < arcs.size(); ++i)
    if (static_cast<int>(i % 2) != (r_arc % 2)) a |= arc_bits[i];
  return VertexSet(s.m, a | s.bits);
}

VertexSet delta(const Word& a, const Word& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("delta: words have different lengths");
  std::uint32_t bits = 0;
  for (int p = 1; p <= a.size(); ++p)
    if (a.at(p) != b.at(p)) bits |= bit_of(p);
  return VertexSet(a.size(), bits);
}

VertexSet bar(const VertexSet& a) {
  const int m = a.m;
  const std::uint32_t mask = full_mask(m);
  std::uint32_t left = ((a.bits << 1) | (a.bits >> (m - 1))) & mask;
  std::uint32_t right = ((a.bits >> 1) | (a.bits << (m - 1))) & mask;
  return VertexSet(m, a.bits | left | right);
}

Word blow_up(const Word& w, int i) {
  const int m = w.size();
  if (i < 1 || i > m) throw std::invalid_argument("blow_up: position outside 1..m");
  if (m + 1 > kMaxVertices)
    throw guard_error("blow_up: resulting word exceeds the 30-vertex cap");
  std::string out = w.str();
  out.insert(out.begin() + i, third_letter(w.at(i), w.at(i % m + 1)));
  return Word(std::move(out));
}

}  // namespace polycover
