#include "polycover/eset.hpp"

#include <bit>
#include <set>
#include <stdexcept>

namespace polycover {

namespace {

// Even subsets of supp as masks, ascending; the empty set comes first.
std::vector<std::uint32_t> even_subset_masks(const VertexSet& supp) {
  auto elems = supp.elements();
  const int k = static_cast<int>(elems.size());
  std::vector<std::uint32_t> out;
  out.reserve(std::size_t{1} << (k > 0 ? k - 1 : 0));
  for (std::uint32_t x = 0; x < (1u << k); ++x) {
    if (std::popcount(x) % 2 != 0) continue;
    std::uint32_t mask = 0;
    for (int i = 0; i < k; ++i)
      if ((x >> i) & 1u) mask |= 1u << (elems[i] - 1);
    out.push_back(mask);
  }
  return out;
}

}  // namespace

ESet::ESet(int base_, VertexSet set_) : base(base_), set(set_) {
  if (base < 1 || base > set.m)
    throw std::invalid_argument("e-set: base vertex outside 1.." + std::to_string(set.m));
  if (set.size() % 2 != 0)
    throw std::invalid_argument("e-set: S must have even cardinality");
}

std::string to_string(const ESet& e) {
  return std::to_string(e.base) + ":" + to_string(e.set);
}

ESet parse_eset(const std::string& text, int m) {
  std::size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("e-set: expected ':' between base and set");
  const std::string head = text.substr(0, colon);
  if (head.empty() || head.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("e-set: malformed base vertex before ':'");
  int base = std::stoi(head);
  VertexSet set = parse_vertex_set(text.substr(colon + 1), m);
  return ESet(base, set);
}

const char* to_string(Relatedness r) {
  switch (r) {
    case Relatedness::kType1: return "type1";
    case Relatedness::kType2: return "type2";
    case Relatedness::kUnrelated: return "unrelated";
  }
  return "unrelated";
}

bool is_compatible(const DJClass& cls, const ESet& e) {
  if (e.set.m != cls.size())
    throw std::invalid_argument("e-set ambient size does not match the class");
  return (e.set.bits & ~cls.support(e.base).bits) == 0;
}

std::vector<std::pair<ESet, DJClass>> adjacent_classes(const DJClass& cls, int p) {
  VertexSet supp = cls.support(p);
  std::vector<std::pair<ESet, DJClass>> out;
  for (std::uint32_t mask : even_subset_masks(supp)) {
    ESet e(p, VertexSet(cls.size(), mask));
    out.emplace_back(e, invert(cls, e.set));
  }
  std::set<DJClass> seen;
  for (const auto& [e, c] : out) seen.insert(c);
  if (seen.size() != out.size())
    throw std::logic_error("adjacent_classes: inversion sets produced a duplicate class");
  return out;
}

ESet eset_of_edge(const DJClass& l1, const DJClass& l2, int p) {
  if (l1.size() != l2.size())
    throw std::invalid_argument("eset_of_edge: classes have different sizes");
  if (support(l1, p) != support(l2, p))
    throw std::invalid_argument("eset_of_edge: classes are not p-adjacent (supports at " +
                                std::to_string(p) + " differ)");
  for (std::uint32_t mask : even_subset_masks(l1.support(p))) {
    VertexSet s(l1.size(), mask);
    if (invert(l1, s) == l2) return ESet(p, s);
  }
  throw std::invalid_argument("eset_of_edge: classes are not p-adjacent (no inversion set)");
}

Relatedness relatedness(const DJClass& cls, const ESet& e1, const ESet& e2) {
  if (!is_compatible(cls, e1) || !is_compatible(cls, e2))
    throw std::invalid_argument("relatedness: e-set is not compatible with the class");
  if (e1.base == e2.base || e1.set.empty() || e2.set.empty()) return Relatedness::kType1;
  if (cls.letter_at(e1.base) == cls.letter_at(e2.base)) return Relatedness::kType1;
  VertexSet o1 = omega(e1.set, e2.base);
  VertexSet o2 = omega(e2.set, e1.base);
  return (o1.bits & o2.bits) == 0 ? Relatedness::kType2 : Relatedness::kUnrelated;
}

DJClass fourth_node(const DJClass& cls, const ESet& e1, const ESet& e2) {
  if (relatedness(cls, e1, e2) == Relatedness::kUnrelated)
    throw std::invalid_argument(
        "fourth_node: e-sets are not related, the square is not realizable");
  return invert(invert(cls, e1.set), e2.set);
}

bool type2_cross_check(const Word& w1, const ESet& e1, const ESet& e2) {
  if (e1.set.empty() || e2.set.empty())
    throw std::invalid_argument("type2_cross_check: both inversion sets must be nonempty");
  if (w1.at(e1.base) == w1.at(e2.base))
    throw std::invalid_argument("type2_cross_check: bases must lie in different blocks");
  for (const ESet& e : {e1, e2})
    for (int v : e.set.elements())
      if (w1.at(v) != w1.at(e.base))
        throw std::invalid_argument("type2_cross_check: set escapes the block of its base");
  Word w2 = invert_word(w1, e1.set, e2.base);
  Word w3 = invert_word(w1, e2.set, e1.base);
  VertexSet d12 = delta(w1, w2);
  VertexSet d13 = delta(w1, w3);
  bool clear = (bar(d12).bits & d13.bits) == 0;
  bool clear_bar = (bar(d12).bits & bar(d13).bits) == 0;
  return clear && clear_bar;
}

bool is_real_toric_class(const DJClass& cls) {
  int used = 0;
  for (int l = 0; l < 3; ++l)
    if (!cls.block(l).empty()) ++used;
  if (used == 3) return true;
  // two-letter classes are the alternating ones; only the square survives
  return cls.size() == 4;
}

bool is_real_toric_edge(const DJClass& cls, const ESet& e) {
  if (!is_compatible(cls, e))
    throw std::invalid_argument("is_real_toric_edge: e-set is not compatible with the class");
  if (e.set.empty()) return true;
  if (e.set.size() != 2 || !e.set.contains(e.base)) return false;
  const char block_letter = cls.letter_at(e.base);
  for (const auto& arc : circular_arc_positions(e.set)) {
    bool has_block = false;
    bool seen[3] = {false, false, false};
    for (int v : arc) {
      char c = cls.letter_at(v);
      seen[letter_index(c)] = true;
      if (c == block_letter) has_block = true;
    }
    if (has_block && !(seen[0] && seen[1] && seen[2])) return false;
  }
  return true;
}

bool rt_property(const DJClass& cls, int p, int q) {
  const int m = cls.size();
  if (p < 1 || p > m || q < 1 || q > m || p == q)
    throw std::invalid_argument("rt_property: need two distinct vertices in 1..m");
  if (cls.letter_at(p) != cls.letter_at(q))
    throw std::invalid_argument("rt_property: vertices are not equivalent");
  const int bl = letter_index(cls.letter_at(p));
  for (const auto& arc : circular_arc_positions(VertexSet::of(m, {p, q}))) {
    std::uint32_t a = 0;
    for (int v : arc) a |= 1u << (v - 1);
    bool hits_block = (cls.block(bl).bits & a) != 0;
    bool all3 = (cls.block(0).bits & a) && (cls.block(1).bits & a) && (cls.block(2).bits & a);
    if (hits_block && !all3) return false;
  }
  return true;
}

}  // namespace polycover
