#pragma once

// Edges of the diagram D(P_m) in e-set form: compatibility, the edge
// correspondence, type-1/type-2 relatedness of e-set pairs, square
// composition, and the real-toric predicates on classes and edges.

#include <string>
#include <utility>
#include <vector>

#include "polycover/word.hpp"

namespace polycover {

// e-set (p, S): a base vertex plus an even subset of [m]. Compatibility with
// a class (S inside the block of p) is a separate predicate.
struct ESet {
  int base = 0;
  VertexSet set;

  ESet(int base, VertexSet set);  // validates range and even cardinality
  friend bool operator==(const ESet&, const ESet&) = default;
  friend bool operator<(const ESet& a, const ESet& b) {
    if (a.base != b.base) return a.base < b.base;
    return a.set.bits < b.set.bits;
  }
};

std::string to_string(const ESet& e);                  // "p:{s1,s2,...}", "p:{}"
ESet parse_eset(const std::string& text, int m);

enum class Relatedness { kType1, kType2, kUnrelated };

const char* to_string(Relatedness r);

// True iff {base} and S lie in a single block of the class.
bool is_compatible(const DJClass& cls, const ESet& e);

// All classes p-adjacent to cls, one per even subset of the support of p,
// paired with the e-set realizing the edge. Exactly 2^{|supp|-1} entries,
// the trivial edge S = {} included; the classes are pairwise distinct.
std::vector<std::pair<ESet, DJClass>> adjacent_classes(const DJClass& cls, int p);

// The unique (p, S) with invert(l1, S) == l2; throws if l1 and l2 are not
// p-adjacent (supports at p differ, or no inversion set works).
ESet eset_of_edge(const DJClass& l1, const DJClass& l2, int p);

// Type 1 when the bases coincide, a set is empty, or the bases are
// equivalent; else type 2 exactly when Omega_q(S) and Omega_p(T) are
// disjoint; else the pair spans no realizable square.
Relatedness relatedness(const DJClass& cls, const ESet& e1, const ESet& e2);

// Fourth corner of the realizable square spanned by the two edges:
// the two inversions composed (order-independent). Rejects unrelated pairs.
DJClass fourth_node(const DJClass& cls, const ESet& e1, const ESet& e2);

// Word-level criterion for type-2 squares: with representatives fixing the
// letters at both bases, the closed neighborhood of one disagreement set
// must avoid the other disagreement set and its closed neighborhood.
bool type2_cross_check(const Word& w1, const ESet& e1, const ESet& e2);

// A class supports a real toric manifold unless it is the alternating
// two-letter class on 2k >= 6 vertices.
bool is_real_toric_class(const DJClass& cls);

// A nontrivial edge is real toric iff S = {base, q} and each of the two arcs
// determined by S avoids the block letter of the base or uses all three
// letters. The trivial edge is always real toric.
bool is_real_toric_edge(const DJClass& cls, const ESet& e);

// Arc condition on an equivalent vertex pair; matches is_real_toric_edge on
// (p,{p,q}) and (q,{p,q}).
bool rt_property(const DJClass& cls, int p, int q);

}  // namespace polycover
