#pragma once

// Census over wedged polygons P_m(J): enumeration and exact counting of the
// e-set sequence sets E(lambda,J), the type-1 subsets E~(lambda,J) with their
// closed form, the real toric subsets E_RT(lambda,J), the closed forms for
// m = 4, 5, 6, and puzzle reconstruction over the grid graph G(J).

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "polycover/bigint.hpp"
#include "polycover/eset.hpp"
#include "polycover/word.hpp"

namespace polycover {

// Wedge vector (j_1,...,j_m), all entries positive.
struct JTuple {
  std::vector<int> entries;

  explicit JTuple(std::vector<int> e);  // validates
  static JTuple ones(int m);
  static JTuple parse(const std::string& text);

  int m() const { return static_cast<int>(entries.size()); }
  int at(int p) const { return entries[p - 1]; }
  int total() const;  // N = sum of entries

  friend bool operator==(const JTuple&, const JTuple&) = default;
};

std::string to_string(const JTuple& j);

// Slot-indexed sequence of e-sets: j_p - 1 slots per vertex p, ordered by p
// then copy index. Together with a class it encodes a small cover over
// P_m(J). Same-p slots are distinguishable: permuting them gives a
// different sequence.
struct ESeq {
  std::vector<ESet> entries;

  friend bool operator==(const ESeq&, const ESeq&) = default;
  friend bool operator<(const ESeq& a, const ESeq& b) { return a.entries < b.entries; }
};

std::vector<int> slot_bases(const JTuple& j);

// Depth-first enumeration of E(lambda,J): every slot sequence of compatible
// e-sets that is pairwise lambda-related, visited exactly once in
// lexicographic slot/candidate order.
void for_each_E(const DJClass& cls, const JTuple& j,
                const std::function<void(const ESeq&)>& visit);
std::vector<ESeq> enumerate_E(const DJClass& cls, const JTuple& j);

BigCount count_E(const DJClass& cls, const JTuple& j);
// Same enumeration restricted to pairwise type-1 sequences.
BigCount count_E_tilde_enum(const DJClass& cls, const JTuple& j);

// (2^{|mu_a|-1})^{w_a} + (2^{|mu_b|-1})^{w_b} + (2^{|mu_c|-1})^{w_c} - 2,
// where w_i sums j_k - 1 over the block and an empty block contributes 1.
BigCount count_E_tilde_formula(const DJClass& cls, const JTuple& j);

// Total small-cover count: sum of |E(lambda,J)| over all classes.
BigCount count_small_covers(int m, const JTuple& j, int parallel = 1);

// Closed forms for m = 4, 5, 6 (the m = 6 form adds the type-2 correction
// to the sum of the type-1 closed forms). Other m rejected.
BigCount closed_form(int m, const JTuple& j);

// Vertex pairs (p < q) in a common block satisfying the arc condition.
std::vector<std::pair<int, int>> rt_pairs(const DJClass& cls);

// E_RT(lambda,J): the distinct sequences witnessed by at least one RT pair
// (set semantics; overlapping witnesses never double-count). Over P_3 this
// is the singleton all-empty sequence.
std::vector<ESeq> enumerate_E_RT(const DJClass& cls, const JTuple& j);
BigCount count_E_RT(const DJClass& cls, const JTuple& j);
BigCount count_real_toric(int m, const JTuple& j, int parallel = 1);

// Vertex-by-vertex class assignment on the 1-skeleton of
// Delta^{j_1-1} x ... x Delta^{j_m-1}; node (1,...,1) carries the census
// class. Ranks are mixed-radix with the first coordinate most significant.
struct PuzzleGrid {
  JTuple j;
  std::vector<DJClass> classes;  // indexed by rank

  std::size_t node_count() const { return classes.size(); }
  std::size_t rank_of(const std::vector<int>& alpha) const;
  std::vector<int> alpha_of(std::size_t rank) const;
  const DJClass& at(const std::vector<int>& alpha) const { return classes[rank_of(alpha)]; }
};

// Builds the grid by chained inversions along minimal paths, assigning
// parallel edges the same e-set and triangle edges the symmetric
// difference, then verifies that every edge is consistent and every
// subsquare closes. A violated square throws std::logic_error naming it;
// for valid input that would indicate an implementation bug.
PuzzleGrid reconstruct_puzzle(const DJClass& cls, const ESeq& seq, const JTuple& j);

}  // namespace polycover
