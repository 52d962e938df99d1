#pragma once

// Independent ground truth for the census: builds the wedge complex K(J)
// from its minimal non-faces, enumerates mod-2 characteristic matrices
// directly with one anchored representative per D-J class, and closes the
// real-toric polygon classes under blow-up. Nothing here goes through the
// diagram calculus, so agreement is a genuine cross-check.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "polycover/bigint.hpp"
#include "polycover/census.hpp"
#include "polycover/word.hpp"

namespace polycover {

// K(J) for the polygon P_m: one copy p_alpha per wedge slot, minimal
// non-faces the full copy expansions of the polygon's minimal non-faces,
// facets the maximal faces. Vertex ids order copies by (p, alpha).
struct WedgeComplex {
  int m = 0;
  JTuple j;
  int total_vertices = 0;  // N
  int rank = 0;            // n = N - m + 2, the facet size

  std::vector<std::pair<int, int>> labels;     // id -> (p, alpha), both 1-based
  std::vector<std::uint32_t> vertex_group;     // index p (1-based) -> copies mask
  std::vector<std::uint32_t> minimal_nonfaces;
  std::vector<std::uint32_t> facets;

  int id_of(int p, int alpha) const;
  bool is_face(std::uint32_t subset) const;
};

// N <= 24 enumeration guard.
WedgeComplex build_complex(int m, const JTuple& j);

// Anchors the facet on polygon edge {1,2} (omitting the highest-index copy
// of every other vertex) to the standard basis, then scans all nonzero
// column assignments for the remaining vertices and counts the assignments
// that are non-singular on every facet. One representative per class.
// Guard: (2^n - 1)^(N-n) <= 1e8.
BigCount count_classes_bruteforce(int m, const JTuple& j, int parallel = 1);

// Classes reachable from the projective-plane and square seeds by repeated
// blow-up, per polygon size up to m_max (3 <= m_max <= 12).
std::map<int, std::vector<DJClass>> real_toric_closure(int m_max);

struct VerifyReport {
  int m = 0;
  JTuple j;
  BigCount diagram;
  std::optional<BigCount> formula;  // only for m in {4,5,6}
  BigCount bruteforce;
  bool agree = false;
};

// Differential run: diagram census, closed form when available, brute
// force. Disagreement is report content, not an error.
VerifyReport verify(int m, const JTuple& j, int parallel = 1);

}  // namespace polycover
