#include "polycover/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

namespace polycover {

namespace {

constexpr double kScanGuard = 1e8;

// Columns of one facet reduced against the anchored standard-basis part:
// the facet is non-singular iff the reduced free columns are independent.
struct FacetCheck {
  std::uint32_t anchored_bits = 0;
  std::vector<int> free_positions;
};

bool facet_ok(const FacetCheck& fc, const std::vector<std::uint32_t>& value) {
  std::uint32_t pivots[32] = {0};
  for (int pos : fc.free_positions) {
    std::uint32_t r = value[pos] & ~fc.anchored_bits;
    while (r) {
      int h = 31 - std::countl_zero(r);
      if (!pivots[h]) {
        pivots[h] = r;
        break;
      }
      r ^= pivots[h];
    }
    if (!r) return false;
  }
  return true;
}

}  // namespace

int WedgeComplex::id_of(int p, int alpha) const {
  int id = 0;
  for (int q = 1; q < p; ++q) id += j.at(q);
  return id + alpha - 1;
}

bool WedgeComplex::is_face(std::uint32_t subset) const {
  for (std::uint32_t nf : minimal_nonfaces)
    if ((subset & nf) == nf) return false;
  return true;
}

WedgeComplex build_complex(int m, const JTuple& j) {
  if (m < 3) throw std::invalid_argument("build_complex: m must be at least 3");
  if (j.m() != m)
    throw std::invalid_argument("build_complex: wedge vector length does not match m");
  const int N = j.total();
  if (N > 24) throw guard_error("build_complex: N = " + std::to_string(N) +
                                " exceeds the 24-vertex enumeration guard");

  WedgeComplex k{m, j, N, N - m + 2, {}, {}, {}, {}};
  k.vertex_group.assign(m + 1, 0);
  for (int p = 1; p <= m; ++p)
    for (int a = 1; a <= j.at(p); ++a) {
      k.vertex_group[p] |= 1u << k.labels.size();
      k.labels.emplace_back(p, a);
    }

  if (m == 3) {
    k.minimal_nonfaces.push_back(k.vertex_group[1] | k.vertex_group[2] | k.vertex_group[3]);
  } else {
    for (int i = 1; i <= m; ++i)
      for (int l = i + 2; l <= m; ++l) {
        if (i == 1 && l == m) continue;  // adjacent around the wrap
        k.minimal_nonfaces.push_back(k.vertex_group[i] | k.vertex_group[l]);
      }
  }

  // Facet on polygon edge {p, p+1}: both vertex groups in full plus
  // all-but-one copy of every other vertex.
  for (int p = 1; p <= m; ++p) {
    const int pn = p % m + 1;
    std::vector<int> others;
    for (int q = 1; q <= m; ++q)
      if (q != p && q != pn) others.push_back(q);
    std::vector<int> omit(others.size(), 1);  // copy index to drop
    for (;;) {
      std::uint32_t facet = k.vertex_group[p] | k.vertex_group[pn];
      for (std::size_t i = 0; i < others.size(); ++i)
        facet |= k.vertex_group[others[i]] & ~(1u << k.id_of(others[i], omit[i]));
      if (std::popcount(facet) != k.rank || !k.is_face(facet))
        throw std::logic_error("build_complex: facet construction is inconsistent");
      k.facets.push_back(facet);
      std::size_t i = 0;
      while (i < others.size() && omit[i] == j.at(others[i])) {
        omit[i] = 1;
        ++i;
      }
      if (i == others.size()) break;
      ++omit[i];
    }
  }
  return k;
}

BigCount count_classes_bruteforce(int m, const JTuple& j, int parallel) {
  WedgeComplex k = build_complex(m, j);
  const int n = k.rank;
  const int N = k.total_vertices;
  const int free_count = N - n;  // always m - 2

  std::uint32_t base_facet = k.vertex_group[1] | k.vertex_group[2];
  for (int q = 3; q <= m; ++q)
    base_facet |= k.vertex_group[q] & ~(1u << k.id_of(q, j.at(q)));
  if (std::popcount(base_facet) != n || !k.is_face(base_facet))
    throw std::logic_error("bruteforce: base facet is not a facet");

  double scan_size = std::pow(static_cast<double>((1u << n) - 1), free_count);
  if (scan_size > kScanGuard)
    throw guard_error("bruteforce: search size ~" + std::to_string(scan_size) +
                      " exceeds the 1e8 guard");

  // anchored ids get standard basis vectors in ascending vertex order
  std::vector<std::uint32_t> anchored_col(N, 0);
  std::vector<int> free_position(N, -1);
  int next_basis = 0;
  int next_free = 0;
  for (int id = 0; id < N; ++id) {
    if ((base_facet >> id) & 1u)
      anchored_col[id] = 1u << next_basis++;
    else
      free_position[id] = next_free++;
  }

  std::vector<std::vector<FacetCheck>> ready(free_count);
  for (std::uint32_t facet : k.facets) {
    FacetCheck fc;
    int last = -1;
    for (int id = 0; id < N; ++id) {
      if (!((facet >> id) & 1u)) continue;
      if (free_position[id] >= 0) {
        fc.free_positions.push_back(free_position[id]);
        last = std::max(last, free_position[id]);
      } else {
        fc.anchored_bits |= anchored_col[id];
      }
    }
    if (last >= 0) ready[last].push_back(std::move(fc));
  }

  // Full recheck used on a sampled subset of accepted assignments.
  auto full_check = [&](const std::vector<std::uint32_t>& value) {
    for (std::uint32_t facet : k.facets) {
      std::uint32_t pivots[32] = {0};
      for (int id = 0; id < N; ++id) {
        if (!((facet >> id) & 1u)) continue;
        std::uint32_t r =
            free_position[id] >= 0 ? value[free_position[id]] : anchored_col[id];
        while (r) {
          int h = 31 - std::countl_zero(r);
          if (!pivots[h]) {
            pivots[h] = r;
            break;
          }
          r ^= pivots[h];
        }
        if (!r) return false;
      }
    }
    return true;
  };

  const std::uint32_t top = (1u << n) - 1;
  std::uint64_t accepted_samples = 0;

  auto scan = [&](auto&& self, int depth, std::vector<std::uint32_t>& value,
                  std::uint64_t& sampled) -> std::uint64_t {
    if (depth == free_count) {
      if (++sampled % 997 == 0 && !full_check(value))
        throw std::logic_error("bruteforce: sampled assignment fails the full facet check");
      return 1;
    }
    std::uint64_t total = 0;
    for (std::uint32_t v = 1; v <= top; ++v) {
      value[depth] = v;
      bool good = true;
      for (const FacetCheck& fc : ready[depth])
        if (!facet_ok(fc, value)) {
          good = false;
          break;
        }
      if (good) total += self(self, depth + 1, value, sampled);
    }
    return total;
  };

  std::uint64_t count = 0;
  if (parallel <= 1) {
    std::vector<std::uint32_t> value(free_count, 0);
    count = scan(scan, 0, value, accepted_samples);
  } else {
    std::atomic<std::uint32_t> next{1};
    std::atomic<std::uint64_t> total{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
      std::vector<std::uint32_t> value(free_count, 0);
      std::uint64_t sampled = 0;
      try {
        for (;;) {
          std::uint32_t v = next.fetch_add(1);
          if (v > top) return;
          value[0] = v;
          bool good = true;
          for (const FacetCheck& fc : ready[0])
            if (!facet_ok(fc, value)) {
              good = false;
              break;
            }
          if (good) total += scan(scan, 1, value, sampled);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < parallel; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    count = total.load();
  }
  return BigCount(count);
}

std::map<int, std::vector<DJClass>> real_toric_closure(int m_max) {
  if (m_max < 3 || m_max > 12)
    throw std::invalid_argument("real_toric_closure: m_max must be between 3 and 12");
  std::map<int, std::set<DJClass>> acc;
  acc[3].insert(parse_class("abc"));
  if (m_max >= 4) acc[4].insert(parse_class("abab"));
  for (int m = 3; m < m_max; ++m)
    for (const DJClass& cls : acc[m])
      for (int i = 1; i <= m; ++i)
        acc[m + 1].insert(canonicalize(blow_up(cls.word(), i)));
  std::map<int, std::vector<DJClass>> out;
  for (auto& [m, classes] : acc) out.emplace(m, std::vector<DJClass>(classes.begin(), classes.end()));
  return out;
}

VerifyReport verify(int m, const JTuple& j, int parallel) {
  VerifyReport report{m, j, {}, std::nullopt, {}, false};
  report.diagram = count_small_covers(m, j, parallel);
  if (m >= 4 && m <= 6) report.formula = closed_form(m, j);
  report.bruteforce = count_classes_bruteforce(m, j, parallel);
  report.agree = report.diagram == report.bruteforce &&
                 (!report.formula || *report.formula == report.diagram);
  return report;
}

}  // namespace polycover
