#include "polycover/census.hpp"

#include <atomic>
#include <bit>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

namespace polycover {

namespace {

constexpr std::uint64_t kNodeBudget = 200000000;   // DFS prefixes explored
constexpr std::uint64_t kMaterializeLimit = 2000000;
constexpr std::uint64_t kGridLimit = 100000;

std::vector<std::uint32_t> even_subset_masks(const VertexSet& supp) {
  auto elems = supp.elements();
  const int k = static_cast<int>(elems.size());
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = 0; x < (1u << k); ++x) {
    if (std::popcount(x) % 2 != 0) continue;
    std::uint32_t mask = 0;
    for (int i = 0; i < k; ++i)
      if ((x >> i) & 1u) mask |= 1u << (elems[i] - 1);
    out.push_back(mask);
  }
  return out;
}

// Runs fn(0..count-1), fanning out over a worker pool when parallel > 1.
// Results must be written to disjoint slots so merging stays deterministic.
void run_indexed(int parallel, std::size_t count,
                 const std::function<void(std::size_t)>& fn) {
  if (parallel <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  int workers = std::min<std::size_t>(parallel, count);
  for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

// Shared machinery for scanning E(lambda,J): per-slot candidate e-sets with
// a precomputed pairwise relatedness table, walked depth-first with
// incremental pruning. Every valid prefix completes (empty e-sets are
// related to everything), so the node count stays proportional to |E|.
struct SeqScanner {
  const DJClass& cls;
  const JTuple& j;
  bool type1_only;

  std::vector<int> bases;                    // per slot
  std::vector<int> base_cand_offset;         // per slot: offset into cands
  std::vector<ESet> cands;                   // global candidate list
  std::vector<int> cand_count;               // per slot
  std::vector<std::vector<bool>> ok;         // candidate x candidate
  std::uint64_t nodes = 0;

  SeqScanner(const DJClass& cls_, const JTuple& j_, bool type1_only_)
      : cls(cls_), j(j_), type1_only(type1_only_) {
    if (j.m() != cls.size())
      throw std::invalid_argument("census: wedge vector length does not match the class");
    bases = slot_bases(j);

    std::vector<int> distinct;
    std::vector<int> offset_of_base(cls.size() + 1, -1);
    for (int b : bases)
      if (offset_of_base[b] < 0) {
        offset_of_base[b] = 0;  // mark
        distinct.push_back(b);
      }
    for (int b : distinct) {
      offset_of_base[b] = static_cast<int>(cands.size());
      for (std::uint32_t mask : even_subset_masks(cls.support(b)))
        cands.emplace_back(b, VertexSet(cls.size(), mask));
    }
    if (cands.size() > 4096)
      throw guard_error("census: candidate e-set table too large for enumeration");

    base_cand_offset.reserve(bases.size());
    cand_count.reserve(bases.size());
    for (int b : bases) {
      base_cand_offset.push_back(offset_of_base[b]);
      cand_count.push_back(1 << (cls.support(b).size() - 1));
    }

    const std::size_t c = cands.size();
    ok.assign(c, std::vector<bool>(c, false));
    for (std::size_t a = 0; a < c; ++a)
      for (std::size_t b = a; b < c; ++b) {
        Relatedness r = relatedness(cls, cands[a], cands[b]);
        bool good = type1_only ? (r == Relatedness::kType1) : (r != Relatedness::kUnrelated);
        ok[a][b] = ok[b][a] = good;
      }
  }

  std::uint64_t scan(const std::function<void(const ESeq&)>* visit) {
    std::vector<int> chosen;
    chosen.reserve(bases.size());
    return walk(0, chosen, visit);
  }

 private:
  std::uint64_t walk(std::size_t slot, std::vector<int>& chosen,
                     const std::function<void(const ESeq&)>* visit) {
    if (++nodes > kNodeBudget)
      throw guard_error("census: enumeration exceeded the node budget");
    if (slot == bases.size()) {
      if (visit) {
        ESeq seq;
        seq.entries.reserve(chosen.size());
        for (int id : chosen) seq.entries.push_back(cands[id]);
        (*visit)(seq);
      }
      return 1;
    }
    std::uint64_t total = 0;
    const int off = base_cand_offset[slot];
    for (int i = 0; i < cand_count[slot]; ++i) {
      const int id = off + i;
      bool good = true;
      for (int prev : chosen)
        if (!ok[prev][id]) {
          good = false;
          break;
        }
      if (!good) continue;
      chosen.push_back(id);
      total += walk(slot + 1, chosen, visit);
      chosen.pop_back();
    }
    return total;
  }
};

ESeq all_empty_sequence(const DJClass& cls, const JTuple& j) {
  ESeq seq;
  for (int b : slot_bases(j)) seq.entries.emplace_back(b, VertexSet(cls.size(), 0));
  return seq;
}

}  // namespace

JTuple::JTuple(std::vector<int> e) : entries(std::move(e)) {
  if (static_cast<int>(entries.size()) < 3)
    throw std::invalid_argument("j: need at least 3 entries");
  if (static_cast<int>(entries.size()) > kMaxVertices)
    throw std::invalid_argument("j: at most 30 entries");
  long long sum = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] < 1)
      throw std::invalid_argument("j: entry " + std::to_string(i + 1) +
                                  " must be a positive integer");
    sum += entries[i];
  }
  if (sum > 100000) throw guard_error("j: total weight exceeds 100000");
}

JTuple JTuple::ones(int m) { return JTuple(std::vector<int>(m, 1)); }

JTuple JTuple::parse(const std::string& text) {
  std::vector<int> entries;
  std::size_t i = 0;
  while (i <= text.size()) {
    std::size_t start = i;
    while (i < text.size() && text[i] != ',') ++i;
    const std::string item = text.substr(start, i - start);
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("j: malformed entry " +
                                  std::to_string(entries.size() + 1));
    entries.push_back(std::stoi(item));
    ++i;
  }
  return JTuple(std::move(entries));
}

int JTuple::total() const {
  int sum = 0;
  for (int v : entries) sum += v;
  return sum;
}

std::string to_string(const JTuple& j) {
  std::string out;
  for (std::size_t i = 0; i < j.entries.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(j.entries[i]);
  }
  return out;
}

std::vector<int> slot_bases(const JTuple& j) {
  std::vector<int> bases;
  for (int p = 1; p <= j.m(); ++p)
    for (int a = 1; a < j.at(p); ++a) bases.push_back(p);
  return bases;
}

void for_each_E(const DJClass& cls, const JTuple& j,
                const std::function<void(const ESeq&)>& visit) {
  SeqScanner scanner(cls, j, /*type1_only=*/false);
  scanner.scan(&visit);
}

std::vector<ESeq> enumerate_E(const DJClass& cls, const JTuple& j) {
  std::vector<ESeq> out;
  for_each_E(cls, j, [&](const ESeq& seq) {
    if (out.size() >= kMaterializeLimit)
      throw guard_error("enumerate_E: too many sequences to materialize");
    out.push_back(seq);
  });
  return out;
}

BigCount count_E(const DJClass& cls, const JTuple& j) {
  SeqScanner scanner(cls, j, /*type1_only=*/false);
  return BigCount(scanner.scan(nullptr));
}

BigCount count_E_tilde_enum(const DJClass& cls, const JTuple& j) {
  SeqScanner scanner(cls, j, /*type1_only=*/true);
  return BigCount(scanner.scan(nullptr));
}

BigCount count_E_tilde_formula(const DJClass& cls, const JTuple& j) {
  if (j.m() != cls.size())
    throw std::invalid_argument("census: wedge vector length does not match the class");
  BigCount total;
  for (int l = 0; l < 3; ++l) {
    VertexSet mu = cls.block(l);
    if (mu.empty()) {
      total += 1;
      continue;
    }
    std::uint64_t w = 0;
    for (int k : mu.elements()) w += static_cast<std::uint64_t>(j.at(k)) - 1;
    total += BigCount::pow2(static_cast<std::uint64_t>(mu.size() - 1) * w);
  }
  total -= 2;
  return total;
}

BigCount count_small_covers(int m, const JTuple& j, int parallel) {
  if (j.m() != m) throw std::invalid_argument("census: wedge vector length does not match m");
  auto classes = enumerate_classes(m);
  std::vector<BigCount> parts(classes.size());
  run_indexed(parallel, classes.size(),
              [&](std::size_t i) { parts[i] = count_E(classes[i], j); });
  BigCount total;
  for (const BigCount& part : parts) total += part;
  return total;
}

BigCount closed_form(int m, const JTuple& j) {
  if (j.m() != m) throw std::invalid_argument("census: wedge vector length does not match m");
  auto e = [&](int p) { return static_cast<std::uint64_t>(j.at(p)); };
  switch (m) {
    case 4:
      return BigCount::pow2(e(1) + e(3) - 1) + BigCount::pow2(e(2) + e(4) - 1) - 1;
    case 5:
      return BigCount::pow2(e(1) + e(3) - 1) + BigCount::pow2(e(2) + e(4) - 1) +
             BigCount::pow2(e(3) + e(5) - 1) + BigCount::pow2(e(4) + e(1) - 1) +
             BigCount::pow2(e(5) + e(2) - 1) - 5;
    case 6: {
      BigCount total;
      for (const DJClass& cls : enumerate_classes(6))
        total += count_E_tilde_formula(cls, j);
      auto term = [&](int a, int b, int c, int d) {
        return (BigCount::pow2(e(a) + e(b) - 2) - 1) * (BigCount::pow2(e(c) + e(d) - 2) - 1);
      };
      BigCount correction = term(1, 3, 4, 6) + term(3, 5, 6, 2) + term(5, 1, 2, 4);
      total += BigCount(4) * correction;
      return total;
    }
    default:
      throw std::invalid_argument("closed_form: defined for m in {4,5,6} only");
  }
}

std::vector<std::pair<int, int>> rt_pairs(const DJClass& cls) {
  std::vector<std::pair<int, int>> out;
  const int m = cls.size();
  for (int p = 1; p <= m; ++p)
    for (int q = p + 1; q <= m; ++q) {
      if (cls.letter_at(p) != cls.letter_at(q)) continue;
      if (rt_property(cls, p, q)) out.emplace_back(p, q);
    }
  return out;
}

std::vector<ESeq> enumerate_E_RT(const DJClass& cls, const JTuple& j) {
  if (j.m() != cls.size())
    throw std::invalid_argument("census: wedge vector length does not match the class");
  const int m = cls.size();
  if (m == 3) return {all_empty_sequence(cls, j)};

  auto pairs = rt_pairs(cls);
  std::set<ESeq> out;
  if (!pairs.empty()) out.insert(all_empty_sequence(cls, j));
  auto bases = slot_bases(j);
  for (auto [p, q] : pairs) {
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < bases.size(); ++i)
      if (bases[i] == p || bases[i] == q) slots.push_back(i);
    const std::size_t k = slots.size();
    if (k == 0) continue;
    if (k > 20) throw guard_error("enumerate_E_RT: too many sequences to materialize");
    VertexSet pair_set = VertexSet::of(m, {p, q});
    for (std::uint32_t x = 1; x < (1u << k); ++x) {
      ESeq seq = all_empty_sequence(cls, j);
      for (std::size_t i = 0; i < k; ++i)
        if ((x >> i) & 1u) seq.entries[slots[i]] = ESet(bases[slots[i]], pair_set);
      out.insert(std::move(seq));
    }
  }
  return {out.begin(), out.end()};
}

BigCount count_E_RT(const DJClass& cls, const JTuple& j) {
  if (j.m() != cls.size())
    throw std::invalid_argument("census: wedge vector length does not match the class");
  if (cls.size() == 3) return BigCount(1);
  auto pairs = rt_pairs(cls);
  if (pairs.empty()) return BigCount{};
  // Distinct RT pairs generate disjoint nonempty-entry patterns, so the
  // per-pair counts add up; the all-empty sequence is shared and counted once.
  BigCount total(1);
  for (auto [p, q] : pairs) {
    std::uint64_t k = static_cast<std::uint64_t>(j.at(p) - 1) +
                      static_cast<std::uint64_t>(j.at(q) - 1);
    total += BigCount::pow2(k) - 1;
  }
  return total;
}

BigCount count_real_toric(int m, const JTuple& j, int parallel) {
  if (j.m() != m) throw std::invalid_argument("census: wedge vector length does not match m");
  auto classes = enumerate_classes(m);
  std::vector<BigCount> parts(classes.size());
  run_indexed(parallel, classes.size(),
              [&](std::size_t i) { parts[i] = count_E_RT(classes[i], j); });
  BigCount total;
  for (const BigCount& part : parts) total += part;
  return total;
}

std::size_t PuzzleGrid::rank_of(const std::vector<int>& alpha) const {
  std::size_t rank = 0;
  for (int p = 1; p <= j.m(); ++p) rank = rank * j.at(p) + (alpha[p - 1] - 1);
  return rank;
}

std::vector<int> PuzzleGrid::alpha_of(std::size_t rank) const {
  std::vector<int> alpha(j.m());
  for (int p = j.m(); p >= 1; --p) {
    alpha[p - 1] = static_cast<int>(rank % j.at(p)) + 1;
    rank /= j.at(p);
  }
  return alpha;
}

PuzzleGrid reconstruct_puzzle(const DJClass& cls, const ESeq& seq, const JTuple& j) {
  const int m = cls.size();
  if (j.m() != m) throw std::invalid_argument("puzzle: wedge vector length does not match the class");
  auto bases = slot_bases(j);
  if (seq.entries.size() != bases.size())
    throw std::invalid_argument("puzzle: e-set sequence does not match the slot structure of j");
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (seq.entries[i].base != bases[i])
      throw std::invalid_argument("puzzle: slot " + std::to_string(i + 1) + " expects base " +
                                  std::to_string(bases[i]));
    if (!is_compatible(cls, seq.entries[i]))
      throw std::invalid_argument("puzzle: entry " + std::to_string(i + 1) +
                                  " is not compatible with the class");
  }
  for (std::size_t i = 0; i < seq.entries.size(); ++i)
    for (std::size_t k = i + 1; k < seq.entries.size(); ++k)
      if (relatedness(cls, seq.entries[i], seq.entries[k]) == Relatedness::kUnrelated)
        throw std::invalid_argument("puzzle: entries " + std::to_string(i + 1) + " and " +
                                    std::to_string(k + 1) + " are not related");

  std::uint64_t node_count = 1;
  for (int p = 1; p <= m; ++p) {
    node_count *= static_cast<std::uint64_t>(j.at(p));
    if (node_count > kGridLimit) throw guard_error("puzzle: grid exceeds 100000 nodes");
  }

  // slot_set[p][v-1]: e-set of the edge between copies 1 and v in direction p
  std::vector<std::vector<VertexSet>> slot_set(m + 1);
  {
    std::size_t idx = 0;
    for (int p = 1; p <= m; ++p) {
      slot_set[p].push_back(VertexSet(m, 0));
      for (int a = 1; a < j.at(p); ++a) slot_set[p].push_back(seq.entries[idx++].set);
    }
  }
  // Edge between copies u and v follows the triangle rule.
  auto edge_set = [&](int p, int u, int v) {
    return slot_set[p][u - 1] ^ slot_set[p][v - 1];
  };

  PuzzleGrid grid{j, {}};
  grid.classes.reserve(node_count);
  grid.classes.push_back(cls);
  for (std::size_t rank = 1; rank < node_count; ++rank) {
    std::vector<int> alpha = grid.alpha_of(rank);
    int p = m;
    while (alpha[p - 1] == 1) --p;
    int value = alpha[p - 1];
    alpha[p - 1] = 1;
    const DJClass& prev = grid.classes[grid.rank_of(alpha)];
    grid.classes.push_back(invert(prev, slot_set[p][value - 1]));
  }

  auto square_error = [&](const std::vector<int>& alpha, int p, int b, int q, int d) {
    return std::logic_error("puzzle: square at node rank " +
                            std::to_string(grid.rank_of(alpha)) + " in directions " +
                            std::to_string(p) + "->" + std::to_string(b) + ", " +
                            std::to_string(q) + "->" + std::to_string(d) +
                            " does not close");
  };

  for (std::size_t rank = 0; rank < node_count; ++rank) {
    std::vector<int> alpha = grid.alpha_of(rank);
    const DJClass& here = grid.classes[rank];
    // every edge leaving this node toward a higher copy index
    for (int p = 1; p <= m; ++p) {
      for (int b = alpha[p - 1] + 1; b <= j.at(p); ++b) {
        std::vector<int> beta = alpha;
        beta[p - 1] = b;
        VertexSet s = edge_set(p, alpha[p - 1], b);
        if (invert(here, s) != grid.classes[grid.rank_of(beta)])
          throw std::logic_error("puzzle: edge at node rank " + std::to_string(rank) +
                                 " in direction " + std::to_string(p) +
                                 " is inconsistent");
      }
    }
    // every subsquare with this node as its low corner
    for (int p = 1; p <= m; ++p) {
      for (int q = p + 1; q <= m; ++q) {
        for (int b = alpha[p - 1] + 1; b <= j.at(p); ++b) {
          for (int d = alpha[q - 1] + 1; d <= j.at(q); ++d) {
            ESet ep(p, edge_set(p, alpha[p - 1], b));
            ESet eq(q, edge_set(q, alpha[q - 1], d));
            if (relatedness(here, ep, eq) == Relatedness::kUnrelated)
              throw square_error(alpha, p, b, q, d);
            std::vector<int> corner = alpha;
            corner[p - 1] = b;
            corner[q - 1] = d;
            const DJClass& far = grid.classes[grid.rank_of(corner)];
            if (invert(invert(here, ep.set), eq.set) != far ||
                invert(invert(here, eq.set), ep.set) != far)
              throw square_error(alpha, p, b, q, d);
          }
        }
      }
    }
  }
  return grid;
}

}  // namespace polycover
