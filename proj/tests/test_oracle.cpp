#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <set>
#include <vector>

#include "polycover/eset.hpp"
#include "polycover/oracle.hpp"

using namespace polycover;

namespace {

// Maximal-face oracle: enumerate all subsets, keep faces, drop non-maximal.
std::set<std::uint32_t> maximal_faces(const WedgeComplex& k) {
  const int n = k.total_vertices;
  std::vector<std::uint32_t> faces;
  for (std::uint32_t sub = 0; sub < (1u << n); ++sub)
    if (k.is_face(sub)) faces.push_back(sub);
  std::set<std::uint32_t> out;
  for (std::uint32_t f : faces) {
    bool maximal = true;
    for (int v = 0; v < n && maximal; ++v)
      if (!((f >> v) & 1u) && k.is_face(f | (1u << v))) maximal = false;
    if (maximal) out.insert(f);
  }
  return out;
}

std::uint64_t facet_count_formula(int m, const JTuple& j) {
  std::uint64_t total = 0;
  for (int p = 1; p <= m; ++p) {
    std::uint64_t ways = 1;
    for (int q = 1; q <= m; ++q)
      if (q != p && q != p % m + 1) ways *= j.at(q);
    total += ways;
  }
  return total;
}

}  // namespace

TEST_CASE("wedged triangle is a simplex boundary") {
  WedgeComplex k = build_complex(3, JTuple::parse("2,1,1"));
  CHECK(k.total_vertices == 4);
  CHECK(k.rank == 3);
  REQUIRE(k.minimal_nonfaces.size() == 1);
  CHECK(k.minimal_nonfaces[0] == 0b1111u);
  CHECK(k.facets.size() == 4);  // all 3-subsets
  for (std::uint32_t f : k.facets) CHECK(std::popcount(f) == 3);
}

TEST_CASE("plain square complex") {
  WedgeComplex k = build_complex(4, JTuple::ones(4));
  CHECK(k.rank == 2);
  REQUIRE(k.facets.size() == 4);
  std::set<std::uint32_t> got(k.facets.begin(), k.facets.end());
  std::set<std::uint32_t> expected = {0b0011u, 0b0110u, 0b1100u, 0b1001u};
  CHECK(got == expected);
  CHECK(k.minimal_nonfaces.size() == 2);  // the two diagonals
}

TEST_CASE("wedged square complex") {
  WedgeComplex k = build_complex(4, JTuple::parse("2,1,1,1"));
  CHECK(k.total_vertices == 5);
  CHECK(k.rank == 3);
  CHECK(k.facets.size() == 6);
  for (std::uint32_t f : k.facets) CHECK(std::popcount(f) == 3);
}

TEST_CASE("facets are exactly the maximal faces") {
  const std::vector<std::pair<int, const char*>> cases = {
      {3, "1,1,1"},   {3, "2,1,1"},   {3, "2,2,2"},     {3, "4,3,3"},
      {4, "1,1,1,1"}, {4, "2,1,1,1"}, {4, "2,2,1,1"},   {4, "3,1,2,1"},
      {4, "3,3,2,1"}, {5, "1,1,1,1,1"}, {5, "2,1,2,1,1"}, {5, "2,2,2,2,1"},
      {6, "1,1,1,1,1,1"}, {6, "2,1,1,2,1,1"}, {6, "2,2,2,2,1,1"}};
  for (const auto& [m, text] : cases) {
    JTuple j = JTuple::parse(text);
    WedgeComplex k = build_complex(m, j);
    std::set<std::uint32_t> listed(k.facets.begin(), k.facets.end());
    CHECK(listed.size() == k.facets.size());
    CHECK(listed == maximal_faces(k));
    CHECK(k.facets.size() == facet_count_formula(m, j));
    for (std::uint32_t f : k.facets) CHECK(std::popcount(f) == k.rank);
  }
}

TEST_CASE("complex guards") {
  CHECK_THROWS_AS(build_complex(2, JTuple::parse("1,1")), std::invalid_argument);
  CHECK_THROWS_AS(build_complex(5, JTuple::parse("9,9,9,1,1")), guard_error);
}

TEST_CASE("brute force counts on simplex boundaries") {
  CHECK(count_classes_bruteforce(3, JTuple::parse("1,1,1")) == BigCount(1));
  CHECK(count_classes_bruteforce(3, JTuple::parse("2,1,1")) == BigCount(1));
  CHECK(count_classes_bruteforce(3, JTuple::parse("2,2,2")) == BigCount(1));
}

TEST_CASE("brute force counts match the diagram census") {
  CHECK(count_classes_bruteforce(4, JTuple::parse("2,1,1,1")) == BigCount(5));
  CHECK(count_classes_bruteforce(4, JTuple::parse("2,2,1,1")) == BigCount(7));
  CHECK(count_classes_bruteforce(6, JTuple::ones(6)) == BigCount(11));
  CHECK(count_classes_bruteforce(6, JTuple::ones(6), 4) == BigCount(11));
  CHECK(count_classes_bruteforce(5, JTuple::parse("2,1,1,1,1")) == BigCount(9));
}

TEST_CASE("brute force refuses oversized scans with an estimate") {
  try {
    count_classes_bruteforce(10, JTuple::parse("2,2,2,2,2,2,2,2,2,2"));
    FAIL("guard did not trigger");
  } catch (const guard_error& e) {
    CHECK(std::string(e.what()).find("1e8") != std::string::npos);
  }
}

TEST_CASE("blow-up closure reproduces the real toric classes") {
  auto closure = real_toric_closure(8);
  CHECK(closure[3].size() == 1);
  CHECK(closure[3][0] == parse_class("abc"));

  REQUIRE(closure[4].size() == 3);
  CHECK(closure[4][0] == parse_class("abab"));
  CHECK(closure[4][1] == parse_class("abac"));
  CHECK(closure[4][2] == parse_class("abcb"));

  for (int m = 3; m <= 8; ++m) {
    std::set<DJClass> reached(closure[m].begin(), closure[m].end());
    std::set<DJClass> predicted;
    for (const DJClass& cls : enumerate_classes(m))
      if (is_real_toric_class(cls)) predicted.insert(cls);
    CHECK(reached == predicted);
  }
  CHECK_THROWS_AS(real_toric_closure(13), std::invalid_argument);
}

TEST_CASE("verification harness agrees on the reference matrix") {
  {
    VerifyReport r = verify(4, JTuple::parse("2,2,1,1"));
    CHECK(r.agree);
    CHECK(r.diagram == BigCount(7));
    REQUIRE(r.formula.has_value());
    CHECK(*r.formula == BigCount(7));
    CHECK(r.bruteforce == BigCount(7));
  }
  {
    VerifyReport r = verify(5, JTuple::parse("2,1,1,1,1"));
    CHECK(r.agree);
    CHECK(r.diagram == BigCount(9));
  }
  {
    VerifyReport r = verify(3, JTuple::parse("2,2,2"));
    CHECK(r.agree);
    CHECK(r.diagram == BigCount(1));
    CHECK_FALSE(r.formula.has_value());
  }
  {
    // the double wedge with type-2 contributions: 49 type-1 plus 8 type-2
    VerifyReport r = verify(6, JTuple::parse("2,1,1,2,1,1"), 2);
    CHECK(r.agree);
    CHECK(r.diagram == BigCount(57));
  }
}
