#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace polycover {

// Exact nonnegative integer. Census totals are powers of two in the wedge
// weights and overflow 64 bits as soon as the wedge vector grows.
class BigCount {
 public:
  BigCount() = default;
  BigCount(std::uint64_t value);  // NOLINT: counts mix freely with literals
  static BigCount pow2(std::uint64_t exponent);

  BigCount& operator+=(const BigCount& rhs);
  BigCount& operator-=(const BigCount& rhs);  // throws std::underflow_error
  friend BigCount operator+(BigCount lhs, const BigCount& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend BigCount operator-(BigCount lhs, const BigCount& rhs) {
    lhs -= rhs;
    return lhs;
  }
  BigCount operator*(const BigCount& rhs) const;
  BigCount& operator*=(const BigCount& rhs) {
    *this = *this * rhs;
    return *this;
  }

  std::strong_ordering operator<=>(const BigCount& rhs) const;
  bool operator==(const BigCount& rhs) const { return limbs_ == rhs.limbs_; }

  bool is_zero() const { return limbs_.empty(); }
  std::string to_string() const;

 private:
  // base 2^32, little-endian, no high zero limbs; empty means zero
  std::vector<std::uint32_t> limbs_;
  void trim();
};

}  // namespace polycover
