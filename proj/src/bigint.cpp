#include "polycover/bigint.hpp"

#include <stdexcept>

namespace polycover {

BigCount::BigCount(std::uint64_t value) {
  if (value > 0) limbs_.push_back(static_cast<std::uint32_t>(value));
  if (value >> 32) limbs_.push_back(static_cast<std::uint32_t>(value >> 32));
}

void BigCount::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigCount BigCount::pow2(std::uint64_t exponent) {
  BigCount r;
  r.limbs_.assign(exponent / 32 + 1, 0u);
  r.limbs_.back() = 1u << (exponent % 32);
  return r;
}

BigCount& BigCount::operator+=(const BigCount& rhs) {
  if (limbs_.size() < rhs.limbs_.size()) limbs_.resize(rhs.limbs_.size(), 0u);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t sum = carry + limbs_[i];
    if (i < rhs.limbs_.size()) sum += rhs.limbs_[i];
    limbs_[i] = static_cast<std::uint32_t>(sum);
    carry = sum >> 32;
    if (carry == 0 && i >= rhs.limbs_.size()) break;
  }
  if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
  return *this;
}

BigCount& BigCount::operator-=(const BigCount& rhs) {
  if (*this < rhs) throw std::underflow_error("BigCount: negative result");
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::int64_t diff = static_cast<std::int64_t>(limbs_[i]) - borrow;
    if (i < rhs.limbs_.size()) diff -= rhs.limbs_[i];
    borrow = 0;
    if (diff < 0) {
      diff += (std::int64_t{1} << 32);
      borrow = 1;
    }
    limbs_[i] = static_cast<std::uint32_t>(diff);
  }
  trim();
  return *this;
}

BigCount BigCount::operator*(const BigCount& rhs) const {
  if (is_zero() || rhs.is_zero()) return BigCount{};
  BigCount r;
  r.limbs_.assign(limbs_.size() + rhs.limbs_.size(), 0u);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t k = 0; k < rhs.limbs_.size(); ++k) {
      std::uint64_t cur = r.limbs_[i + k] +
                          static_cast<std::uint64_t>(limbs_[i]) * rhs.limbs_[k] + carry;
      r.limbs_[i + k] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    r.limbs_[i + rhs.limbs_.size()] += static_cast<std::uint32_t>(carry);
  }
  r.trim();
  return r;
}

std::strong_ordering BigCount::operator<=>(const BigCount& rhs) const {
  if (limbs_.size() != rhs.limbs_.size())
    return limbs_.size() <=> rhs.limbs_.size();
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    if (limbs_[i] != rhs.limbs_[i]) return limbs_[i] <=> rhs.limbs_[i];
  }
  return std::strong_ordering::equal;
}

std::string BigCount::to_string() const {
  if (limbs_.empty()) return "0";
  std::vector<std::uint32_t> work(limbs_);
  std::vector<std::uint32_t> chunks;  // base 1e9, little-endian
  while (!work.empty()) {
    std::uint64_t rem = 0;
    for (std::size_t i = work.size(); i-- > 0;) {
      std::uint64_t cur = (rem << 32) | work[i];
      work[i] = static_cast<std::uint32_t>(cur / 1000000000u);
      rem = cur % 1000000000u;
    }
    while (!work.empty() && work.back() == 0) work.pop_back();
    chunks.push_back(static_cast<std::uint32_t>(rem));
  }
  std::string out = std::to_string(chunks.back());
  for (std::size_t i = chunks.size() - 1; i-- > 0;) {
    std::string part = std::to_string(chunks[i]);
    out += std::string(9 - part.size(), '0') + part;
  }
  return out;
}

}  // namespace polycover
