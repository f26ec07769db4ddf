#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace srlab {

/// Unsigned big integer, little-endian 32-bit limbs. Permutation group
/// orders at degree <= 128 overflow 64 bits, so exact orders live here.
class BigUint {
 public:
  BigUint() = default;
  BigUint(std::uint64_t v) {
    while (v) {
      limbs_.push_back(static_cast<std::uint32_t>(v));
      v >>= 32;
    }
  }

  bool is_zero() const { return limbs_.empty(); }

  void mul_small(std::uint64_t f) {
    if (f == 0 || is_zero()) {
      limbs_.clear();
      return;
    }
    std::uint64_t lo = f & 0xffffffffu, hi = f >> 32;
    std::vector<std::uint32_t> out(limbs_.size() + 2, 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      std::uint64_t cur = limbs_[i];
      add_at(out, i, cur * lo);
      if (hi) add_at(out, i + 1, cur * hi);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    limbs_ = std::move(out);
  }

  BigUint operator*(const BigUint& rhs) const {
    BigUint out;
    out.limbs_.assign(limbs_.size() + rhs.limbs_.size(), 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i)
      for (std::size_t j = 0; j < rhs.limbs_.size(); ++j)
        add_at(out.limbs_, i + j,
               static_cast<std::uint64_t>(limbs_[i]) * rhs.limbs_[j]);
    while (!out.limbs_.empty() && out.limbs_.back() == 0) out.limbs_.pop_back();
    return out;
  }

  bool operator==(const BigUint& rhs) const { return limbs_ == rhs.limbs_; }
  bool operator!=(const BigUint& rhs) const { return !(*this == rhs); }
  bool operator<(const BigUint& rhs) const {
    if (limbs_.size() != rhs.limbs_.size())
      return limbs_.size() < rhs.limbs_.size();
    for (std::size_t i = limbs_.size(); i-- > 0;)
      if (limbs_[i] != rhs.limbs_[i]) return limbs_[i] < rhs.limbs_[i];
    return false;
  }
  bool operator<=(const BigUint& rhs) const { return !(rhs < *this); }

  /// True when the value fits in 64 bits.
  bool fits_u64() const { return limbs_.size() <= 2; }
  std::uint64_t as_u64() const {
    std::uint64_t v = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) v = (v << 32) | limbs_[i];
    return v;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::vector<std::uint32_t> work = limbs_;
    std::string digits;
    while (!work.empty()) {
      std::uint64_t rem = 0;
      for (std::size_t i = work.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | work[i];
        work[i] = static_cast<std::uint32_t>(cur / 1000000000u);
        rem = cur % 1000000000u;
      }
      while (!work.empty() && work.back() == 0) work.pop_back();
      for (int k = 0; k < 9; ++k) {
        digits.push_back(static_cast<char>('0' + rem % 10));
        rem /= 10;
      }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    return std::string(digits.rbegin(), digits.rend());
  }

 private:
  static void add_at(std::vector<std::uint32_t>& limbs, std::size_t pos,
                     std::uint64_t v) {
    while (v) {
      if (pos >= limbs.size()) limbs.resize(pos + 1, 0);
      std::uint64_t sum = limbs[pos] + (v & 0xffffffffu);
      limbs[pos] = static_cast<std::uint32_t>(sum);
      v = (v >> 32) + (sum >> 32);
      ++pos;
    }
  }

  std::vector<std::uint32_t> limbs_;
};

}  // namespace srlab
