#include "hecke/primes.hpp"

#include <cmath>
#include <string>

namespace hecke {

namespace {

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

void check_range(u64 lo, u64 hi) {
  if (lo > hi) throw DomainError("prime range lo > hi");
  if (hi > kMaxSieveLimit) {
    throw GuardError("prime range upper end " + std::to_string(hi) + " exceeds 10^9");
  }
}

}  // namespace

std::vector<u64> small_primes(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  std::vector<char> composite(limit + 1, 0);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return out;
}

std::vector<u64> sieve_segment(u64 lo, u64 hi, const std::vector<u64>& base_primes) {
  std::vector<u64> out;
  if (lo < 2) lo = 2;
  if (lo > hi) return out;
  std::vector<char> composite(hi - lo + 1, 0);
  for (u64 p : base_primes) {
    if (p * p > hi) break;
    u64 start = std::max(p * p, (lo + p - 1) / p * p);
    for (u64 j = start; j <= hi; j += p) composite[j - lo] = 1;
  }
  for (u64 i = 0; i < composite.size(); ++i) {
    if (!composite[i]) out.push_back(lo + i);
  }
  return out;
}

PrimeRange::PrimeRange(u64 lo, u64 hi, u64 segment_size)
    : lo_(std::max<u64>(lo, 2)), hi_(hi), segment_size_(segment_size) {
  if (lo < 2) throw DomainError("prime range must start at >= 2");
  check_range(lo, hi);
  if (segment_size_ == 0) throw DomainError("segment size must be positive");
  base_primes_ = small_primes(isqrt(hi));
}

PrimeRange::iterator::iterator(const PrimeRange* range) : range_(range) {
  fill_from(range->lo_);
}

void PrimeRange::iterator::fill_from(u64 seg_lo) {
  done_ = false;
  while (seg_lo <= range_->hi_) {
    u64 seg_hi = std::min(range_->hi_, seg_lo + range_->segment_size_ - 1);
    buffer_ = sieve_segment(seg_lo, seg_hi, range_->base_primes_);
    seg_lo_ = seg_lo;
    pos_ = 0;
    if (!buffer_.empty()) return;
    seg_lo = seg_hi + 1;
  }
  done_ = true;
  buffer_.clear();
}

PrimeRange::iterator& PrimeRange::iterator::operator++() {
  if (++pos_ < buffer_.size()) return *this;
  u64 next = seg_lo_ + range_->segment_size_;
  if (next > range_->hi_ || next < seg_lo_) {
    done_ = true;
    buffer_.clear();
    return *this;
  }
  fill_from(next);
  return *this;
}

std::vector<u64> primes_in(u64 lo, u64 hi) {
  check_range(lo, hi);
  std::vector<u64> out;
  if (hi < 2) return out;
  for (u64 p : PrimeRange(std::max<u64>(lo, 2), hi)) out.push_back(p);
  return out;
}

u64 prime_count(u64 x) {
  if (x < 2) return 0;
  check_range(2, x);
  u64 count = 0;
  auto base = small_primes(isqrt(x));
  for (u64 lo = 2; lo <= x; lo += kDefaultSegmentSize) {
    u64 hi = std::min(x, lo + kDefaultSegmentSize - 1);
    count += sieve_segment(lo, hi, base).size();
  }
  return count;
}

}  // namespace hecke
