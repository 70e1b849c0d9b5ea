#pragma once

// Segmented sieve of Eratosthenes.

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <vector>

#include "hecke/modring.hpp"

namespace hecke {

inline constexpr u64 kMaxSieveLimit = 1'000'000'000;
inline constexpr u64 kDefaultSegmentSize = u64{1} << 20;

/// Primes in [2, limit] by a plain (unsegmented) sieve.
std::vector<u64> small_primes(u64 limit);

/// Primes in [lo, hi], one segment at a time. Memory is O(segment + sqrt(hi)).
class PrimeRange {
 public:
  PrimeRange(u64 lo, u64 hi, u64 segment_size = kDefaultSegmentSize);

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = u64;
    using difference_type = std::ptrdiff_t;
    using pointer = const u64*;
    using reference = const u64&;

    iterator() = default;
    reference operator*() const { return buffer_[pos_]; }
    iterator& operator++();
    iterator operator++(int) {
      iterator tmp = *this;
      ++*this;
      return tmp;
    }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.done_ == b.done_ && (a.done_ || (a.seg_lo_ == b.seg_lo_ && a.pos_ == b.pos_));
    }

   private:
    friend class PrimeRange;
    explicit iterator(const PrimeRange* range);
    void fill_from(u64 seg_lo);

    const PrimeRange* range_ = nullptr;
    std::vector<u64> buffer_;
    u64 seg_lo_ = 0;
    std::size_t pos_ = 0;
    bool done_ = true;
  };

  iterator begin() const { return iterator(this); }
  iterator end() const { return iterator(); }

  u64 lo() const { return lo_; }
  u64 hi() const { return hi_; }

 private:
  u64 lo_;
  u64 hi_;
  u64 segment_size_;
  std::vector<u64> base_primes_;
};

/// Primes in one window [lo, hi] using the given base primes (all primes up to
/// sqrt(hi)). Independent windows may be sieved concurrently.
std::vector<u64> sieve_segment(u64 lo, u64 hi, const std::vector<u64>& base_primes);

/// Exactly the primes in [lo, hi]; throws GuardError when hi > 10^9.
std::vector<u64> primes_in(u64 lo, u64 hi);

/// pi(x), the number of primes <= x.
u64 prime_count(u64 x);

}  // namespace hecke
