#pragma once

#include <cassert>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace eqc {

/// Either a value or an error carrying a replayable witness.
template <typename T, typename E>
class Result {
public:
  Result(T v) : data_(std::move(v)) {}
  Result(E e) : data_(std::move(e)) {}

  bool ok() const { return std::holds_alternative<T>(data_); }
  const T& value() const { return std::get<T>(data_); }
  T& value() { return std::get<T>(data_); }
  const E& error() const { return std::get<E>(data_); }

private:
  std::variant<T, E> data_;
};

/// Fixed-size bitset sized at runtime.  Used for order relations,
/// down-sets and subset-valued fiber elements.
class Bits {
public:
  Bits() : n_(0) {}
  explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  bool subset_of(const Bits& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }
  Bits operator&(const Bits& o) const {
    Bits r(n_);
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] = w_[k] & o.w_[k];
    return r;
  }
  Bits operator|(const Bits& o) const {
    Bits r(n_);
    for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] = w_[k] | o.w_[k];
    return r;
  }
  bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += __builtin_popcountll(w);
    return c;
  }
  /// Highest set bit position, or -1 when empty.
  long top_bit() const {
    for (std::size_t k = w_.size(); k-- > 0;)
      if (w_[k]) return long(k) * 64 + (63 - __builtin_clzll(w_[k]));
    return -1;
  }

private:
  std::size_t n_;
  std::vector<std::uint64_t> w_;
};

/// FNV-1a over a byte view; used for fixture digests in reports.
inline std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t n) {
  auto p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}
inline std::uint64_t fnv1a(const std::string& s) {
  return fnv1a(1469598103934665603ULL, s.data(), s.size());
}

}  // namespace eqc
