#pragma once
// Shared small utilities: error type, checked preconditions, deterministic RNG.
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace comack {

using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// Raised on violated preconditions; the CLI maps it to exit code 1.
struct precondition_error : std::runtime_error {
  explicit precondition_error(const std::string& m) : std::runtime_error(m) {}
};

// Raised when a request exceeds the configured resource budget; CLI exit code 2.
struct budget_error : std::runtime_error {
  explicit budget_error(const std::string& m) : std::runtime_error(m) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw precondition_error(msg);
}

// internal invariant check (never expected to fire; not a user error)
inline void check(bool cond, const std::string& msg) {
  if (!cond) throw std::logic_error("internal invariant violated: " + msg);
}

// Deterministic RNG: fixed engine + explicit seed so identical configs give
// identical runs on any platform.
class Rng {
 public:
  explicit Rng(u64 seed) : eng_(seed) {}
  // uniform in [0, n)
  u64 below(u64 n) {
    check(n > 0, "Rng::below(0)");
    // rejection sampling keeps the distribution exactly uniform
    u64 lim = std::numeric_limits<u64>::max() - std::numeric_limits<u64>::max() % n;
    u64 v;
    do { v = eng_(); } while (v >= lim);
    return v % n;
  }
  u64 raw() { return eng_(); }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 eng_;
};

inline u64 gcd_u64(u64 a, u64 b) { while (b) { u64 t = a % b; a = b; b = t; } return a; }
inline u64 lcm_u64(u64 a, u64 b) { return a / gcd_u64(a, b) * b; }

// a^e mod m without overflow for m < 2^32
inline u64 powmod_u64(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = r * a % m;
    a = a * a % m;
    e >>= 1;
  }
  return r;
}

}  // namespace comack
