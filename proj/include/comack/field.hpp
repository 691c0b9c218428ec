#pragma once
// Exact arithmetic in F_{p^m}: seeded deterministic irreducible-modulus
// search, table-driven element arithmetic (elements are integer codes
// sum c_i p^i for the coefficient vector of the residue polynomial in t),
// and the polynomial layer on top (gcd, modular exponentiation, squarefree /
// distinct-degree / equal-degree factorization).
#include <algorithm>
#include <cctype>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "util.hpp"

namespace comack {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {
// dense polynomials over the prime field F_p, used only to bootstrap a field
using PPoly = std::vector<u32>;  // ascending coefficients, normalized

inline void ptrim(PPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}
inline PPoly pmulmod(const PPoly& a, const PPoly& b, const PPoly& mod, u32 p) {
  if (a.empty() || b.empty()) return {};
  std::vector<u64> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<u64>(a[i]) * b[j];
  PPoly r(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<u32>(acc[i] % p);
  // reduce mod the monic modulus
  std::size_t dm = mod.size() - 1;
  for (std::size_t i = r.size(); i-- > dm;) {
    u32 c = r[i];
    if (c == 0) continue;
    r[i] = 0;
    for (std::size_t j = 0; j < dm; ++j)
      r[i - dm + j] = (r[i - dm + j] + static_cast<u64>(c) * (p - mod[j])) % p;
  }
  r.resize(dm);
  ptrim(r);
  return r;
}
inline PPoly ppowmod(PPoly base, u64 e, const PPoly& mod, u32 p) {
  PPoly r{1};
  while (e) {
    if (e & 1) r = pmulmod(r, base, mod, p);
    base = pmulmod(base, base, mod, p);
    e >>= 1;
  }
  return r;
}
inline PPoly pgcd(PPoly a, PPoly b, u32 p) {
  auto inv_mod_p = [p](u32 x) {
    u32 r = 1, e = p - 2, base = x % p;
    while (e) {
      if (e & 1) r = static_cast<u64>(r) * base % p;
      base = static_cast<u64>(base) * base % p;
      e >>= 1;
    }
    return r;
  };
  while (!b.empty()) {
    // a mod b
    u32 lead_inv = inv_mod_p(b.back());
    while (a.size() >= b.size() && !a.empty()) {
      u32 c = static_cast<u64>(a.back()) * lead_inv % p;
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i)
        a[shift + i] = (a[shift + i] + static_cast<u64>(c) * (p - b[i])) % p;
      ptrim(a);
      if (a.size() < b.size()) break;
    }
    std::swap(a, b);
  }
  return a;
}
// Rabin irreducibility test for a monic polynomial over F_p
inline bool irreducible_mod_p(const PPoly& f, u32 p) {
  std::size_t m = f.size() - 1;
  if (m == 0) return false;
  PPoly x{0, 1};
  // x^{p^m} == x mod f
  PPoly h = x;
  for (std::size_t i = 0; i < m; ++i) h = ppowmod(h, p, f, p);
  PPoly hx = h;
  // h - x
  if (hx.size() < 2) hx.resize(2, 0);
  hx[1] = (hx[1] + p - 1) % p;
  ptrim(hx);
  if (!hx.empty()) return false;
  // gcd(x^{p^{m/l}} - x, f) == 1 for every prime l | m
  std::vector<std::size_t> prime_divs;
  std::size_t tmp = m;
  for (std::size_t l = 2; l <= tmp; ++l)
    if (tmp % l == 0) {
      prime_divs.push_back(l);
      while (tmp % l == 0) tmp /= l;
    }
  for (std::size_t l : prime_divs) {
    PPoly g = x;
    for (std::size_t i = 0; i < m / l; ++i) g = ppowmod(g, p, f, p);
    if (g.size() < 2) g.resize(2, 0);
    g[1] = (g[1] + p - 1) % p;
    ptrim(g);
    if (pgcd(f, g, p).size() != 1) return false;
  }
  return true;
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Field
// ---------------------------------------------------------------------------

class Field {
 public:
  static constexpr u64 kMaxQ = u64(1) << 22;

  static Field make(u32 p, u32 m, u64 seed) {
    require(p >= 2, "field: p must be prime");
    for (u32 d = 2; d * d <= p; ++d) require(p % d != 0, "field: p must be prime");
    require(m >= 1, "field: m >= 1");
    u64 q = 1;
    for (u32 i = 0; i < m; ++i) {
      q *= p;
      require(q <= kMaxQ, "field: p^m too large");
    }
    auto t = std::make_shared<Tables>();
    t->p = p;
    t->m = m;
    t->q = q;
    t->seed = seed;
    t->pw.resize(m + 1);
    t->pw[0] = 1;
    for (u32 i = 1; i <= m; ++i) t->pw[i] = t->pw[i - 1] * p;

    if (m == 1) {
      t->modulus = {0, 1};  // the x - 0 convention for prime fields
    } else {
      // seeded deterministic search over monic degree-m polynomials
      Rng rng(seed ^ (static_cast<u64>(p) << 32) ^ m);
      detail::PPoly f(m + 1);
      f[m] = 1;
      for (;;) {
        u64 code = rng.below(q);
        for (u32 i = 0; i < m; ++i) {
          f[i] = code % p;
          code /= p;
        }
        if (f[0] != 0 && detail::irreducible_mod_p(f, p)) break;
      }
      t->modulus.assign(f.begin(), f.end());
    }

    // multiplication by repeated-exponentiation needs raw code multiplication
    auto code_mul = [&](u64 a, u64 b) {
      detail::PPoly fa, fb;
      for (u64 x = a; x; x /= p) fa.push_back(x % p);
      for (u64 x = b; x; x /= p) fb.push_back(x % p);
      detail::PPoly mod(t->modulus.begin(), t->modulus.end());
      detail::PPoly r = detail::pmulmod(fa, fb, mod, p);
      u64 code = 0;
      for (std::size_t i = r.size(); i-- > 0;) code = code * p + r[i];
      return code;
    };
    auto code_pow = [&](u64 a, u64 e) {
      u64 r = 1;
      while (e) {
        if (e & 1) r = code_mul(r, a);
        a = code_mul(a, a);
        e >>= 1;
      }
      return r;
    };

    // smallest multiplicative generator (deterministic, independent of seed)
    std::vector<u64> prime_factors;
    {
      u64 n = q - 1;
      for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) {
          prime_factors.push_back(d);
          while (n % d == 0) n /= d;
        }
      if (n > 1) prime_factors.push_back(n);
    }
    u64 gen = 0;
    for (u64 g = q >= 3 ? 2 : 1; g < q; ++g) {
      bool ok = true;
      for (u64 r : prime_factors)
        if (code_pow(g, (q - 1) / r) == 1) { ok = false; break; }
      if (ok) { gen = g; break; }
    }
    check(gen != 0 || q == 2, "no field generator found");
    if (q == 2) gen = 1;
    t->generator = static_cast<u32>(gen);

    t->exp.resize(q - 1);
    t->log.assign(q, 0);
    u64 cur = 1;
    for (u64 k = 0; k < q - 1; ++k) {
      t->exp[k] = static_cast<u32>(cur);
      t->log[cur] = static_cast<u32>(k);
      cur = code_mul(cur, gen);
    }
    check(cur == 1, "generator order mismatch");

    if (p != 2 && q <= 512) {
      t->addtab.resize(q * q);
      for (u64 a = 0; a < q; ++a)
        for (u64 b = 0; b < q; ++b) {
          u64 r = 0;
          for (u32 i = 0; i < m; ++i)
            r += (a / t->pw[i] % p + b / t->pw[i] % p) % p * t->pw[i];
          t->addtab[a * q + b] = static_cast<u32>(r);
        }
    }
    return Field(std::move(t));
  }

  u32 p() const { return t_->p; }
  u32 m() const { return t_->m; }
  u64 q() const { return t_->q; }
  u64 seed() const { return t_->seed; }
  u32 generator() const { return t_->generator; }
  const std::vector<u32>& modulus() const { return t_->modulus; }
  bool same(const Field& o) const {
    return t_ == o.t_ || (t_->p == o.t_->p && t_->m == o.t_->m && t_->modulus == o.t_->modulus);
  }

  u32 add(u32 a, u32 b) const {
    if (t_->p == 2) return a ^ b;
    if (!t_->addtab.empty()) return t_->addtab[static_cast<u64>(a) * t_->q + b];
    u64 r = 0;
    for (u32 i = 0; i < t_->m; ++i)
      r += (a / t_->pw[i] % t_->p + b / t_->pw[i] % t_->p) % t_->p * t_->pw[i];
    return static_cast<u32>(r);
  }
  u32 neg(u32 a) const {
    if (t_->p == 2) return a;
    u64 r = 0;
    for (u32 i = 0; i < t_->m; ++i)
      r += (t_->p - a / t_->pw[i] % t_->p) % t_->p * t_->pw[i];
    return static_cast<u32>(r);
  }
  u32 sub(u32 a, u32 b) const { return add(a, neg(b)); }
  u32 mul(u32 a, u32 b) const {
    if (a == 0 || b == 0) return 0;
    u64 s = static_cast<u64>(t_->log[a]) + t_->log[b];
    if (s >= t_->q - 1) s -= t_->q - 1;
    return t_->exp[s];
  }
  u32 inv(u32 a) const {
    require(a != 0, "field: division by zero");
    u32 l = t_->log[a];
    return t_->exp[l == 0 ? 0 : t_->q - 1 - l];
  }
  u32 div(u32 a, u32 b) const { return mul(a, inv(b)); }
  u32 pow(u32 a, u64 e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    u64 l = static_cast<u64>(t_->log[a]) * (e % (t_->q - 1)) % (t_->q - 1);
    return t_->exp[l];
  }
  u32 frobenius(u32 a) const { return pow(a, t_->p); }
  u32 from_int(i64 k) const {
    i64 r = k % static_cast<i64>(t_->p);
    if (r < 0) r += t_->p;
    return static_cast<u32>(r);
  }
  u32 coeff(u32 a, u32 i) const { return a / t_->pw[i] % t_->p; }
  bool in_prime_field(u32 a) const { return a < t_->p; }
  // multiplicative order of a nonzero element
  u64 order_of(u32 a) const {
    require(a != 0, "field: order of zero");
    u64 k = t_->log[a];
    return (t_->q - 1) / gcd_u64(t_->q - 1, k == 0 ? t_->q - 1 : k);
  }

  // element rendering: fixed m-term polynomial string a0+a1*t+...
  std::string str(u32 a) const {
    std::ostringstream os;
    for (u32 i = 0; i < t_->m; ++i) {
      if (i) os << "+";
      os << coeff(a, i);
      if (i == 1) os << "*t";
      if (i >= 2) os << "*t^" << i;
    }
    return os.str();
  }
  u32 parse_elem(const std::string& s) const {
    u64 code = 0;
    u32 i = 0;
    std::size_t pos = 0;
    while (pos < s.size()) {
      std::size_t next = s.find('+', pos);
      std::string term = s.substr(pos, next == std::string::npos ? next : next - pos);
      std::size_t star = term.find('*');
      u64 c = std::stoull(term.substr(0, star));
      require(c < t_->p, "field: coefficient out of range");
      require(i < t_->m, "field: too many coefficients");
      code += c * t_->pw[i];
      ++i;
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    return static_cast<u32>(code);
  }

  // context tag "p^m/c0,c1,...,cm"
  std::string tag() const {
    std::ostringstream os;
    os << t_->p << "^" << t_->m << "/";
    for (std::size_t i = 0; i < t_->modulus.size(); ++i) {
      if (i) os << ",";
      os << t_->modulus[i];
    }
    return os.str();
  }

 private:
  struct Tables {
    u32 p = 0, m = 0;
    u64 q = 0, seed = 0;
    u32 generator = 0;
    std::vector<u32> modulus;
    std::vector<u32> exp, log;
    std::vector<u32> addtab;
    std::vector<u32> pw;
  };
  explicit Field(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}
  std::shared_ptr<const Tables> t_;
};

// ---------------------------------------------------------------------------
// polynomials over a Field (coefficient codes, ascending order, normalized)
// ---------------------------------------------------------------------------

struct Poly {
  std::vector<u32> c;
  bool is_zero() const { return c.empty(); }
  int deg() const { return static_cast<int>(c.size()) - 1; }
  u32 lead() const { return c.back(); }
  bool operator==(const Poly& o) const { return c == o.c; }
  bool operator<(const Poly& o) const {  // canonical order: degree then codes
    if (c.size() != o.c.size()) return c.size() < o.c.size();
    return std::lexicographical_compare(c.rbegin(), c.rend(), o.c.rbegin(), o.c.rend());
  }
};

namespace poly {

inline Poly trim(Poly f) {
  while (!f.c.empty() && f.c.back() == 0) f.c.pop_back();
  return f;
}
inline Poly constant(u32 v) { return v ? Poly{{v}} : Poly{}; }
inline Poly x() { return Poly{{0, 1}}; }

inline Poly add(const Field& F, const Poly& a, const Poly& b) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i)
    r.c[i] = F.add(i < a.c.size() ? a.c[i] : 0, i < b.c.size() ? b.c[i] : 0);
  return trim(std::move(r));
}
inline Poly sub(const Field& F, const Poly& a, const Poly& b) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i)
    r.c[i] = F.sub(i < a.c.size() ? a.c[i] : 0, i < b.c.size() ? b.c[i] : 0);
  return trim(std::move(r));
}
inline Poly scale(const Field& F, const Poly& a, u32 s) {
  if (s == 0) return {};
  Poly r = a;
  for (u32& v : r.c) v = F.mul(v, s);
  return r;
}
inline Poly mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Poly r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
  }
  return trim(std::move(r));
}
// division with remainder by a nonzero divisor
inline std::pair<Poly, Poly> divmod(const Field& F, Poly a, const Poly& b) {
  check(!b.is_zero(), "poly division by zero");
  Poly q;
  if (a.c.size() >= b.c.size()) q.c.assign(a.c.size() - b.c.size() + 1, 0);
  u32 li = F.inv(b.lead());
  while (!a.is_zero() && a.c.size() >= b.c.size()) {
    u32 f = F.mul(a.lead(), li);
    std::size_t shift = a.c.size() - b.c.size();
    q.c[shift] = f;
    for (std::size_t i = 0; i < b.c.size(); ++i)
      a.c[shift + i] = F.sub(a.c[shift + i], F.mul(f, b.c[i]));
    a = trim(std::move(a));
  }
  return {trim(std::move(q)), std::move(a)};
}
inline Poly mod(const Field& F, Poly a, const Poly& b) { return divmod(F, std::move(a), b).second; }
inline Poly divexact(const Field& F, Poly a, const Poly& b) {
  auto [q, r] = divmod(F, std::move(a), b);
  check(r.is_zero(), "poly division not exact");
  return q;
}
inline Poly monic(const Field& F, Poly f) {
  if (f.is_zero()) return f;
  return scale(F, f, F.inv(f.lead()));
}
inline Poly gcd(const Field& F, Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = mod(F, std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, std::move(a));
}
// extended gcd: returns (g, u, v) with u*a + v*b = g (g monic)
inline std::tuple<Poly, Poly, Poly> egcd(const Field& F, Poly a, Poly b) {
  Poly u0 = constant(1), v0, u1, v1 = constant(1);
  while (!b.is_zero()) {
    auto [q, r] = divmod(F, std::move(a), b);
    a = std::move(b);
    b = std::move(r);
    Poly u2 = sub(F, u0, mul(F, q, u1));
    Poly v2 = sub(F, v0, mul(F, q, v1));
    u0 = std::move(u1);
    v0 = std::move(v1);
    u1 = std::move(u2);
    v1 = std::move(v2);
  }
  if (a.is_zero()) return {a, u0, v0};
  u32 li = F.inv(a.lead());
  return {scale(F, a, li), scale(F, u0, li), scale(F, v0, li)};
}
inline Poly mulmod(const Field& F, const Poly& a, const Poly& b, const Poly& m) {
  return mod(F, mul(F, a, b), m);
}
inline Poly powmod(const Field& F, Poly base, u64 e, const Poly& m) {
  Poly r = mod(F, constant(1), m);
  base = mod(F, std::move(base), m);
  while (e) {
    if (e & 1) r = mulmod(F, r, base, m);
    base = mulmod(F, base, base, m);
    e >>= 1;
  }
  return r;
}
inline Poly powmod_big(const Field& F, Poly base, BigInt e, const Poly& m) {
  Poly r = mod(F, constant(1), m);
  base = mod(F, std::move(base), m);
  while (e > 0) {
    if ((e & 1) != 0) r = mulmod(F, r, base, m);
    base = mulmod(F, base, base, m);
    e >>= 1;
  }
  return r;
}
inline Poly derivative(const Field& F, const Poly& f) {
  Poly r;
  if (f.c.size() <= 1) return r;
  r.c.resize(f.c.size() - 1);
  for (std::size_t i = 1; i < f.c.size(); ++i) {
    u32 s = F.from_int(static_cast<i64>(i % F.p()));
    r.c[i - 1] = F.mul(f.c[i], s);
  }
  return trim(std::move(r));
}
inline u32 eval(const Field& F, const Poly& f, u32 v) {
  u32 r = 0;
  for (std::size_t i = f.c.size(); i-- > 0;) r = F.add(F.mul(r, v), f.c[i]);
  return r;
}
inline std::string str(const Field& F, const Poly& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    if (f.c[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << F.str(f.c[i]) << ")";
    if (i == 1) os << "*x";
    if (i >= 2) os << "*x^" << i;
  }
  return os.str();
}

// p-th root of a polynomial with zero derivative: f = g(x^p)
inline Poly pth_root(const Field& F, const Poly& f) {
  Poly g;
  u32 p = F.p();
  g.c.resize(f.c.size() / p + 1, 0);
  for (std::size_t i = 0; i * p < f.c.size(); ++i) {
    u32 c = f.c[i * p];
    // inverse Frobenius: c^(p^(m-1))
    for (u32 k = 1; k < F.m(); ++k) c = F.frobenius(c);
    g.c[i] = c;
  }
  return trim(std::move(g));
}

struct Factor {
  Poly f;
  u32 mult;
};

// squarefree decomposition of a monic polynomial
inline void squarefree(const Field& F, Poly f, u32 outer_mult, std::vector<Factor>& out) {
  if (f.deg() <= 0) return;
  Poly d = derivative(F, f);
  if (d.is_zero()) {
    squarefree(F, pth_root(F, f), outer_mult * F.p(), out);
    return;
  }
  Poly c = gcd(F, f, d);
  Poly w = divexact(F, f, c);
  u32 i = 1;
  while (w.deg() > 0) {
    Poly y = gcd(F, w, c);
    Poly z = divexact(F, w, y);
    if (z.deg() > 0) out.push_back({monic(F, z), i * outer_mult});
    w = std::move(y);
    c = divexact(F, c, w);
    ++i;
  }
  // what is left of c is a p-th power; the recursion's zero-derivative
  // branch extracts the root and scales the multiplicity
  if (c.deg() > 0) squarefree(F, std::move(c), outer_mult, out);
}

// equal-degree splitting (Cantor-Zassenhaus), f squarefree product of
// irreducibles of degree d
inline void edf(const Field& F, const Poly& f, u32 d, Rng& rng, std::vector<Poly>& out) {
  if (f.deg() == static_cast<int>(d)) {
    out.push_back(monic(F, f));
    return;
  }
  const u32 n = static_cast<u32>(f.deg());
  Poly split;
  for (;;) {
    Poly r;
    r.c.resize(n);
    for (u32 i = 0; i < n; ++i) r.c[i] = static_cast<u32>(rng.below(F.q()));
    r = trim(std::move(r));
    if (r.deg() < 1) continue;
    Poly g = gcd(F, r, f);
    if (g.deg() > 0 && g.deg() < f.deg()) { split = g; break; }
    Poly s;
    if (F.p() == 2) {
      // trace map T(r) = sum r^{2^i}, i < d*m
      Poly t = mod(F, r, f), acc = t;
      for (u32 i = 1; i < d * F.m(); ++i) {
        t = mulmod(F, t, t, f);
        acc = add(F, acc, t);
      }
      s = std::move(acc);
    } else {
      BigInt qd = 1;
      for (u32 i = 0; i < d; ++i) qd *= F.q();
      s = powmod_big(F, r, (qd - 1) / 2, f);
      s = sub(F, s, constant(1));
    }
    Poly g2 = gcd(F, s, f);
    if (g2.deg() > 0 && g2.deg() < f.deg()) { split = g2; break; }
  }
  edf(F, split, d, rng, out);
  edf(F, divexact(F, f, split), d, rng, out);
}

// full factorization of a nonzero polynomial into monic irreducibles with
// multiplicities, canonically sorted; the unit is discarded.  Verifies that
// the product of the factors reproduces the monic part of the input.
inline std::vector<Factor> factor(const Field& F, const Poly& input, u64 seed) {
  require(!input.is_zero(), "factor: zero polynomial");
  Rng rng(seed ^ 0xfac70fULL);
  std::vector<Factor> sqf;
  squarefree(F, monic(F, input), 1, sqf);
  std::vector<Factor> out;
  for (const Factor& part : sqf) {
    // distinct-degree on the squarefree part
    Poly f = part.f;
    Poly h = mod(F, x(), f);
    u32 d = 0;
    while (f.deg() > 0) {
      ++d;
      if (2 * d > static_cast<u32>(f.deg())) {
        out.push_back({monic(F, f), part.mult});
        break;
      }
      h = powmod(F, h, F.q(), f);
      Poly g = gcd(F, sub(F, h, x()), f);
      if (g.deg() > 0) {
        std::vector<Poly> irr;
        edf(F, g, d, rng, irr);
        for (Poly& pf : irr) out.push_back({std::move(pf), part.mult});
        f = divexact(F, f, g);
        h = mod(F, h, f);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) { return a.f < b.f; });
  // trust-but-verify: multiply everything back together
  Poly prod = constant(1);
  for (const Factor& fac : out)
    for (u32 i = 0; i < fac.mult; ++i) prod = mul(F, prod, fac.f);
  check(prod == monic(F, input), "factor: product check failed");
  return out;
}

}  // namespace poly

using FieldCtx = Field;
inline Field field_make(u32 p, u32 m, u64 seed) { return Field::make(p, m, seed); }

// parse "p^m/c0,c1,...,cm" back into a context (modulus must match the
// seeded search result for some seed; here we rebuild tables directly)
inline Field parse_field_tag(const std::string& tag, u64 seed) {
  auto caret = tag.find('^');
  auto slash = tag.find('/');
  require(caret != std::string::npos && slash != std::string::npos && caret < slash,
          "field tag: expected p^m/coeffs");
  u32 p = static_cast<u32>(std::stoul(tag.substr(0, caret)));
  u32 m = static_cast<u32>(std::stoul(tag.substr(caret + 1, slash - caret - 1)));
  Field F = Field::make(p, m, seed);
  // verify the modulus in the tag matches (different seeds may disagree)
  std::vector<u32> coeffs;
  std::string rest = tag.substr(slash + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    auto comma = rest.find(',', pos);
    coeffs.push_back(static_cast<u32>(std::stoul(rest.substr(pos, comma - pos))));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  require(coeffs == F.modulus(), "field tag: modulus does not match the seeded search result");
  return F;
}

}  // namespace comack
