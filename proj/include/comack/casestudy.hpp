#pragma once
// Extraspecial-by-quaternion case study: block census against the closed
// count formula, four-term root-of-unity sums over F_{2^m}, the circulant
// matrix built from them, and the all-ones membership test for M - Id.
#include "cartan.hpp"

namespace comack {

struct CensusReport {
  u32 p = 0;
  u64 group_order = 0;
  u32 formula = 0;    // (p^2 - 1)/8 + p
  int computed = -1;  // block count, -1 when gated by the budget
  u32 field_degree = 0;
  std::vector<u32> ranks;  // block algebra dimensions (small orders only)
  u32 square_ranks = 0;    // how many ranks are perfect squares
};

// census of the blocks of the order-8p^3 semidirect product in
// characteristic 2; the idempotent computation runs only when the group
// order fits the budget, the closed formula is always reported
inline CensusReport block_census(u32 p, u64 seed, u64 budget = 1024) {
  require(is_prime_u32(p) && p % 2 == 1, "block_census: p must be an odd prime");
  CensusReport r;
  r.p = p;
  r.group_order = 8ull * p * p * p;
  r.formula = (p * p - 1) / 8 + p;
  if (r.group_order > budget) return r;
  Group g = xq8(p);
  r.field_degree = block_field_degree(g, 2);
  Field F = Field::make(2, r.field_degree, seed);
  std::vector<BlockIdempotent> bl = block_idempotents(g, F, seed, g.order() <= 512);
  r.computed = static_cast<int>(bl.size());
  check(static_cast<u32>(r.computed) == r.formula, "census: block count off the formula");
  if (r.group_order <= 256) {
    u64 total = 0;
    for (const BlockIdempotent& b : bl) {
      r.ranks.push_back(block_algebra_rank(g, F, b));
      total += r.ranks.back();
      u32 s = 0;
      while ((s + 1) * (s + 1) <= r.ranks.back()) ++s;
      if (s * s == r.ranks.back()) ++r.square_ranks;
    }
    check(total == g.order(), "census: block ranks must sum to the group order");
  }
  return r;
}

inline std::string census_text(const CensusReport& r) {
  std::ostringstream os;
  os << "census p=" << r.p << " order=" << r.group_order << " formula=" << r.formula
     << " computed=";
  if (r.computed < 0)
    os << "- (budget)";
  else
    os << r.computed << " field_degree=" << r.field_degree;
  if (!r.ranks.empty()) {
    os << " ranks=";
    for (std::size_t i = 0; i < r.ranks.size(); ++i) os << (i ? ";" : "") << r.ranks[i];
    os << " square_ranks=" << r.square_ranks;
  }
  os << "\n";
  return os.str();
}

struct GaussData {
  u32 p;     // prime, 1 mod 4
  u32 m;     // multiplicative order of 2 mod p
  Field F;   // F_{2^m}
  u32 zeta;  // primitive p-th root of unity
  u32 w;     // smallest order-4 element mod p (w^2 = -1)
  u32 b;     // smallest generator of the units mod p
  std::vector<u32> t;  // t[i] = sum of zeta^{w^k b^i} over k, i mod (p-1)/4
  u32 t_of_zeta;       // sum of zeta^x over the nonzero squares mod p
};

namespace detail {

inline std::vector<char> square_flags(u32 p) {
  std::vector<char> sq(p, 0);
  for (u64 y = 1; y < p; ++y) sq[y * y % p] = 1;
  return sq;
}

inline std::vector<u32> gauss_table(const Field& F, u32 zeta, u32 p, u32 w, u32 b) {
  u32 n = (p - 1) / 4;
  std::vector<u32> tv(n, 0);
  for (u32 i = 0; i < n; ++i) {
    u64 e = 1;
    for (u32 k = 0; k < i; ++k) e = e * b % p;
    for (u32 k = 0; k < 4; ++k) {
      tv[i] = F.add(tv[i], F.pow(zeta, e));
      e = e * w % p;
    }
  }
  return tv;
}

inline u32 residue_sum(const Field& F, u32 zeta, u32 p) {
  std::vector<char> sq = square_flags(p);
  u32 s = 0;
  for (u32 x = 1; x < p; ++x)
    if (sq[x]) s = F.add(s, F.pow(zeta, x));
  return s;
}

inline void verify_gauss(const GaussData& d) {
  check(d.F.order_of(d.zeta) == d.p, "gauss: zeta must have order p");
  check(static_cast<u64>(d.w) * d.w % d.p == d.p - 1u, "gauss: w^2 must be -1 mod p");
  // the index-i cosets partition the units, so the t sum over a full period
  // is the sum of all nontrivial powers of zeta: -1, which is 1 here
  u32 s = 0;
  for (u32 v : d.t) s = d.F.add(s, v);
  check(s == 1, "gauss: full t-table must sum to 1");
  // squaring shifts the table by the discrete log of 2
  u32 n = (d.p - 1) / 4;
  u32 ind = 0;
  u64 e = 1;
  while (e != 2) {
    e = e * d.b % d.p;
    ++ind;
  }
  for (u32 i = 0; i < n; ++i)
    check(d.F.mul(d.t[i], d.t[i]) == d.t[(i + ind) % n], "gauss: squaring must shift the table");
  if (d.p % 8 == 1) {
    check(d.F.mul(d.t_of_zeta, d.t_of_zeta) == d.t_of_zeta,
          "gauss: residue sum must be idempotent when 2 is a square");
    // each t_i lives in the subfield fixed by (p-1)/8 Frobenius twists
    for (u32 v : d.t) {
      u32 f = v;
      for (u32 k = 0; k < (d.p - 1) / 8; ++k) f = d.F.frobenius(f);
      check(f == v, "gauss: t values must lie in the small subfield");
    }
  }
}

}  // namespace detail

// deterministic data for the membership test: the root of unity comes from
// the field's canonical generator, w and b are the smallest valid choices
inline GaussData gauss_data(u32 p, u64 seed) {
  require(is_prime_u32(p) && p % 4 == 1, "gauss_data: p must be a prime = 1 mod 4");
  u32 m = 1;
  u64 pw = 2 % p;
  while (pw != 1) {
    pw = pw * 2 % p;
    ++m;
  }
  require(m <= 20, "gauss_data: splitting field too large");
  Field F = Field::make(2, m, seed);
  u64 q1 = (1ull << m) - 1;
  check(q1 % p == 0, "gauss_data: field order off");
  u32 zeta = F.pow(F.generator(), q1 / p);
  u32 w = 0;
  for (u32 c = 2; c < p && w == 0; ++c)
    if (static_cast<u64>(c) * c % p == p - 1u) w = c;
  u32 b = 0;
  for (u32 c = 2; c < p && b == 0; ++c) {
    u64 t = c;
    u32 ord = 1;
    while (t != 1) {
      t = t * c % p;
      ++ord;
    }
    if (ord == p - 1) b = c;
  }
  check(w != 0 && b != 0, "gauss_data: no order-4 element or generator");
  GaussData d{p,    m, F, zeta, w, b, detail::gauss_table(F, zeta, p, w, b),
              detail::residue_sum(F, zeta, p)};
  detail::verify_gauss(d);
  return d;
}

// the same data seen through zeta^c for the smallest non-square c: lands in
// the other branch, since the two residue sums add up to 1
inline GaussData gauss_twist(const GaussData& d) {
  std::vector<char> sq = detail::square_flags(d.p);
  u32 c = 2;
  while (sq[c]) ++c;
  GaussData out = d;
  out.zeta = d.F.pow(d.zeta, c);
  out.t = detail::gauss_table(d.F, out.zeta, d.p, d.w, d.b);
  out.t_of_zeta = detail::residue_sum(d.F, out.zeta, d.p);
  detail::verify_gauss(out);
  check(d.F.add(out.t_of_zeta, d.t_of_zeta) == 1, "twist must flip the residue sum");
  return out;
}

// circulant matrix over the unit cosets: entry (i,j) is t[i+j]
inline FqMatrix build_M(const GaussData& d) {
  u32 n = (d.p - 1) / 4;
  FqMatrix M(d.F, n, n);
  for (u32 i = 0; i < n; ++i)
    for (u32 j = 0; j < n; ++j) M.at(i, j) = d.t[(i + j) % n];
  return M;
}

struct MembershipVerdict {
  bool in_image = false;
  std::vector<u32> witness;  // x with (M - Id) x = all-ones, free variables zero
};

// does M - Id reach the all-ones vector?  a positive verdict carries an
// exactly re-checked witness
inline MembershipVerdict membership_test(const GaussData& d) {
  require(d.p % 8 == 1, "membership_test: needs p = 1 mod 8");
  FqMatrix A = build_M(d);
  for (u32 i = 0; i < A.rows(); ++i) A.at(i, i) = d.F.add(A.at(i, i), 1);
  std::vector<u32> ones(A.rows(), 1);
  std::optional<std::vector<u32>> x = solve(A, ones);
  if (!x) return {false, {}};
  std::vector<u32> img = A.apply(*x);
  check(img == ones, "membership witness must reproduce the target exactly");
  return {true, *x};
}

inline std::string case_study_report(const GaussData& d, const MembershipVerdict& v) {
  std::ostringstream os;
  os << "casestudy p=" << d.p << " field=" << d.F.tag() << " modulus=";
  for (std::size_t i = 0; i < d.F.modulus().size(); ++i)
    os << (i ? ";" : "") << d.F.modulus()[i];
  os << " zeta=" << d.F.str(d.zeta) << " w=" << d.w << " b=" << d.b << "\n";
  os << "convention: w is the smallest order-4 unit (w^2 = -1 mod p); a square root"
        " of 1 would repeat two values in each four-term sum\n";
  os << "t:";
  for (u32 ti : d.t) os << " " << d.F.str(ti);
  os << "\n";
  os << "t(zeta)=" << d.F.str(d.t_of_zeta) << "\n";
  os << "in_image=" << (v.in_image ? "true" : "false") << " witness=";
  if (!v.in_image)
    os << "-";
  else
    for (std::size_t i = 0; i < v.witness.size(); ++i)
      os << (i ? ";" : "") << d.F.str(v.witness[i]);
  os << "\n";
  return os.str();
}

}  // namespace comack
