#pragma once
// The Mackey algebra basis, its cohomological quotient in the standard
// double-coset basis, and the realization by endomorphisms of the total
// permutation module: per-block matrices, products along both the span
// route and the matrix route, and the cross-verification of the two.
#include <map>
#include <optional>

#include "gset.hpp"

namespace comack {

// t^H_K x r^L_{K^x} with K <= H meet xLx^-1
struct MackeyBasisKey {
  u32 H, L, x, K;
  auto tie() const { return std::tuple<u32, u32, u32, u32>(H, L, x, K); }
  bool operator==(const MackeyBasisKey& o) const { return tie() == o.tie(); }
  bool operator<(const MackeyBasisKey& o) const { return tie() < o.tie(); }
};

// t^H_{H meet xKx^-1} x r^K, one per (H, K, double coset of x)
struct CoMuKey {
  u32 H, K, x;
  auto tie() const { return std::tuple<u32, u32, u32>(H, K, x); }
  bool operator==(const CoMuKey& o) const { return tie() == o.tie(); }
  bool operator<(const CoMuKey& o) const { return tie() < o.tie(); }
};

// coefficient rings for sparse algebra elements
struct FieldRing {
  Field F;
  using value_type = u32;
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(value_type a, value_type b) const { return F.add(a, b); }
  value_type mul(value_type a, value_type b) const { return F.mul(a, b); }
  value_type neg(value_type a) const { return F.neg(a); }
  value_type from_int(i64 k) const { return F.from_int(k); }
  bool is_zero(value_type a) const { return a == 0; }
  bool same(const FieldRing& o) const { return F.same(o.F); }
  std::string str(value_type a) const { return F.str(a); }
};

struct IntRing {
  using value_type = i64;
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(value_type a, value_type b) const { return a + b; }
  value_type mul(value_type a, value_type b) const { return a * b; }
  value_type neg(value_type a) const { return -a; }
  value_type from_int(i64 k) const { return k; }
  bool is_zero(value_type a) const { return a == 0; }
  bool same(const IntRing&) const { return true; }
  std::string str(value_type a) const { return std::to_string(a); }
};

template <class R>
struct CoMuElementT {
  const Group* G = nullptr;
  R ring;
  std::map<CoMuKey, typename R::value_type> c;

  void add_term(const CoMuKey& k, typename R::value_type v) {
    if (ring.is_zero(v)) return;
    auto it = c.find(k);
    if (it == c.end()) {
      c.emplace(k, v);
      return;
    }
    it->second = ring.add(it->second, v);
    if (ring.is_zero(it->second)) c.erase(it);
  }
  bool is_zero() const { return c.empty(); }
  bool operator==(const CoMuElementT& o) const { return c == o.c; }
  CoMuElementT& accumulate(const CoMuElementT& o, typename R::value_type scale) {
    for (const auto& [k, v] : o.c) add_term(k, ring.mul(v, scale));
    return *this;
  }
};

using CoMuElement = CoMuElementT<FieldRing>;
using CoMuElementZ = CoMuElementT<IntRing>;

// ---------------------------------------------------------------------------
// basis enumeration
// ---------------------------------------------------------------------------

// representatives of left cosets hS inside H (S <= H), each the minimal
// element of its coset, ascending
inline std::vector<u32> left_transversal(const Group& g, u32 H, u32 S) {
  const Subgroup& sh = g.subgroups()[H];
  const Subgroup& ss = g.subgroups()[S];
  check(g.subgroup_subset(S, H), "left_transversal: S must be contained in H");
  std::vector<u32> reps;
  std::vector<char> seen(g.order(), 0);
  for (u32 h : sh.members) {
    if (seen[h]) continue;
    reps.push_back(h);
    for (u32 s : ss.members) seen[g.mul(h, s)] = 1;
  }
  return reps;
}

// subgroup ids contained in the subgroup `outer`, canonical under
// conjugation by `outer` (minimal id in each orbit)
inline std::vector<u32> inner_subgroup_reps(const Group& g, u32 outer) {
  const Subgroup& so = g.subgroups()[outer];
  std::vector<u32> reps;
  for (u32 k = 0; k < g.subgroups().size(); ++k) {
    if (!g.subgroup_subset(k, outer)) continue;
    u32 canon = k;
    for (u32 s : so.members)
      canon = std::min(canon, static_cast<u32>(g.subgroup_id_of_conjugate(k, s)));
    if (canon == k) reps.push_back(k);
  }
  return reps;
}

inline std::vector<MackeyBasisKey> mackey_basis(const Group& g) {
  std::vector<MackeyBasisKey> keys;
  const u32 ns = static_cast<u32>(g.subgroups().size());
  for (u32 H = 0; H < ns; ++H)
    for (u32 L = 0; L < ns; ++L) {
      const DoubleCosets& dc = g.double_cosets(H, L);
      for (u32 x : dc.reps) {
        u32 S = g.intersect_id(H, L, x);
        for (u32 K : inner_subgroup_reps(g, S)) keys.push_back(MackeyBasisKey{H, L, x, K});
      }
    }
  std::sort(keys.begin(), keys.end());
  return keys;
}

inline std::vector<CoMuKey> comu_basis(const Group& g) {
  std::vector<CoMuKey> keys;
  const u32 ns = static_cast<u32>(g.subgroups().size());
  for (u32 H = 0; H < ns; ++H)
    for (u32 K = 0; K < ns; ++K)
      for (u32 x : g.double_cosets(H, K).reps) keys.push_back(CoMuKey{H, K, x});
  std::sort(keys.begin(), keys.end());
  return keys;
}

template <class R>
CoMuElementT<R> comu_identity(const Group& g, R ring) {
  CoMuElementT<R> e{&g, ring, {}};
  for (u32 H = 0; H < g.subgroups().size(); ++H)
    e.add_term(CoMuKey{H, H, g.id()}, ring.one());
  return e;
}

// image of a Mackey basis element in the quotient: the inner subgroup K
// collapses onto H meet xLx^-1 and contributes its index as coefficient
template <class R>
CoMuElementT<R> comu_project(const Group& g, const MackeyBasisKey& k, R ring) {
  u32 S = g.intersect_id(k.H, k.L, k.x);
  const Subgroup& ss = g.subgroups()[S];
  const Subgroup& sk = g.subgroups()[k.K];
  require(g.subgroup_subset(k.K, S), "comu_project: K must lie in the intersection");
  u32 index = ss.order() / sk.order();
  CoMuElementT<R> e{&g, ring, {}};
  e.add_term(CoMuKey{k.H, k.L, k.x}, ring.from_int(static_cast<i64>(index)));
  return e;
}

// basis-key generators as quotient elements
template <class R>
CoMuElementT<R> comu_of_generator(const Group& g, const MackeyGen& gen, R ring) {
  CoMuElementT<R> e{&g, ring, {}};
  if (gen.kind == GenKind::T) {
    require(g.subgroup_subset(gen.lower, gen.upper),
            "generator: lower must be contained in upper");
    e.add_term(CoMuKey{gen.upper, gen.lower, g.id()}, ring.one());
  } else if (gen.kind == GenKind::R) {
    require(g.subgroup_subset(gen.lower, gen.upper),
            "generator: lower must be contained in upper");
    e.add_term(CoMuKey{gen.lower, gen.upper, g.id()}, ring.one());
  } else {
    u32 conj = static_cast<u32>(g.subgroup_id_of_conjugate(gen.lower, gen.g));
    const DoubleCosets& dc = g.double_cosets(conj, gen.lower);
    e.add_term(CoMuKey{conj, gen.lower, dc.reps[dc.dc_of[gen.g]]}, ring.one());
  }
  return e;
}

// ---------------------------------------------------------------------------
// span route
// ---------------------------------------------------------------------------

// the span (G/H <- G/S -> G/K) of a basis key over plain coset bases
inline Span span_of_key(const Group& g, const CoMuKey& k) {
  u32 S = g.intersect_id(k.H, k.K, k.x);
  auto mid = coset_gset(g, S);
  Span s;
  s.left_base = coset_gset(g, k.H);
  s.right_base = coset_gset(g, k.K);
  s.mid = mid;
  s.left_map.resize(mid->size());
  s.right_map.resize(mid->size());
  const CosetTable& ch = g.cosets(k.H);
  const CosetTable& ck = g.cosets(k.K);
  for (u32 i = 0; i < mid->size(); ++i) {
    u32 rep = mid->label(i).rep;
    s.left_map[i] = ch.coset_of[rep];
    s.right_map[i] = ck.coset_of[g.mul(rep, k.x)];
  }
  s.verify();
  return s;
}

// product along the Burnside route: pullback, orbit decomposition, then
// projection of every basis span into the quotient
template <class R>
CoMuElementT<R> comu_multiply(const CoMuElementT<R>& a, const CoMuElementT<R>& b) {
  require(a.G == b.G, "comu_multiply: different groups");
  require(a.ring.same(b.ring), "comu_multiply: coefficient context mismatch");
  const Group& g = *a.G;
  CoMuElementT<R> out{a.G, a.ring, {}};
  const R& ring = a.ring;
  for (const auto& [ka, ca] : a.c)
    for (const auto& [kb, cb] : b.c) {
      if (ka.K != kb.H) continue;  // mismatched inner components compose to zero
      BurnsideElement prod = span_product(span_of_key(g, ka), span_of_key(g, kb));
      typename R::value_type cab = ring.mul(ca, cb);
      for (const auto& [sk, n] : prod.coeff) {
        CoMuElementT<R> proj =
            comu_project(g, MackeyBasisKey{sk.H, sk.K, sk.x, sk.L}, ring);
        out.accumulate(proj, ring.mul(cab, ring.from_int(n)));
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// matrix route (per-block endomorphisms of the total permutation module)
// ---------------------------------------------------------------------------

// the (G/K rows) x (G/H cols) block of a basis key: column uH carries
// sum over h in [H / H meet xKx^-1] of the point u h x K
inline FqMatrix yoshida_block(const Group& g, const CoMuKey& k, const Field& F) {
  u32 S = g.intersect_id(k.H, k.K, k.x);
  std::vector<u32> trans = left_transversal(g, k.H, S);
  const CosetTable& ch = g.cosets(k.H);
  const CosetTable& ck = g.cosets(k.K);
  FqMatrix m(F, ck.points(), ch.points());
  for (u32 cu = 0; cu < ch.points(); ++cu) {
    u32 u = ch.rep[cu];
    for (u32 h : trans) {
      u32 row = ck.coset_of[g.mul(g.mul(u, h), k.x)];
      m.at(row, cu) = F.add(m.at(row, cu), 1);
    }
  }
  return m;
}

// embedding of the block into an endomorphism of the free module on Omega
inline FqMatrix yoshida_matrix(const Group& g, const CoMuKey& k, const Field& F,
                               std::shared_ptr<const GSet> om) {
  FqMatrix block = yoshida_block(g, k, F);
  FqMatrix m(F, om->size(), om->size());
  u32 r0 = om->component_start(k.K), c0 = om->component_start(k.H);
  for (u32 i = 0; i < block.rows(); ++i)
    for (u32 j = 0; j < block.cols(); ++j) m.at(r0 + i, c0 + j) = block.at(i, j);
  return m;
}

// write a (G/K x G/H) intertwiner as a combination of basis-key blocks;
// coefficients read off the identity-coset column, then verified by full
// reconstruction
inline std::map<u32, u32> decompose_block(const Group& g, u32 H, u32 K, const FqMatrix& m,
                                          const Field& F) {
  const CosetTable& ck = g.cosets(K);
  const DoubleCosets& dc = g.double_cosets(H, K);
  std::map<u32, u32> coeffs;
  FqMatrix recon(F, m.rows(), m.cols());
  for (u32 x : dc.reps) {
    u32 c = m.at(ck.coset_of[x], 0);  // coset 0 is the identity coset
    if (c == 0) continue;
    coeffs[x] = c;
    recon = recon.add(yoshida_block(g, CoMuKey{H, K, x}, F).scale(c));
  }
  check(recon == m, "decompose_block: matrix outside the double-coset span");
  return coeffs;
}

// write-once per-key block cache
class YoshidaCache {
 public:
  YoshidaCache(const Group& g, Field f) : G_(&g), F_(std::move(f)) {}
  const FqMatrix& block(const CoMuKey& k) const {
    auto it = cache_.find(k);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(k, yoshida_block(*G_, k, F_)).first->second;
  }
  const Group& group() const { return *G_; }
  const Field& field() const { return F_; }

 private:
  const Group* G_;
  Field F_;
  mutable std::map<CoMuKey, FqMatrix> cache_;
};

// product along the matrix route: accumulate block products per component
// pair, then decompose each accumulated block.  The product c = a.b acts as
// "a first, then b", so blocks compose as Mat(b) . Mat(a).
inline CoMuElement comu_multiply_matrix(const CoMuElement& a, const CoMuElement& b,
                                        const YoshidaCache& cache) {
  require(a.G == b.G, "comu_multiply_matrix: different groups");
  require(a.ring.same(b.ring), "comu_multiply_matrix: coefficient context mismatch");
  const Group& g = *a.G;
  const Field& F = cache.field();
  std::map<std::pair<u32, u32>, FqMatrix> acc;
  for (const auto& [ka, ca] : a.c)
    for (const auto& [kb, cb] : b.c) {
      if (ka.K != kb.H) continue;
      FqMatrix prod = cache.block(kb).mul(cache.block(ka)).scale(F.mul(ca, cb));
      auto key = std::make_pair(ka.H, kb.K);
      auto it = acc.find(key);
      if (it == acc.end())
        acc.emplace(key, std::move(prod));
      else
        it->second = it->second.add(prod);
    }
  CoMuElement out{a.G, a.ring, {}};
  for (const auto& [pair, m] : acc)
    for (const auto& [x, c] : decompose_block(g, pair.first, pair.second, m, F))
      out.add_term(CoMuKey{pair.first, pair.second, x}, c);
  return out;
}

// ---------------------------------------------------------------------------
// cross-verification of the two routes
// ---------------------------------------------------------------------------

struct VerifyReport {
  bool pass = true;
  u64 products = 0;
  std::string first_failure;
};

inline std::string comu_str(const CoMuElement& e) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : e.c) {
    if (!first) os << " + ";
    first = false;
    os << "t[" << k.H << "] x=" << k.x << " r[" << k.K << "] | " << e.ring.str(v);
  }
  if (first) os << "0";
  return os.str();
}

inline VerifyReport verify_yoshida(const Group& g, const Field& F) {
  std::vector<CoMuKey> basis = comu_basis(g);
  YoshidaCache cache(g, F);
  FieldRing ring{F};
  VerifyReport rep;
  auto single = [&](const CoMuKey& k) {
    CoMuElement e{&g, ring, {}};
    e.add_term(k, 1);
    return e;
  };
  for (const CoMuKey& k1 : basis)
    for (const CoMuKey& k2 : basis) {
      CoMuElement via_span = comu_multiply(single(k1), single(k2));
      CoMuElement via_matrix = comu_multiply_matrix(single(k1), single(k2), cache);
      ++rep.products;
      if (!(via_span == via_matrix)) {
        rep.pass = false;
        if (rep.first_failure.empty()) {
          std::ostringstream os;
          os << "key(" << k1.H << "," << k1.K << "," << k1.x << ") * key(" << k2.H << ","
             << k2.K << "," << k2.x << "): span route " << comu_str(via_span)
             << " vs matrix route " << comu_str(via_matrix);
          rep.first_failure = os.str();
        }
      }
    }
  // the two-sided identity behaves on every basis key
  CoMuElement one = comu_identity(g, ring);
  for (const CoMuKey& k : basis) {
    CoMuElement e = single(k);
    if (!(comu_multiply(one, e) == e) || !(comu_multiply(e, one) == e)) {
      rep.pass = false;
      if (rep.first_failure.empty()) rep.first_failure = "identity failed on a basis key";
    }
  }
  return rep;
}

}  // namespace comack
