#pragma once
// Center of the group algebra in class-sum coordinates, its primitive
// idempotents (the blocks), the explicit embedding of the center into the
// double-coset algebra, block membership for modules, and a field-growth
// stability check for the block count.
#include "mackey.hpp"
#include "modrep.hpp"

namespace comack {

struct CenterElement {
  const Group* G = nullptr;
  Field F;
  std::vector<u32> by_class;  // coefficient per conjugacy class

  u32 lambda(u32 x) const { return by_class[G->class_of()[x]]; }
  std::vector<u32> expanded() const {
    std::vector<u32> out(G->order());
    for (u32 x = 0; x < G->order(); ++x) out[x] = lambda(x);
    return out;
  }
  bool is_zero() const {
    return std::all_of(by_class.begin(), by_class.end(), [](u32 c) { return c == 0; });
  }
  bool operator==(const CenterElement& o) const { return by_class == o.by_class; }
};

inline CenterElement center_zero(const Group& g, const Field& F) {
  return CenterElement{&g, F, std::vector<u32>(g.conjugacy_classes().size(), 0)};
}

inline CenterElement center_identity(const Group& g, const Field& F) {
  CenterElement z = center_zero(g, F);
  z.by_class[g.class_of()[g.id()]] = 1;
  return z;
}

// class sums, indexed by conjugacy class
inline std::vector<CenterElement> center_basis(const Group& g, const Field& F) {
  std::vector<CenterElement> basis;
  for (std::size_t i = 0; i < g.conjugacy_classes().size(); ++i) {
    CenterElement z = center_zero(g, F);
    z.by_class[i] = 1;
    basis.push_back(std::move(z));
  }
  return basis;
}

inline CenterElement center_add(const CenterElement& a, const CenterElement& b) {
  require(a.G == b.G && a.F.same(b.F), "center_add: context mismatch");
  CenterElement out = a;
  for (std::size_t i = 0; i < out.by_class.size(); ++i)
    out.by_class[i] = a.F.add(out.by_class[i], b.by_class[i]);
  return out;
}

namespace detail {

// coefficients of z1*z2 on the group basis, collapsed back to class
// coordinates; the collapse asserts constancy on every class
inline std::vector<u32> center_collapse(const Group& g, const Field& F,
                                        const std::vector<u32>& elem) {
  const auto& classes = g.conjugacy_classes();
  std::vector<u32> out(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    out[i] = elem[classes[i][0]];
    for (u32 x : classes[i])
      check(elem[x] == out[i], "center product not constant on a conjugacy class");
  }
  return out;
}

inline std::vector<u32> center_expand_product(const CenterElement& a, const CenterElement& b) {
  const Group& g = *a.G;
  const Field& F = a.F;
  const auto& classes = g.conjugacy_classes();
  std::vector<u32> elem(g.order(), 0);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (a.by_class[i] == 0) continue;
    for (std::size_t j = 0; j < classes.size(); ++j) {
      u32 c = F.mul(a.by_class[i], b.by_class[j]);
      if (c == 0) continue;
      for (u32 x : classes[i])
        for (u32 y : classes[j]) {
          u32 z = g.mul(x, y);
          elem[z] = F.add(elem[z], c);
        }
    }
  }
  return elem;
}

}  // namespace detail

inline CenterElement center_multiply(const CenterElement& a, const CenterElement& b) {
  require(a.G == b.G && a.F.same(b.F), "center_multiply: context mismatch");
  return CenterElement{
      a.G, a.F, detail::center_collapse(*a.G, a.F, detail::center_expand_product(a, b))};
}

// matrix of multiplication by a on the class-sum basis
inline FqMatrix center_mult_matrix(const CenterElement& a) {
  const Group& g = *a.G;
  const u32 n = static_cast<u32>(g.conjugacy_classes().size());
  FqMatrix m(a.F, n, n);
  for (u32 j = 0; j < n; ++j) {
    CenterElement cj = center_zero(g, a.F);
    cj.by_class[j] = 1;
    std::vector<u32> col = detail::center_collapse(g, a.F, detail::center_expand_product(a, cj));
    for (u32 i = 0; i < n; ++i) m.at(i, j) = col[i];
  }
  return m;
}

// ---------------------------------------------------------------------------
// the center embedding into the double-coset algebra
// ---------------------------------------------------------------------------

namespace detail {

// coefficient of the diagonal key (H,H,g): the lambda-sum over the whole
// coset gH; centrality makes it the same for every coset inside HgH, which
// is exactly what expanding multiplication-by-z on R[G/H] requires
template <class R, class L>
CoMuElementT<R> iota_impl(const Group& g, R ring, L lambda) {
  CoMuElementT<R> out{&g, ring, {}};
  for (u32 H = 0; H < g.subgroups().size(); ++H) {
    const DoubleCosets& dc = g.double_cosets(static_cast<int>(H), static_cast<int>(H));
    for (u32 rep : dc.reps) {
      typename R::value_type coeff = ring.zero();
      for (u32 u : g.subgroups()[H].members)
        coeff = ring.add(coeff, lambda(g.mul(rep, u)));
      out.add_term(CoMuKey{H, H, rep}, coeff);
    }
  }
  return out;
}

}  // namespace detail

inline CoMuElement iota(const CenterElement& z) {
  return detail::iota_impl(*z.G, FieldRing{z.F}, [&](u32 x) { return z.lambda(x); });
}

// integer-coefficient variant for characteristic-zero cross-checks;
// lambda_by_class must be constant on classes by construction
inline CoMuElementZ iota_integer(const Group& g, const std::vector<i64>& lambda_by_class) {
  require(lambda_by_class.size() == g.conjugacy_classes().size(),
          "iota_integer: class count mismatch");
  return detail::iota_impl(g, IntRing{},
                           [&](u32 x) -> i64 { return lambda_by_class[g.class_of()[x]]; });
}

// denominator-free consistency of the embedding: for every subgroup H and
// double coset HgH, the intersection-weighted sum over the whole double
// coset equals |H| times the coset sum that the embedding uses
inline u32 verify_center_forms(const Group& g, const std::vector<i64>& lambda_by_class) {
  require(lambda_by_class.size() == g.conjugacy_classes().size(),
          "verify_center_forms: class count mismatch");
  auto lambda = [&](u32 x) -> i64 { return lambda_by_class[g.class_of()[x]]; };
  u32 checked = 0;
  for (u32 H = 0; H < g.subgroups().size(); ++H) {
    const DoubleCosets& dc = g.double_cosets(static_cast<int>(H), static_cast<int>(H));
    const i64 order_h = static_cast<i64>(g.subgroups()[H].order());
    for (u32 rep : dc.reps) {
      i64 lhs = 0;
      for (u32 x = 0; x < g.order(); ++x) {
        if (dc.dc_of[x] != dc.dc_of[rep]) continue;
        lhs += lambda(x) * static_cast<i64>(g.intersect_with_conjugate(H, H, x).size());
      }
      i64 rhs = 0;
      for (u32 u : g.subgroups()[H].members) rhs += lambda(g.mul(rep, u));
      check(lhs == order_h * rhs, "center embedding forms disagree");
      ++checked;
    }
  }
  return checked;
}

// ---------------------------------------------------------------------------
// block idempotents
// ---------------------------------------------------------------------------

struct BlockIdempotent {
  CenterElement element;
  int index = -1;
  CoMuElement iota_image;
};

namespace detail {

// split an idempotent along the primary decomposition of multiplication by
// a*e on e's corner of the center; empty when that operator cannot split
inline std::vector<CenterElement> center_try_split(const CenterElement& e,
                                                   const CenterElement& a, u64 seed) {
  const Field& F = e.F;
  auto [inc, proj] = image_splitting(center_mult_matrix(e));
  CenterElement ae = center_multiply(a, e);
  FqMatrix full = center_mult_matrix(ae);
  Poly mp = min_poly(proj.mul(full).mul(inc));
  std::vector<poly::Factor> fac = poly::factor(F, mp, seed);
  if (fac.size() < 2) return {};
  std::vector<CenterElement> parts;
  CenterElement total = center_zero(*e.G, F);
  for (const poly::Factor& fa : fac) {
    Poly primary = poly::constant(1);
    for (u32 i = 0; i < fa.mult; ++i) primary = poly::mul(F, primary, fa.f);
    Poly rest = poly::divexact(F, mp, primary);
    auto [gc, u, v] = poly::egcd(F, rest, primary);
    check(gc.deg() == 0, "primary parts must be coprime");
    Poly eps = poly::mulmod(F, poly::scale(F, u, F.inv(gc.c[0])), rest, mp);
    // Horner evaluation of eps at the element a*e, applied to e
    std::vector<u32> w(e.by_class.size(), 0);
    for (int k = eps.deg(); k >= 0; --k) {
      w = full.apply(w);
      u32 ck = k < static_cast<int>(eps.c.size()) ? eps.c[k] : 0;
      if (ck)
        for (std::size_t i = 0; i < w.size(); ++i)
          w[i] = F.add(w[i], F.mul(ck, e.by_class[i]));
    }
    CenterElement part{e.G, F, std::move(w)};
    check(!part.is_zero(), "primary center idempotent vanished");
    check(center_multiply(part, part) == part, "center idempotent not idempotent");
    for (const CenterElement& prev : parts)
      check(center_multiply(part, prev).is_zero(), "center idempotents not orthogonal");
    total = center_add(total, part);
    parts.push_back(std::move(part));
  }
  check(total == e, "center idempotents must sum to the split one");
  return parts;
}

}  // namespace detail

// primitive idempotents of the center, by deterministic splitting along the
// class-sum generators; the principal block (identity action on the trivial
// module) comes first.  with_embedding = false skips the attached images
// (they need the subgroup lattice, unavailable past the order bound)
inline std::vector<BlockIdempotent> block_idempotents(const Group& g, const Field& F,
                                                      u64 seed, bool with_embedding = true) {
  std::vector<CenterElement> sums = center_basis(g, F);
  std::vector<CenterElement> idems{center_identity(g, F)};
  for (bool changed = true; changed;) {
    changed = false;
    for (const CenterElement& a : sums) {
      std::vector<CenterElement> next;
      for (const CenterElement& e : idems) {
        std::vector<CenterElement> parts = detail::center_try_split(e, a, seed);
        if (parts.empty()) {
          next.push_back(e);
        } else {
          changed = true;
          for (CenterElement& p : parts) next.push_back(std::move(p));
        }
      }
      idems = std::move(next);
    }
  }
  const auto& classes = g.conjugacy_classes();
  auto trivial_action = [&](const CenterElement& e) {
    u32 t = 0;
    for (std::size_t i = 0; i < classes.size(); ++i)
      t = F.add(t, F.mul(e.by_class[i], F.from_int(static_cast<i64>(classes[i].size()))));
    return t;
  };
  std::sort(idems.begin(), idems.end(), [&](const CenterElement& a, const CenterElement& b) {
    bool pa = trivial_action(a) == 1, pb = trivial_action(b) == 1;
    if (pa != pb) return pa;
    return a.by_class < b.by_class;
  });
  CenterElement total = center_zero(g, F);
  for (std::size_t i = 0; i < idems.size(); ++i) {
    check(!idems[i].is_zero(), "block idempotent is zero");
    check(center_multiply(idems[i], idems[i]) == idems[i], "block idempotent not idempotent");
    for (std::size_t j = 0; j < i; ++j)
      check(center_multiply(idems[i], idems[j]).is_zero(), "block idempotents not orthogonal");
    total = center_add(total, idems[i]);
  }
  check(total == center_identity(g, F), "block idempotents must sum to one");
  std::vector<BlockIdempotent> out;
  for (std::size_t i = 0; i < idems.size(); ++i)
    out.push_back(BlockIdempotent{
        idems[i], static_cast<int>(i),
        with_embedding ? iota(idems[i]) : CoMuElement{&g, FieldRing{F}, {}}});
  return out;
}

// the unique block acting as the identity on an indecomposable module
inline int block_of_module(const ModuleRep& v, const std::vector<BlockIdempotent>& blocks) {
  require(!blocks.empty(), "block_of_module: empty block list");
  require(blocks[0].element.G == v.G, "block_of_module: group mismatch");
  require(blocks[0].element.F.same(v.F), "block_of_module: field mismatch");
  const Group& g = *v.G;
  const Field& F = v.F;
  int found = -1;
  FqMatrix id = FqMatrix::identity(F, v.dim);
  for (const BlockIdempotent& b : blocks) {
    FqMatrix act(F, v.dim, v.dim);
    for (std::size_t i = 0; i < g.conjugacy_classes().size(); ++i) {
      u32 c = b.element.by_class[i];
      if (c == 0) continue;
      for (u32 x : g.conjugacy_classes()[i]) act = act.add(v.action_of(x).scale(c));
    }
    if (act == id) {
      require(found < 0, "block_of_module: two blocks act as identity");
      found = b.index;
    } else {
      require(act.is_zero(), "block_of_module: no block acts as identity");
    }
  }
  require(found >= 0, "block_of_module: no block acts as identity");
  return found;
}

inline void assign_blocks(PPermCatalog& cat, const std::vector<BlockIdempotent>& blocks) {
  for (CatalogEntry& e : cat.entries) e.block = block_of_module(e.rep, blocks);
}

// ---------------------------------------------------------------------------
// field growth stability
// ---------------------------------------------------------------------------

// the multiplicative order of p modulo the p'-part of the exponent: the
// default field degree for block computations over characteristic p
inline u32 block_field_degree(const Group& g, u32 p) {
  u32 n = g.exponent();
  while (n % p == 0) n /= p;
  if (n == 1) return 1;
  u32 m = 1;
  u64 t = p % n;
  while (t != 1) {
    t = t * p % n;
    ++m;
  }
  return m;
}

struct FieldEmbedding {
  Field small, big;
  std::vector<u32> image;
  u32 operator()(u32 a) const { return image[a]; }
};

// the embedding sending the small generator matrix root to the least root
// of the small modulus inside the big field
inline FieldEmbedding embed_field(const Field& s, const Field& b) {
  require(s.p() == b.p() && b.m() % s.m() == 0, "embed_field: no such embedding");
  require(b.q() <= (1u << 20), "embed_field: big field too large to search");
  const std::vector<u32>& mod = s.modulus();
  u32 root = 0;
  bool found = false;
  for (u32 cand = 0; cand < b.q() && !found; ++cand) {
    u32 acc = 0;
    for (std::size_t i = mod.size(); i-- > 0;)
      acc = b.add(b.mul(acc, cand), b.from_int(static_cast<i64>(mod[i])));
    if (acc == 0) {
      root = cand;
      found = true;
    }
  }
  require(found, "embed_field: modulus has no root in the big field");
  FieldEmbedding em{s, b, std::vector<u32>(s.q(), 0)};
  for (u32 a = 0; a < s.q(); ++a) {
    u32 acc = 0, pw = 1;
    for (u32 i = 0; i < s.m(); ++i) {
      acc = b.add(acc, b.mul(b.from_int(static_cast<i64>(s.coeff(a, i))), pw));
      pw = b.mul(pw, root);
    }
    em.image[a] = acc;
  }
  check(em.image[1] == 1, "embed_field: one must map to one");
  u64 limit = s.q() <= 256 ? s.q() : 256;
  for (u64 a = 0; a < limit; ++a)
    for (u64 c = 0; c < limit; ++c) {
      u32 x = static_cast<u32>(a), y = static_cast<u32>(c);
      check(em.image[s.add(x, y)] == b.add(em.image[x], em.image[y]),
            "embed_field: addition not preserved");
      check(em.image[s.mul(x, y)] == b.mul(em.image[x], em.image[y]),
            "embed_field: multiplication not preserved");
    }
  return em;
}

struct BlockStability {
  u32 count_small = 0, count_big = 0;
  bool stable = true;
  std::vector<u32> parts;  // big-field blocks under each small-field block
};

// recompute blocks after doubling the field degree and verify that each
// small-field block is exactly a sum of big-field blocks
inline BlockStability block_stability(const Group& g, u32 p, u32 m, u64 seed) {
  Field fs = Field::make(p, m, 0);
  Field fb = Field::make(p, 2 * m, 0);
  std::vector<BlockIdempotent> small = block_idempotents(g, fs, seed);
  std::vector<BlockIdempotent> big = block_idempotents(g, fb, seed);
  FieldEmbedding em = embed_field(fs, fb);
  BlockStability st;
  st.count_small = static_cast<u32>(small.size());
  st.count_big = static_cast<u32>(big.size());
  u32 assigned = 0;
  for (const BlockIdempotent& e : small) {
    CenterElement lifted = center_zero(g, fb);
    for (std::size_t i = 0; i < lifted.by_class.size(); ++i)
      lifted.by_class[i] = em(e.element.by_class[i]);
    check(center_multiply(lifted, lifted) == lifted, "lifted block not idempotent");
    u32 cnt = 0;
    CenterElement acc = center_zero(g, fb);
    for (const BlockIdempotent& f : big) {
      CenterElement prod = center_multiply(lifted, f.element);
      if (prod == f.element) {
        ++cnt;
        acc = center_add(acc, f.element);
      } else {
        check(prod.is_zero(), "big-field block neither inside nor outside a small one");
      }
    }
    check(acc == lifted, "small-field block is not the sum of its parts");
    st.parts.push_back(cnt);
    if (cnt != 1) st.stable = false;
    assigned += cnt;
  }
  check(assigned == st.count_big, "big-field blocks not partitioned by small ones");
  return st;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

// rank of right multiplication by the idempotent: the block algebra dimension
inline u32 block_algebra_rank(const Group& g, const Field& F, const BlockIdempotent& b) {
  FqMatrix right(F, g.order(), g.order());
  std::vector<u32> lam = b.element.expanded();
  for (u32 x = 0; x < g.order(); ++x)
    for (u32 y = 0; y < g.order(); ++y)
      if (lam[y]) right.at(g.mul(x, y), x) = F.add(right.at(g.mul(x, y), x), lam[y]);
  return rank(right);
}

inline std::string block_report(const Group& g, const Field& F,
                                const std::vector<BlockIdempotent>& blocks) {
  std::ostringstream os;
  os << "blocks group=" << g.label() << " field=" << F.tag() << " count=" << blocks.size()
     << "\n";
  for (const BlockIdempotent& b : blocks) {
    os << "block " << b.index << " dim=" << block_algebra_rank(g, F, b)
       << " iota_keys=" << b.iota_image.c.size()
       << " classes=";
    for (std::size_t i = 0; i < b.element.by_class.size(); ++i)
      os << (i ? ";" : "") << F.str(b.element.by_class[i]);
    os << "\n";
  }
  return os.str();
}

}  // namespace comack
