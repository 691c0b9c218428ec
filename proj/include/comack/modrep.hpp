#pragma once
// Modules over a group algebra as explicit matrix representations:
// permutation modules, intertwiner spaces, seeded decomposition into
// indecomposable summands with exact structural certificates, isomorphism
// testing, the catalog of indecomposable summands of p-coset modules, and
// the bimodule permeability check.
#include <map>
#include <optional>
#include <set>

#include "field.hpp"
#include "group.hpp"
#include "matrix.hpp"
#include "util.hpp"

namespace comack {

struct ModuleRep {
  const Group* G = nullptr;
  Field F;
  u32 dim = 0;
  std::map<u32, FqMatrix> gen_action;  // generator element id -> action matrix

  // action of an arbitrary element, folded along its generator word
  FqMatrix action_of(u32 x) const {
    FqMatrix m = FqMatrix::identity(F, dim);
    for (u32 g : G->words()[x]) m = m.mul(gen_action.at(g));
    return m;
  }
};

// invertibility of every generator matrix plus a seeded relation sample:
// products of generator words must respect the multiplication table
inline void verify_module(const ModuleRep& v, u64 seed = 0x0d01e5ULL) {
  const Group& g = *v.G;
  check(v.gen_action.size() == g.generators().size(), "module: generator count mismatch");
  for (u32 gen : g.generators()) {
    const FqMatrix& m = v.gen_action.at(gen);
    check(m.rows() == v.dim && m.cols() == v.dim, "module: action shape mismatch");
    check(v.dim == 0 || inverse(m).has_value(), "module: generator action not invertible");
  }
  if (v.dim == 0) return;
  Rng rng(seed);
  for (int i = 0; i < 12; ++i) {
    u32 x = static_cast<u32>(rng.below(g.order()));
    u32 y = static_cast<u32>(rng.below(g.order()));
    check(v.action_of(x).mul(v.action_of(y)) == v.action_of(g.mul(x, y)),
          "module: relations violated");
  }
}

inline ModuleRep perm_module(const Group& g, u32 sub, const Field& F) {
  const CosetTable& ct = g.cosets(sub);
  ModuleRep v{&g, F, ct.points(), {}};
  for (u32 gen : g.generators()) {
    FqMatrix m(F, ct.points(), ct.points());
    for (u32 c = 0; c < ct.points(); ++c) m.at(ct.coset_of[g.mul(gen, ct.rep[c])], c) = 1;
    v.gen_action.emplace(gen, std::move(m));
  }
  verify_module(v);
  return v;
}

// basis of {T : T rho_V(g) = rho_W(g) T for all generators}, solved directly
inline std::vector<FqMatrix> hom_space(const ModuleRep& v, const ModuleRep& w) {
  require(v.G == w.G, "hom_space: different groups");
  require(v.F.same(w.F), "hom_space: field mismatch");
  const Field& F = v.F;
  const u32 dv = v.dim, dw = w.dim;
  if (dv == 0 || dw == 0) return {};
  const auto& gens = v.G->generators();
  FqMatrix A(F, static_cast<u32>(gens.size()) * dv * dw, dv * dw);
  u32 row = 0;
  for (u32 gen : gens) {
    const FqMatrix& mv = v.gen_action.at(gen);
    const FqMatrix& mw = w.gen_action.at(gen);
    for (u32 i = 0; i < dw; ++i)
      for (u32 j = 0; j < dv; ++j) {
        for (u32 k = 0; k < dv; ++k)
          A.at(row, i * dv + k) = F.add(A.at(row, i * dv + k), mv.at(k, j));
        for (u32 k = 0; k < dw; ++k)
          A.at(row, k * dv + j) = F.sub(A.at(row, k * dv + j), mw.at(i, k));
        ++row;
      }
  }
  FqMatrix ns = nullspace(A);
  std::vector<FqMatrix> basis;
  basis.reserve(ns.cols());
  for (u32 b = 0; b < ns.cols(); ++b) {
    FqMatrix t(F, dw, dv);
    for (u32 i = 0; i < dw; ++i)
      for (u32 j = 0; j < dv; ++j) t.at(i, j) = ns.at(i * dv + j, b);
    basis.push_back(std::move(t));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// decomposition into indecomposable summands
// ---------------------------------------------------------------------------

struct Summand {
  ModuleRep rep;
  FqMatrix inclusion;   // ambient dim x summand dim
  FqMatrix projection;  // summand dim x ambient dim
};

struct Decomposition {
  std::vector<FqMatrix> idempotents;  // on the ambient module, one per summand
  std::vector<Summand> summands;
  u64 seed = 0;
};

namespace detail {

// inclusion = independent columns of the idempotent, projection = the
// coordinates of the idempotent in that column basis
inline std::pair<FqMatrix, FqMatrix> image_splitting(const FqMatrix& e) {
  const Field& F = e.F;
  const u32 n = e.rows();
  Rref r = rref(e);
  const u32 d = r.rank;
  FqMatrix inc(F, n, d);
  for (u32 k = 0; k < d; ++k)
    for (u32 i = 0; i < n; ++i) inc.at(i, k) = e.at(i, r.pivots[k]);
  FqMatrix aug(F, n, d + n);
  for (u32 i = 0; i < n; ++i) {
    for (u32 k = 0; k < d; ++k) aug.at(i, k) = inc.at(i, k);
    for (u32 j = 0; j < n; ++j) aug.at(i, d + j) = e.at(i, j);
  }
  Rref ra = rref(std::move(aug));
  FqMatrix proj(F, d, n);
  for (u32 i = 0; i < d; ++i) {
    check(i < ra.pivots.size() && ra.pivots[i] == i, "image_splitting: dependent columns");
    for (u32 j = 0; j < n; ++j) proj.at(i, j) = ra.mat.at(i, d + j);
  }
  check(proj.mul(inc) == FqMatrix::identity(F, d), "image_splitting: retraction failed");
  check(inc.mul(proj) == e, "image_splitting: idempotent not reconstructed");
  return {std::move(inc), std::move(proj)};
}

inline ModuleRep corner_module(const ModuleRep& v, const FqMatrix& inc, const FqMatrix& proj) {
  ModuleRep s{v.G, v.F, inc.cols(), {}};
  for (const auto& [g, m] : v.gen_action) s.gen_action.emplace(g, proj.mul(m).mul(inc));
  verify_module(s);
  return s;
}

// orthogonal idempotents from the primary decomposition of the minimal
// polynomial of a random endomorphism; empty when the polynomial is primary
inline std::vector<FqMatrix> primary_idempotents(const ModuleRep& s,
                                                 const std::vector<FqMatrix>& endo, Rng& rng) {
  const Field& F = s.F;
  FqMatrix phi(F, s.dim, s.dim);
  for (const FqMatrix& e : endo) {
    u32 c = static_cast<u32>(rng.below(F.q()));
    if (c) phi = phi.add(e.scale(c));
  }
  Poly mp = min_poly(phi);
  std::vector<poly::Factor> fac = poly::factor(F, mp, rng.raw());
  if (fac.size() < 2) return {};
  std::vector<FqMatrix> parts;
  FqMatrix total(F, s.dim, s.dim);
  for (const poly::Factor& fa : fac) {
    Poly primary = poly::constant(1);
    for (u32 i = 0; i < fa.mult; ++i) primary = poly::mul(F, primary, fa.f);
    Poly rest = poly::divexact(F, mp, primary);
    auto [g, u, vv] = poly::egcd(F, rest, primary);
    check(g.deg() == 0, "primary parts must be coprime");
    u32 gi = F.inv(g.c[0]);
    Poly epoly = poly::mulmod(F, poly::scale(F, u, gi), rest, mp);
    FqMatrix e = eval_poly_at(epoly, phi);
    check(e.mul(e) == e, "primary idempotent not idempotent");
    for (const FqMatrix& prev : parts) {
      check(prev.mul(e).is_zero() && e.mul(prev).is_zero(), "primary idempotents not orthogonal");
    }
    total = total.add(e);
    parts.push_back(std::move(e));
  }
  check(total == FqMatrix::identity(F, s.dim), "primary idempotents must sum to one");
  return parts;
}

}  // namespace detail

inline void verify_decomposition(const ModuleRep& v, const Decomposition& d) {
  const Field& F = v.F;
  check(d.idempotents.size() == d.summands.size(), "decomposition: count mismatch");
  FqMatrix total(F, v.dim, v.dim);
  u32 dims = 0;
  for (std::size_t i = 0; i < d.summands.size(); ++i) {
    const Summand& s = d.summands[i];
    const FqMatrix& e = d.idempotents[i];
    check(s.inclusion.mul(s.projection) == e, "decomposition: idempotent mismatch");
    check(s.projection.mul(s.inclusion) == FqMatrix::identity(F, s.rep.dim),
          "decomposition: retraction failed");
    check(e.mul(e) == e, "decomposition: not idempotent");
    for (std::size_t j = 0; j < i; ++j)
      check(e.mul(d.idempotents[j]).is_zero() && d.idempotents[j].mul(e).is_zero(),
            "decomposition: idempotents not orthogonal");
    for (u32 gen : v.G->generators())
      check(v.gen_action.at(gen).mul(s.inclusion) == s.inclusion.mul(s.rep.gen_action.at(gen)),
            "decomposition: inclusion not equivariant");
    total = total.add(e);
    dims += s.rep.dim;
  }
  check(dims == v.dim, "decomposition: dimensions do not sum");
  if (v.dim > 0)
    check(total == FqMatrix::identity(F, v.dim), "decomposition: idempotents do not sum to one");
}

// split off summands until 32 consecutive random endomorphisms per summand
// produce no further splitting; structural certificates are exact
inline Decomposition decompose(const ModuleRep& v, u64 seed) {
  Decomposition out;
  out.seed = seed;
  Rng rng(seed ^ 0xdec0'0000ULL);
  struct Item {
    ModuleRep rep;
    FqMatrix inc, proj;
  };
  std::vector<Item> work, done;
  if (v.dim > 0)
    work.push_back(Item{v, FqMatrix::identity(v.F, v.dim), FqMatrix::identity(v.F, v.dim)});
  while (!work.empty()) {
    Item it = std::move(work.back());
    work.pop_back();
    if (it.rep.dim == 1) {
      done.push_back(std::move(it));
      continue;
    }
    std::vector<FqMatrix> endo = hom_space(it.rep, it.rep);
    check(!endo.empty(), "endomorphism algebra lost the identity");
    if (endo.size() == 1) {  // scalars only: indecomposable with certainty
      done.push_back(std::move(it));
      continue;
    }
    bool split = false;
    for (int round = 0; round < 32 && !split; ++round) {
      std::vector<FqMatrix> parts = detail::primary_idempotents(it.rep, endo, rng);
      if (parts.empty()) continue;
      split = true;
      for (const FqMatrix& e : parts) {
        auto [inc2, proj2] = detail::image_splitting(e);
        ModuleRep sub = detail::corner_module(it.rep, inc2, proj2);
        work.push_back(Item{std::move(sub), it.inc.mul(inc2), proj2.mul(it.proj)});
      }
    }
    if (!split) done.push_back(std::move(it));
  }
  for (Item& it : done) {
    out.idempotents.push_back(it.inc.mul(it.proj));
    out.summands.push_back(Summand{std::move(it.rep), std::move(it.inc), std::move(it.proj)});
  }
  verify_decomposition(v, out);
  return out;
}

// ---------------------------------------------------------------------------
// isomorphism testing
// ---------------------------------------------------------------------------

struct IsoResult {
  bool iso = false;
  bool certified = true;  // false only for a probabilistic negative
  std::optional<FqMatrix> certificate;
};

inline bool intertwines(const ModuleRep& v, const ModuleRep& w, const FqMatrix& t) {
  for (u32 gen : v.G->generators())
    if (!(t.mul(v.gen_action.at(gen)) == w.gen_action.at(gen).mul(t))) return false;
  return true;
}

// caller contract: both modules indecomposable
inline IsoResult are_isomorphic(const ModuleRep& v, const ModuleRep& w, u64 seed) {
  IsoResult res;
  if (v.dim != w.dim) return res;
  if (v.dim == 0) {
    res.iso = true;
    res.certificate = FqMatrix(v.F, 0, 0);
    return res;
  }
  std::vector<FqMatrix> hom = hom_space(v, w);
  if (hom.empty()) return res;
  const Field& F = v.F;
  auto accept = [&](FqMatrix t) -> bool {
    if (!inverse(t).has_value()) return false;
    check(intertwines(v, w, t), "certificate does not intertwine");
    res.iso = true;
    res.certificate = std::move(t);
    return true;
  };
  Rng rng(seed ^ 0x150'150ULL);
  for (int trial = 0; trial < 64; ++trial) {
    FqMatrix t(F, w.dim, v.dim);
    for (const FqMatrix& h : hom) {
      u32 c = static_cast<u32>(rng.below(F.q()));
      if (c) t = t.add(h.scale(c));
    }
    if (accept(std::move(t))) return res;
  }
  // deterministic fallback: enumerate the full coefficient space when small
  u64 space = 1;
  bool small = true;
  for (std::size_t i = 0; i < hom.size() && small; ++i) {
    space *= F.q();
    if (space > 65536) small = false;
  }
  if (!small) {
    res.certified = false;  // probabilistic negative
    return res;
  }
  std::vector<u32> digits(hom.size(), 0);
  for (u64 code = 1; code < space; ++code) {
    u64 rem = code;
    FqMatrix t(F, w.dim, v.dim);
    for (std::size_t i = 0; i < hom.size(); ++i) {
      u32 c = static_cast<u32>(rem % F.q());
      rem /= F.q();
      if (c) t = t.add(hom[i].scale(c));
    }
    if (accept(std::move(t))) return res;
  }
  return res;  // exhaustively certified negative
}

// ---------------------------------------------------------------------------
// p-coset summand catalog
// ---------------------------------------------------------------------------

inline std::vector<u32> p_subgroup_class_reps(const Group& g, u32 p) {
  std::vector<u32> reps;
  for (int rep : g.subgroup_class_reps()) {
    u32 o = g.subgroups()[rep].order();
    while (o % p == 0) o /= p;
    if (o == 1) reps.push_back(static_cast<u32>(rep));
  }
  return reps;
}

struct CatalogEntry {
  ModuleRep rep;
  u32 vertex_class = 0;          // class of the smallest coset source producing it
  int block = -1;                // assigned by the block partition when known
  std::vector<u32> fingerprint;  // dim hom(rep, k[G/Q]) per source Q
};

struct PPermCatalog {
  const Group* G = nullptr;
  Field F;
  u32 p = 0;
  u64 seed = 0;
  std::vector<u32> sources;  // p-subgroup class representatives, ascending
  std::vector<CatalogEntry> entries;
};

namespace detail {

// conjugate subgroups give isomorphic coset modules; verified on one pair
// per catalog run via the explicit translation intertwiner
inline void crosscheck_conjugate_pair(const Group& g, const Field& F) {
  const auto& cls = g.class_of_subgroup();
  for (u32 a = 0; a < g.subgroups().size(); ++a) {
    u32 b = static_cast<u32>(g.subgroups().size());
    for (u32 j = a + 1; j < g.subgroups().size(); ++j)
      if (cls[j] == cls[a]) {
        b = j;
        break;
      }
    if (b == g.subgroups().size()) continue;
    u32 x = g.order();
    for (u32 e = 0; e < g.order(); ++e)
      if (static_cast<u32>(g.subgroup_id_of_conjugate(a, g.inv(e))) == b) {
        x = e;
        break;
      }
    check(x < g.order(), "conjugate pair without a conjugating element");
    ModuleRep va = perm_module(g, a, F), vb = perm_module(g, b, F);
    const CosetTable& ca = g.cosets(a);
    const CosetTable& cb = g.cosets(b);
    FqMatrix t(F, cb.points(), ca.points());
    for (u32 c = 0; c < ca.points(); ++c) t.at(cb.coset_of[g.mul(ca.rep[c], x)], c) = 1;
    check(inverse(t).has_value(), "conjugate intertwiner not invertible");
    check(intertwines(va, vb, t), "conjugate intertwiner not equivariant");
    return;
  }
}

}  // namespace detail

inline PPermCatalog pperm_catalog(const Group& g, u32 p, const Field& F, u64 seed) {
  require(F.p() == p, "pperm_catalog: field characteristic must match p");
  PPermCatalog cat{&g, F, p, seed, p_subgroup_class_reps(g, p), {}};
  detail::crosscheck_conjugate_pair(g, F);
  for (u32 q : cat.sources) {
    Decomposition dec = decompose(perm_module(g, q, F), seed);
    for (Summand& s : dec.summands) {
      bool found = false;
      for (const CatalogEntry& e : cat.entries) {
        IsoResult r = are_isomorphic(e.rep, s.rep, seed);
        check(r.iso || r.certified, "catalog dedup inconclusive");
        if (r.iso) {
          found = true;
          break;
        }
      }
      if (!found)
        cat.entries.push_back(
            CatalogEntry{std::move(s.rep), static_cast<u32>(g.class_of_subgroup()[q]), -1, {}});
    }
  }
  for (CatalogEntry& e : cat.entries)
    for (u32 q : cat.sources)
      e.fingerprint.push_back(static_cast<u32>(hom_space(e.rep, perm_module(g, q, F)).size()));
  for (std::size_t i = 0; i < cat.entries.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      check(!are_isomorphic(cat.entries[i].rep, cat.entries[j].rep, seed).iso,
            "catalog entries must be pairwise non-isomorphic");
  return cat;
}

inline bool is_pperm(const ModuleRep& v, const PPermCatalog& cat, u64 seed) {
  require(v.G == cat.G, "is_pperm: group mismatch");
  require(v.F.same(cat.F), "is_pperm: field mismatch");
  if (v.dim == 0) return true;
  Decomposition dec = decompose(v, seed);
  for (const Summand& s : dec.summands) {
    bool found = false;
    for (const CatalogEntry& e : cat.entries) {
      IsoResult r = are_isomorphic(e.rep, s.rep, seed);
      check(r.iso || r.certified, "membership test inconclusive");
      if (r.iso) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

// sorted multiset of (dim, hom-dims against the p-coset modules), the
// seed-stability invariant of a decomposition
inline std::vector<std::vector<u32>> decomposition_fingerprint(const Decomposition& d,
                                                               const PPermCatalog& cat) {
  std::vector<std::vector<u32>> rows;
  for (const Summand& s : d.summands) {
    std::vector<u32> row{s.rep.dim};
    for (u32 q : cat.sources)
      row.push_back(static_cast<u32>(hom_space(s.rep, perm_module(*cat.G, q, cat.F)).size()));
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

inline std::string catalog_manifest(const PPermCatalog& cat) {
  std::ostringstream os;
  os << "catalog group=" << cat.G->label() << " field=" << cat.F.tag() << " p=" << cat.p
     << " seed=" << cat.seed << " entries=" << cat.entries.size() << "\n";
  for (std::size_t i = 0; i < cat.entries.size(); ++i) {
    const CatalogEntry& e = cat.entries[i];
    os << "entry " << i << " dim=" << e.rep.dim << " vertex_class=" << e.vertex_class
       << " block=" << e.block << " fingerprint=";
    for (std::size_t k = 0; k < e.fingerprint.size(); ++k)
      os << (k ? "," : "") << e.fingerprint[k];
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// bimodules and permeability
// ---------------------------------------------------------------------------

// k[g] as a module over prod = (g x g): (a, b) acts by x -> a x b^-1
inline ModuleRep translation_bimodule(const Group& prod, const Group& g, const Field& F) {
  require(prod.order() == static_cast<u64>(g.order()) * g.order(),
          "translation_bimodule: product order mismatch");
  ModuleRep v{&prod, F, g.order(), {}};
  for (u32 w : prod.generators()) {
    u32 a = w / g.order(), b = w % g.order();
    FqMatrix m(F, g.order(), g.order());
    for (u32 x = 0; x < g.order(); ++x) m.at(g.mul(g.mul(a, x), g.inv(b)), x) = 1;
    v.gen_action.emplace(w, std::move(m));
  }
  verify_module(v);
  return v;
}

// X tensor over kG with k[G/Q], for X a module over h x g ((a, b) acting as
// a . x . b^-1): the quotient of X (x) k[G/Q] by the subspace generated by
// (x.g (x) v) - (x (x) g.v) over generators g, returned as an h-module
inline ModuleRep coinvariant_tensor(const ModuleRep& x, const Group& h, const Group& g,
                                    u32 qsub) {
  require(x.G->order() == static_cast<u64>(h.order()) * g.order(),
          "coinvariant_tensor: product order mismatch");
  const Field& F = x.F;
  const CosetTable& ct = g.cosets(qsub);
  const u32 n = x.dim, m = ct.points(), nm = n * m;
  auto enc = [&](u32 a, u32 b) { return a * g.order() + b; };
  FqMatrix rel(F, static_cast<u32>(g.generators().size()) * nm, nm);
  u32 row = 0;
  for (u32 gen : g.generators()) {
    FqMatrix rg = x.action_of(enc(0, g.inv(gen)));  // the right action of gen
    for (u32 i = 0; i < n; ++i)
      for (u32 j = 0; j < m; ++j) {
        for (u32 k = 0; k < n; ++k)
          rel.at(row, k * m + j) = F.add(rel.at(row, k * m + j), rg.at(k, i));
        u32 l = ct.coset_of[g.mul(gen, ct.rep[j])];
        rel.at(row, i * m + l) = F.sub(rel.at(row, i * m + l), 1);
        ++row;
      }
  }
  Rref r = rref(std::move(rel));
  std::vector<bool> is_pivot(nm, false);
  for (u32 c : r.pivots) is_pivot[c] = true;
  std::vector<u32> free_cols;
  for (u32 c = 0; c < nm; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  const u32 qdim = static_cast<u32>(free_cols.size());
  auto reduce = [&](std::vector<u32> wv) {
    for (u32 t = 0; t < r.rank; ++t) {
      u32 c = wv[r.pivots[t]];
      if (c == 0) continue;
      for (u32 j = r.pivots[t]; j < nm; ++j) wv[j] = F.sub(wv[j], F.mul(c, r.mat.at(t, j)));
    }
    return wv;
  };
  ModuleRep out{&h, F, qdim, {}};
  for (u32 gen : h.generators()) {
    FqMatrix lh = x.action_of(enc(gen, 0));  // the left action of gen
    FqMatrix qm(F, qdim, qdim);
    for (u32 b = 0; b < qdim; ++b) {
      u32 i = free_cols[b] / m, j = free_cols[b] % m;
      std::vector<u32> wv(nm, 0);
      for (u32 k = 0; k < n; ++k) wv[k * m + j] = lh.at(k, i);
      wv = reduce(std::move(wv));
      for (u32 bb = 0; bb < qdim; ++bb) qm.at(bb, b) = wv[free_cols[bb]];
    }
    out.gen_action.emplace(gen, std::move(qm));
  }
  verify_module(out);
  return out;
}

// every coinvariant tensor against a p-coset module decomposes inside the
// catalog of the left factor
inline bool is_permeable_bimodule(const ModuleRep& x, const Group& h, const Group& g,
                                  const PPermCatalog& hcat, u64 seed) {
  require(hcat.G == &h, "is_permeable_bimodule: catalog is for a different group");
  require(x.F.same(hcat.F), "is_permeable_bimodule: field mismatch");
  for (u32 q : p_subgroup_class_reps(g, hcat.p))
    if (!is_pperm(coinvariant_tensor(x, h, g, q), hcat, seed)) return false;
  return true;
}

}  // namespace comack
