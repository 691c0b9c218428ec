// acceptance gates: one pass/fail line per criterion, wall-clock budgets
// pinned in code, exit nonzero when any gate fails
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "comack/cartan.hpp"
#include "comack/casestudy.hpp"

using namespace comack;

namespace {

struct GateResult {
  bool ok = false;
  std::string msg;
};

GateResult pass(std::string msg) { return {true, std::move(msg)}; }
GateResult fail(std::string msg) { return {false, std::move(msg)}; }

ModuleRep direct_sum(const ModuleRep& a, const ModuleRep& b) {
  ModuleRep v{a.G, a.F, a.dim + b.dim, {}};
  for (u32 gen : a.G->generators()) {
    FqMatrix m(a.F, v.dim, v.dim);
    const FqMatrix& ma = a.gen_action.at(gen);
    const FqMatrix& mb = b.gen_action.at(gen);
    for (u32 i = 0; i < a.dim; ++i)
      for (u32 j = 0; j < a.dim; ++j) m.at(i, j) = ma.at(i, j);
    for (u32 i = 0; i < b.dim; ++i)
      for (u32 j = 0; j < b.dim; ++j) m.at(a.dim + i, a.dim + j) = mb.at(i, j);
    v.gen_action.emplace(gen, std::move(m));
  }
  verify_module(v);
  return v;
}

// smallest invariant subspace containing the given vectors, as a module
ModuleRep submodule_closure(const ModuleRep& v, std::vector<std::vector<u32>> seeds) {
  const Field& F = v.F;
  FqMatrix rows(F, static_cast<u32>(seeds.size()), v.dim);
  for (u32 i = 0; i < seeds.size(); ++i)
    for (u32 j = 0; j < v.dim; ++j) rows.at(i, j) = seeds[i][j];
  Rref basis = rref(std::move(rows));
  for (bool grew = true; grew;) {
    grew = false;
    for (u32 gen : v.G->generators()) {
      const FqMatrix& a = v.gen_action.at(gen);
      for (u32 r = 0; r < basis.rank && !grew; ++r) {
        std::vector<u32> img(v.dim, 0);
        for (u32 i = 0; i < v.dim; ++i)
          for (u32 j = 0; j < v.dim; ++j)
            img[i] = F.add(img[i], F.mul(a.at(i, j), basis.mat.at(r, j)));
        std::vector<u32> red = img;
        for (u32 t = 0; t < basis.rank; ++t) {
          u32 c = red[basis.pivots[t]];
          if (!c) continue;
          for (u32 j = 0; j < v.dim; ++j) red[j] = F.sub(red[j], F.mul(c, basis.mat.at(t, j)));
        }
        if (std::any_of(red.begin(), red.end(), [](u32 x) { return x != 0; })) {
          FqMatrix bigger(F, basis.rank + 1, v.dim);
          for (u32 t = 0; t < basis.rank; ++t)
            for (u32 j = 0; j < v.dim; ++j) bigger.at(t, j) = basis.mat.at(t, j);
          for (u32 j = 0; j < v.dim; ++j) bigger.at(basis.rank, j) = img[j];
          basis = rref(std::move(bigger));
          grew = true;
        }
      }
    }
  }
  ModuleRep sub{v.G, F, basis.rank, {}};
  FqMatrix inc(F, v.dim, basis.rank);
  for (u32 i = 0; i < v.dim; ++i)
    for (u32 j = 0; j < basis.rank; ++j) inc.at(i, j) = basis.mat.at(j, i);
  for (u32 gen : v.G->generators()) {
    const FqMatrix& a = v.gen_action.at(gen);
    FqMatrix m(F, basis.rank, basis.rank);
    for (u32 r = 0; r < basis.rank; ++r) {
      std::vector<u32> img(v.dim, 0);
      for (u32 i = 0; i < v.dim; ++i)
        for (u32 j = 0; j < v.dim; ++j)
          img[i] = F.add(img[i], F.mul(a.at(i, j), basis.mat.at(r, j)));
      for (u32 t = 0; t < basis.rank; ++t) {
        u32 c = img[basis.pivots[t]];
        m.at(t, r) = c;
        if (!c) continue;
        for (u32 j = 0; j < v.dim; ++j) img[j] = F.sub(img[j], F.mul(c, basis.mat.at(t, j)));
      }
    }
    sub.gen_action.emplace(gen, std::move(m));
  }
  verify_module(sub);
  return sub;
}

std::vector<Group> small_groups() {
  std::vector<Group> out;
  out.push_back(cyclic(1));
  out.push_back(cyclic(2));
  out.push_back(cyclic(3));
  out.push_back(cyclic(4));
  out.push_back(klein4());
  out.push_back(symmetric(3));
  out.push_back(quaternion8());
  out.push_back(dihedral(8));
  return out;
}

// --- criterion 1: the comu product table matches composition of maps -------

GateResult crit1() {
  Field F2 = Field::make(2, 1, 0);
  Field F4 = Field::make(2, 2, 0);
  u64 products = 0;
  int runs = 0;
  for (const Group& g : small_groups()) {
    for (const Field& F : {F2, F4}) {
      VerifyReport r = verify_yoshida(g, F);
      if (!r.pass)
        return fail(g.label() + "/" + F.tag() + ": " + r.first_failure);
      products += r.products;
      ++runs;
    }
  }
  std::ostringstream os;
  os << "operator products agree for 8 groups x {F2,F4}: " << runs << " runs, "
     << products << " products";
  return pass(os.str());
}

// --- criterion 2: basis size = double coset count = matrix span dimension --

GateResult crit2() {
  Field F2 = Field::make(2, 1, 0);
  Field F4 = Field::make(2, 2, 0);
  u64 total_keys = 0;
  for (const Group& g : small_groups()) {
    std::vector<CoMuKey> basis = comu_basis(g);
    u64 dc_sum = 0;
    const u32 ns = static_cast<u32>(g.subgroups().size());
    for (u32 H = 0; H < ns; ++H)
      for (u32 K = 0; K < ns; ++K)
        dc_sum += g.double_cosets(static_cast<int>(H), static_cast<int>(K)).reps.size();
    if (basis.size() != dc_sum) {
      std::ostringstream os;
      os << g.label() << ": basis " << basis.size() << " != coset sum " << dc_sum;
      return fail(os.str());
    }
    // independence of the operator matrices sharing one (H, K) slot gives the
    // dimension of the span; slots are disjoint, so the dimensions add up
    for (const Field& F : {F2, F4}) {
      for (std::size_t lo = 0; lo < basis.size();) {
        std::size_t hi = lo;
        while (hi < basis.size() && basis[hi].H == basis[lo].H && basis[hi].K == basis[lo].K)
          ++hi;
        u32 n = static_cast<u32>(hi - lo);
        FqMatrix probe = yoshida_block(g, basis[lo], F);
        FqMatrix flat(F, n, probe.rows() * probe.cols());
        for (u32 r = 0; r < n; ++r) {
          FqMatrix m = yoshida_block(g, basis[lo + r], F);
          for (u32 i = 0; i < m.rows(); ++i)
            for (u32 j = 0; j < m.cols(); ++j) flat.at(r, i * m.cols() + j) = m.at(i, j);
        }
        if (rank(flat) != n) {
          std::ostringstream os;
          os << g.label() << "/" << F.tag() << ": slot H=" << basis[lo].H
             << " K=" << basis[lo].K << " spans rank " << rank(flat) << " < " << n;
          return fail(os.str());
        }
        lo = hi;
      }
    }
    total_keys += basis.size();
  }
  if (mackey_basis(cyclic(2)).size() != 6)
    return fail("order-two group: full basis size != 6");
  std::ostringstream os;
  os << "basis = coset sum = span dimension for 8 groups (" << total_keys
     << " keys); order-two full basis has 6 keys";
  return pass(os.str());
}

// --- criterion 3: center embedding and block counts ------------------------

GateResult crit3() {
  struct Case {
    Group g;
    u32 p, m;
  };
  // the embedding respects products on every pair of class sums
  for (const auto& [g, p, m] : {Case{cyclic(2), 2, 1}, Case{cyclic(3), 2, 2},
                                Case{cyclic(4), 3, 1}, Case{cyclic(6), 2, 2},
                                Case{symmetric(3), 2, 2}}) {
    Field F = Field::make(p, m, 0);
    std::vector<CenterElement> cls = center_basis(g, F);
    FieldRing ring{F};
    if (!(iota(center_identity(g, F)) == comu_identity(g, ring)))
      return fail(g.label() + "/" + F.tag() + ": identity image is not the identity");
    for (const CenterElement& a : cls)
      for (const CenterElement& b : cls)
        if (!(iota(center_multiply(a, b)) == comu_multiply(iota(a), iota(b))))
          return fail(g.label() + "/" + F.tag() + ": embedding breaks a class-sum product");
  }
  // block idempotent images: idempotent, orthogonal, summing to the identity
  for (const auto& [g, p, m] : {Case{cyclic(6), 2, 2}, Case{symmetric(3), 2, 2},
                                Case{cyclic(4), 2, 1}, Case{quaternion8(), 2, 1}}) {
    Field F = Field::make(p, m, 0);
    FieldRing ring{F};
    std::vector<BlockIdempotent> blks = block_idempotents(g, F, 0);
    CoMuElement sum{&g, ring, {}};
    for (std::size_t i = 0; i < blks.size(); ++i) {
      if (!(comu_multiply(blks[i].iota_image, blks[i].iota_image) == blks[i].iota_image))
        return fail(g.label() + "/" + F.tag() + ": image of a block unit is not idempotent");
      for (std::size_t j = 0; j < blks.size(); ++j)
        if (i != j && !comu_multiply(blks[i].iota_image, blks[j].iota_image).is_zero())
          return fail(g.label() + "/" + F.tag() + ": block unit images are not orthogonal");
      sum.accumulate(blks[i].iota_image, ring.one());
    }
    if (!(sum == comu_identity(g, ring)))
      return fail(g.label() + "/" + F.tag() + ": block unit images do not sum to 1");
  }
  // block counts: p-groups have one block
  for (const auto& [g, p, m] :
       {Case{cyclic(2), 2, 1}, Case{cyclic(4), 2, 1}, Case{cyclic(8), 2, 1},
        Case{klein4(), 2, 1}, Case{quaternion8(), 2, 1}, Case{dihedral(8), 2, 1},
        Case{cyclic(9), 3, 1}, Case{elementary_abelian(3, 2), 3, 1}}) {
    Field F = Field::make(p, m, 0);
    std::size_t n = block_idempotents(g, F, 0).size();
    if (n != 1) {
      std::ostringstream os;
      os << g.label() << "/" << F.tag() << ": " << n << " blocks, expected 1";
      return fail(os.str());
    }
  }
  Field F4 = Field::make(2, 2, 0);
  std::size_t c6 = block_idempotents(cyclic(6), F4, 0).size();
  if (c6 != 3) {
    std::ostringstream os;
    os << "C6/F4: " << c6 << " blocks, expected 3";
    return fail(os.str());
  }
  Group big = xq8(3);
  std::size_t nbig = block_idempotents(big, F4, 0).size();
  u32 formula = (3 * 3 - 1) / 8 + 3;
  if (nbig != formula) {
    std::ostringstream os;
    os << big.label() << "/F4: " << nbig << " blocks, expected " << formula;
    return fail(os.str());
  }
  std::ostringstream os;
  os << "embedding is multiplicative; block unit images split 1; p-groups 1 "
        "block, C6 -> 3, "
     << big.label() << " -> " << nbig << " = (p^2-1)/8 + p";
  return pass(os.str());
}

// --- criterion 4: diagrams agree and the determinant tracks cyclicity ------

std::vector<std::vector<i64>> principal_by_hom(const Group& g, u32 p, const Field& F) {
  std::vector<BlockIdempotent> blks = block_idempotents(g, F, 0);
  PPermCatalog cat = pperm_catalog(g, p, F, 0);
  assign_blocks(cat, blks);
  return cartan_block(cat, 0).mat;
}

GateResult crit4() {
  Group c2 = cyclic(2);
  std::vector<std::vector<i64>> pinned{{2, 1}, {1, 1}};
  if (cartan_pgroup(c2, 2).mat != pinned)
    return fail("order-two group: counting matrix is not [[2,1],[1,1]]");
  struct Case {
    Group g;
    u32 p;
  };
  for (const auto& [g, p] : {Case{cyclic(2), 2}, Case{cyclic(4), 2}, Case{klein4(), 2},
                             Case{quaternion8(), 2}, Case{cyclic(9), 3}}) {
    Field F = Field::make(p, 1, 0);
    if (cartan_pgroup(g, p).mat != principal_by_hom(g, p, F))
      return fail(g.label() + ": coset counting and hom dimensions disagree");
  }
  for (const auto& [g, p] :
       {Case{cyclic(2), 2}, Case{cyclic(4), 2}, Case{cyclic(8), 2}, Case{cyclic(9), 3}}) {
    CyclicCriterion r = cyclic_criterion_report(g, p);
    if (!r.cyclic || r.det == 0)
      return fail(g.label() + ": expected nonzero determinant on a cyclic group");
  }
  for (const auto& [g, p] :
       {Case{klein4(), 2}, Case{direct_product(cyclic(2), cyclic(4)), 2},
        Case{quaternion8(), 2}, Case{dihedral(8), 2}, Case{elementary_abelian(3, 2), 3}}) {
    CyclicCriterion r = cyclic_criterion_report(g, p);
    if (r.cyclic || r.det != 0)
      return fail(g.label() + ": expected zero determinant on a non-cyclic group");
  }
  return pass(
      "pinned matrix for the order-two group; both routes agree on 5 groups; "
      "det != 0 exactly on the 4 cyclic entries");
}

// --- criteria 5 and 6: quartic period data at p = 17 -----------------------

GateResult crit5() {
  GaussData d = gauss_data(17, 0);
  GaussData e = gauss_twist(d);
  const GaussData& zero = d.t_of_zeta == 0 ? d : e;
  const GaussData& one = d.t_of_zeta == 0 ? e : d;
  if (zero.t_of_zeta != 0 || one.t_of_zeta != 1)
    return fail("could not realize both branch values");
  const Field& F = zero.F;
  u32 n = static_cast<u32>(zero.t.size());
  // M - Id sends the alternating vector to all-ones exactly on the 0 branch
  FqMatrix A = build_M(zero);
  for (u32 i = 0; i < n; ++i) A.at(i, i) = F.add(A.at(i, i), 1);
  std::vector<u32> alt(n, 0);
  for (u32 i = 0; i < n; i += 2) alt[i] = 1;
  std::vector<u32> ones(n, 1);
  if (A.apply(alt) != ones)
    return fail("0 branch: alternating vector does not map to all-ones");
  MembershipVerdict vz = membership_test(zero);
  if (!vz.in_image) return fail("0 branch: all-ones not recognized in the image");
  if (A.apply(vz.witness) != ones) return fail("0 branch: witness fails recheck");
  MembershipVerdict vo = membership_test(one);
  if (vo.in_image) return fail("1 branch: all-ones wrongly reported in the image");
  if (!vo.witness.empty()) return fail("1 branch: nonempty witness");
  return pass("p=17: branch 0 puts all-ones in im(M - Id) with exact witness, branch 1 does not");
}

GateResult crit6() {
  GaussData d = gauss_data(17, 0);
  GaussData e = gauss_twist(d);
  const Field& F = d.F;
  for (const GaussData* g : {&d, &e})
    if (g->t_of_zeta != 0 && g->t_of_zeta != 1)
      return fail("a period sum landed outside {0, 1}");
  if (F.add(d.t_of_zeta, e.t_of_zeta) != 1)
    return fail("the two branch values do not sum to 1");
  u32 q0 = 1u << ((17 - 1) / 8);  // subfield of order 2^((p-1)/8)
  for (const GaussData* g : {&d, &e})
    for (u32 ti : g->t)
      if (F.pow(ti, q0) != ti)
        return fail("a period entry escapes the order-" + std::to_string(q0) + " subfield");
  return pass("p=17: t-values lie in {0,1}, twist flips the branch, entries sit in F4");
}

// --- criterion 7: hom dimensions count double cosets; decompositions hold --

GateResult crit7() {
  std::vector<Group> gs;
  gs.push_back(cyclic(2));
  gs.push_back(cyclic(3));
  gs.push_back(cyclic(4));
  gs.push_back(cyclic(6));
  gs.push_back(cyclic(8));
  gs.push_back(cyclic(12));
  gs.push_back(klein4());
  gs.push_back(direct_product(cyclic(2), cyclic(4)));
  gs.push_back(elementary_abelian(2, 3));
  gs.push_back(elementary_abelian(3, 2));
  gs.push_back(dihedral(8));
  gs.push_back(dihedral(12));
  gs.push_back(quaternion8());
  gs.push_back(symmetric(3));
  gs.push_back(symmetric(4));
  Field F2 = Field::make(2, 1, 0);
  Field F4 = Field::make(2, 2, 0);
  Field F9 = Field::make(3, 2, 0);
  u64 pairs = 0;
  for (const Group& g : gs) {
    std::vector<Field> fields;
    if (g.order() % 2 == 0) {
      fields.push_back(F2);
      fields.push_back(F4);
    }
    if (g.order() % 3 == 0) fields.push_back(F9);
    const u32 ns = static_cast<u32>(g.subgroups().size());
    for (const Field& F : fields) {
      std::vector<ModuleRep> perms;
      perms.reserve(ns);
      for (u32 s = 0; s < ns; ++s) perms.push_back(perm_module(g, s, F));
      for (u32 H = 0; H < ns; ++H)
        for (u32 K = 0; K < ns; ++K) {
          std::size_t hom = hom_space(perms[H], perms[K]).size();
          std::size_t dc =
              g.double_cosets(static_cast<int>(H), static_cast<int>(K)).reps.size();
          if (hom != dc) {
            std::ostringstream os;
            os << g.label() << "/" << F.tag() << " pair (" << H << "," << K
               << "): hom " << hom << " != cosets " << dc;
            return fail(os.str());
          }
          ++pairs;
        }
    }
  }
  // every decomposition run passes its structural checks
  struct Case {
    Group g;
    u32 p, m;
  };
  for (const auto& [g, p, m] :
       {Case{cyclic(4), 2, 1}, Case{cyclic(6), 2, 1}, Case{cyclic(6), 2, 2},
        Case{klein4(), 2, 1}, Case{quaternion8(), 2, 1}, Case{symmetric(3), 2, 1},
        Case{symmetric(3), 2, 2}, Case{dihedral(8), 2, 1},
        Case{elementary_abelian(3, 2), 3, 2}, Case{symmetric(4), 2, 1}}) {
    Field F = Field::make(p, m, 0);
    ModuleRep reg = perm_module(g, 0, F);
    Decomposition dec = decompose(reg, 3);
    verify_decomposition(reg, dec);
    u32 dims = 0;
    for (const Summand& s : dec.summands) dims += s.rep.dim;
    if (dims != reg.dim)
      return fail(g.label() + "/" + F.tag() + ": summand dimensions do not add up");
  }
  // the multiset of summands does not depend on the seed
  for (const auto& [g, p, m] : {Case{cyclic(6), 2, 2}, Case{klein4(), 2, 1},
                                Case{symmetric(3), 2, 2}, Case{dihedral(8), 2, 1}}) {
    Field F = Field::make(p, m, 0);
    ModuleRep reg = perm_module(g, 0, F);
    PPermCatalog cat = pperm_catalog(g, p, F, 1);
    auto first = decomposition_fingerprint(decompose(reg, 1), cat);
    for (u64 seed = 2; seed <= 5; ++seed)
      if (decomposition_fingerprint(decompose(reg, seed), cat) != first)
        return fail(g.label() + "/" + F.tag() + ": summands changed with the seed");
  }
  std::ostringstream os;
  os << "hom dimension = coset count on " << pairs
     << " pairs (orders <= 24, F2/F4/F9); 10 decompositions verified; "
        "fingerprints stable over 5 seeds";
  return pass(os.str());
}

// --- criterion 8: translation bimodules pass the coinvariant screen --------

GateResult crit8() {
  struct Case {
    Group g;
    u32 p, m;
  };
  int screened = 0;
  for (const auto& [g, p, m] :
       {Case{cyclic(2), 2, 1},  Case{cyclic(3), 3, 2},
        Case{cyclic(4), 2, 1},  Case{cyclic(6), 2, 1},
        Case{cyclic(8), 2, 1},  Case{cyclic(12), 2, 2},
        Case{klein4(), 2, 1},   Case{direct_product(cyclic(2), cyclic(4)), 2, 1},
        Case{elementary_abelian(2, 3), 2, 1}, Case{elementary_abelian(3, 2), 3, 2},
        Case{dihedral(8), 2, 1}, Case{dihedral(12), 2, 1},
        Case{quaternion8(), 2, 1}, Case{symmetric(3), 2, 2},
        Case{symmetric(4), 2, 1}}) {
    Field F = Field::make(p, m, 0);
    Group prod = direct_product(g, g);
    ModuleRep x = translation_bimodule(prod, g, F);
    PPermCatalog cat = pperm_catalog(g, p, F, 0x77ULL);
    if (!is_permeable_bimodule(x, g, g, cat, 0x77ULL))
      return fail(g.label() + "/" + F.tag() + ": translation bimodule fails the screen");
    ++screened;
  }
  // every small bimodule over the order-two group passes
  Group g2 = cyclic(2);
  Field F2 = Field::make(2, 1, 0);
  Group prod2 = direct_product(g2, g2);
  ModuleRep x2 = translation_bimodule(prod2, g2, F2);
  ModuleRep big = direct_sum(direct_sum(x2, x2), x2);
  PPermCatalog cat2 = pperm_catalog(g2, 2, F2, 0x42ULL);
  Rng rng(0xacce97ULL);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<u32>> seeds(1 + trial % 2, std::vector<u32>(big.dim));
    for (auto& v : seeds)
      for (u32& c : v) c = static_cast<u32>(rng.below(2));
    ModuleRep sub = submodule_closure(big, seeds);
    if (sub.dim > 6) return fail("random submodule exceeded dimension 6");
    if (!is_permeable_bimodule(sub, g2, g2, cat2, 0x42ULL + trial)) {
      std::ostringstream os;
      os << "order-two group: random bimodule of dim " << sub.dim << " fails (trial "
         << trial << ")";
      return fail(os.str());
    }
  }
  std::ostringstream os;
  os << screened << " translation bimodules pass; 20 random order-two bimodules "
        "of dim <= 6 pass";
  return pass(os.str());
}

}  // namespace

int main() {
  struct Gate {
    int id;
    double budget_s;
    GateResult (*run)();
  };
  const std::vector<Gate> gates{{1, 60.0, crit1},  {2, 60.0, crit2}, {3, 600.0, crit3},
                                {4, 300.0, crit4}, {5, 60.0, crit5}, {6, 60.0, crit6},
                                {7, 600.0, crit7}, {8, 600.0, crit8}};
  bool all = true;
  for (const Gate& gate : gates) {
    auto t0 = std::chrono::steady_clock::now();
    GateResult r;
    try {
      r = gate.run();
    } catch (const std::exception& e) {
      r = fail(std::string("exception: ") + e.what());
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.ok && dt > gate.budget_s) {
      r.ok = false;
      r.msg = "over time budget";
    }
    std::printf("criterion %d %s (%.2fs, budget %.0fs) %s\n", gate.id,
                r.ok ? "PASS" : "FAIL", dt, gate.budget_s, r.msg.c_str());
    std::fflush(stdout);
    all = all && r.ok;
  }
  std::printf("acceptance: %s\n", all ? "all criteria pass" : "FAILURES above");
  return all ? 0 : 1;
}
