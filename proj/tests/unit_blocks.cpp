#include <catch2/catch_amalgamated.hpp>

#include "comack/blocks.hpp"

using namespace comack;

namespace {

// class index with the given number of elements (must be unique)
u32 class_of_size(const Group& g, std::size_t n) {
  const auto& cls = g.conjugacy_classes();
  u32 found = static_cast<u32>(cls.size());
  for (u32 i = 0; i < cls.size(); ++i)
    if (cls[i].size() == n) {
      REQUIRE(found == cls.size());
      found = i;
    }
  REQUIRE(found < cls.size());
  return found;
}

CoMuElement key_single(const Group& g, const Field& F, const CoMuKey& k) {
  CoMuElement e{&g, FieldRing{F}, {}};
  e.add_term(k, 1);
  return e;
}

}  // namespace

TEST_CASE("class sums multiply by expansion") {
  Group c2 = cyclic(2);
  Field F2 = Field::make(2, 1, 0);
  std::vector<CenterElement> b2 = center_basis(c2, F2);
  REQUIRE(b2.size() == 2);
  REQUIRE(center_multiply(b2[1], b2[1]) == b2[0]);  // g*g = e
  REQUIRE(center_multiply(center_identity(c2, F2), b2[1]) == b2[1]);

  Group s3 = symmetric(3);
  Field F4 = Field::make(2, 2, 0);
  u32 ti = class_of_size(s3, 3);  // transpositions
  u32 ci = class_of_size(s3, 2);  // three-cycles
  std::vector<CenterElement> bs = center_basis(s3, F4);
  CenterElement sq = center_multiply(bs[ti], bs[ti]);
  CenterElement expect = center_add(center_identity(s3, F4), bs[ci]);
  REQUIRE(sq == expect);  // 3*e + 3*(cycle sum), reduced mod 2

  Field F3 = Field::make(3, 1, 0);
  std::vector<CenterElement> bs3 = center_basis(s3, F3);
  REQUIRE(center_multiply(bs3[ti], bs3[ti]).is_zero());  // 3*e + 3*c vanishes mod 3

  // commutativity and associativity on random central elements
  Rng rng(0xcec7e5ULL);
  for (const Group& g : {symmetric(3), dihedral(8)}) {
    std::vector<CenterElement> basis = center_basis(g, F4);
    auto rnd = [&] {
      CenterElement z = center_zero(g, F4);
      for (u32& c : z.by_class) c = static_cast<u32>(rng.below(4));
      return z;
    };
    for (int t = 0; t < 10; ++t) {
      CenterElement a = rnd(), b = rnd(), c = rnd();
      REQUIRE(center_multiply(a, b) == center_multiply(b, a));
      REQUIRE(center_multiply(center_multiply(a, b), c) ==
              center_multiply(a, center_multiply(b, c)));
    }
  }
}

TEST_CASE("embedding formulas agree in integer mode") {
  Rng rng(0x10caULL);
  for (const Group& g : {cyclic(2), cyclic(3), cyclic(4), klein4(), cyclic(6), symmetric(3),
                         dihedral(8), quaternion8(), cyclic(8)}) {
    const std::size_t nc = g.conjugacy_classes().size();
    for (std::size_t i = 0; i < nc; ++i) {
      std::vector<i64> lam(nc, 0);
      lam[i] = 1;
      REQUIRE(verify_center_forms(g, lam) > 0);
    }
    std::vector<i64> lam(nc);
    for (i64& v : lam) v = static_cast<i64>(rng.below(7)) - 3;
    REQUIRE(verify_center_forms(g, lam) > 0);
  }
}

TEST_CASE("center embedding is unital and multiplicative") {
  struct Case {
    Group g;
    u32 p, m;
  };
  for (const auto& [g, p, m] : {Case{cyclic(2), 2, 1}, Case{cyclic(3), 2, 2},
                                Case{symmetric(3), 2, 2}, Case{cyclic(4), 3, 1},
                                Case{klein4(), 3, 1}}) {
    Field F = Field::make(p, m, 0);
    FieldRing ring{F};
    REQUIRE(iota(center_identity(g, F)) == comu_identity(g, ring));
    std::vector<CenterElement> basis = center_basis(g, F);
    for (const CenterElement& a : basis)
      for (const CenterElement& b : basis)
        REQUIRE(iota(center_multiply(a, b)) == comu_multiply(iota(a), iota(b)));
  }

  // nilpotency carried through the embedding
  Group c2 = cyclic(2);
  Field F2 = Field::make(2, 1, 0);
  CenterElement z{&c2, F2, {1, 1}};  // 1 + g
  REQUIRE(center_multiply(z, z).is_zero());
  CoMuElement img = iota(z);
  REQUIRE(!img.is_zero());
  REQUIRE(comu_multiply(img, img).is_zero());
}

TEST_CASE("block counts match hand censuses") {
  Field F2 = Field::make(2, 1, 0);
  Field F3 = Field::make(3, 1, 0);
  Field F4 = Field::make(2, 2, 0);
  u64 seed = 0xb10cULL;

  for (const Group& g : {cyclic(2), cyclic(4), klein4(), quaternion8(), dihedral(8)}) {
    std::vector<BlockIdempotent> bl = block_idempotents(g, F2, seed);
    REQUIRE(bl.size() == 1);
    REQUIRE(bl[0].element == center_identity(g, F2));
  }
  for (const Group& g : {cyclic(3), cyclic(9)})
    REQUIRE(block_idempotents(g, F3, seed).size() == 1);

  REQUIRE(block_idempotents(cyclic(6), F2, seed).size() == 2);
  REQUIRE(block_idempotents(cyclic(6), F4, seed).size() == 3);

  Group s3 = symmetric(3);
  std::vector<BlockIdempotent> bl = block_idempotents(s3, F4, seed);
  REQUIRE(bl.size() == 2);
  u32 ti = class_of_size(s3, 3), ci = class_of_size(s3, 2), ei = class_of_size(s3, 1);
  std::vector<u32> principal(3, 0), other(3, 0);
  principal[ei] = 1;
  principal[ci] = 1;  // 1 + cycle sum
  other[ci] = 1;      // cycle sum
  REQUIRE(bl[0].element.by_class == principal);
  REQUIRE(bl[1].element.by_class == other);
  REQUIRE(bl[0].element.by_class[ti] == 0);

  Group c5 = cyclic(5);
  REQUIRE(block_field_degree(c5, 2) == 4);
  REQUIRE(block_idempotents(c5, F2, seed).size() == 2);
  REQUIRE(block_idempotents(c5, Field::make(2, 4, 0), seed).size() == 5);

  REQUIRE(block_field_degree(cyclic(6), 2) == 2);
  REQUIRE(block_field_degree(symmetric(3), 2) == 2);
  REQUIRE(block_field_degree(quaternion8(), 2) == 1);
  REQUIRE(block_field_degree(xq8(3), 2) == 2);
}

TEST_CASE("field growth keeps or refines blocks") {
  u64 seed = 0x57abULL;
  BlockStability grow = block_stability(cyclic(6), 2, 1, seed);
  REQUIRE(grow.count_small == 2);
  REQUIRE(grow.count_big == 3);
  REQUIRE(!grow.stable);
  REQUIRE(std::multiset<u32>(grow.parts.begin(), grow.parts.end()) == std::multiset<u32>{1, 2});

  BlockStability keep = block_stability(cyclic(6), 2, 2, seed);
  REQUIRE(keep.count_small == 3);
  REQUIRE(keep.count_big == 3);
  REQUIRE(keep.stable);

  REQUIRE(block_stability(symmetric(3), 2, 2, seed).stable);
  REQUIRE(block_stability(klein4(), 2, 1, seed).stable);
}

TEST_CASE("block idempotent images decompose the double-coset identity") {
  struct Case {
    Group g;
    u32 p, m;
  };
  for (const auto& [g, p, m] : {Case{cyclic(6), 2, 2}, Case{symmetric(3), 2, 2}}) {
    Field F = Field::make(p, m, 0);
    FieldRing ring{F};
    std::vector<BlockIdempotent> bl = block_idempotents(g, F, 1);
    CoMuElement sum{&g, ring, {}};
    for (const BlockIdempotent& b : bl) {
      REQUIRE(comu_multiply(b.iota_image, b.iota_image) == b.iota_image);
      sum.accumulate(b.iota_image, 1);
    }
    REQUIRE(sum == comu_identity(g, ring));
    for (std::size_t i = 0; i < bl.size(); ++i)
      for (std::size_t j = 0; j < bl.size(); ++j) {
        if (i == j) continue;
        REQUIRE(comu_multiply(bl[i].iota_image, bl[j].iota_image).is_zero());
      }
  }
}

TEST_CASE("block idempotent images are central") {
  struct Case {
    Group g;
    u32 p, m;
  };
  for (const auto& [g, p, m] : {Case{symmetric(3), 2, 2}, Case{cyclic(4), 3, 1}}) {
    Field F = Field::make(p, m, 0);
    for (const BlockIdempotent& b : block_idempotents(g, F, 2)) {
      for (const CoMuKey& k : comu_basis(g)) {
        CoMuElement single = key_single(g, F, k);
        REQUIRE(comu_multiply(b.iota_image, single) == comu_multiply(single, b.iota_image));
      }
    }
  }
}

TEST_CASE("modules land in their blocks") {
  Field F4 = Field::make(2, 2, 0);
  u64 seed = 0x0ddULL;

  Group c6 = cyclic(6);
  std::vector<BlockIdempotent> bl = block_idempotents(c6, F4, seed);
  ModuleRep triv = perm_module(c6, static_cast<u32>(c6.subgroups().size()) - 1, F4);
  REQUIRE(triv.dim == 1);
  REQUIRE(block_of_module(triv, bl) == 0);

  PPermCatalog cat = pperm_catalog(c6, 2, F4, seed);
  assign_blocks(cat, bl);
  std::map<int, std::multiset<u32>> dims_by_block;
  for (const CatalogEntry& e : cat.entries) {
    REQUIRE(e.block >= 0);
    dims_by_block[e.block].insert(e.rep.dim);
  }
  REQUIRE(dims_by_block.size() == 3);  // one 1-dim and one 2-dim per block
  for (const auto& [blk, dims] : dims_by_block) REQUIRE(dims == std::multiset<u32>{1, 2});

  Group s3 = symmetric(3);
  std::vector<BlockIdempotent> bls = block_idempotents(s3, F4, seed);
  PPermCatalog cats = pperm_catalog(s3, 2, F4, seed);
  assign_blocks(cats, bls);
  std::multiset<int> assigned;
  for (const CatalogEntry& e : cats.entries) {
    assigned.insert(e.block);
    if (e.rep.dim == 1) REQUIRE(e.block == 0);
  }
  REQUIRE(assigned == std::multiset<int>{0, 0, 1});

  // a module spanning two blocks has no identity-acting block
  std::vector<ModuleRep> ones;
  for (const CatalogEntry& e : cat.entries)
    if (e.rep.dim == 1) ones.push_back(e.rep);
  REQUIRE(ones.size() == 3);
  ModuleRep mixed{&c6, F4, 2, {}};
  for (u32 gen : c6.generators()) {
    FqMatrix m(F4, 2, 2);
    m.at(0, 0) = ones[0].gen_action.at(gen).at(0, 0);
    m.at(1, 1) = ones[1].gen_action.at(gen).at(0, 0);
    mixed.gen_action.emplace(gen, std::move(m));
  }
  verify_module(mixed);
  bool same_block = block_of_module(ones[0], bl) == block_of_module(ones[1], bl);
  REQUIRE(!same_block);
  REQUIRE_THROWS_AS(block_of_module(mixed, bl), precondition_error);
}

TEST_CASE("block reports carry exact ranks") {
  Field F4 = Field::make(2, 2, 0);
  Group c6 = cyclic(6);
  std::string rep = block_report(c6, F4, block_idempotents(c6, F4, 3));
  REQUIRE(rep.find("count=3") != std::string::npos);
  REQUIRE(rep.find("iota_keys=") != std::string::npos);
  std::size_t dim2 = 0;
  for (std::size_t at = rep.find("dim=2"); at != std::string::npos;
       at = rep.find("dim=2", at + 1))
    ++dim2;
  REQUIRE(dim2 == 3);

  Group s3 = symmetric(3);
  std::string reps = block_report(s3, F4, block_idempotents(s3, F4, 3));
  REQUIRE(reps.find("block 0 dim=2") != std::string::npos);
  REQUIRE(reps.find("block 1 dim=4") != std::string::npos);
}
