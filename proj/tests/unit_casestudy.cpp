#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "comack/casestudy.hpp"

using namespace comack;

TEST_CASE("census checks the count formula and block ranks") {
  const u64 seed = 3;
  CensusReport r3 = block_census(3, seed);
  REQUIRE(r3.p == 3);
  REQUIRE(r3.group_order == 216);
  REQUIRE(r3.formula == 4);
  REQUIRE(r3.computed == 4);
  REQUIRE(r3.field_degree == 2);
  // one matrix-algebra block, the square rank; three local ones
  REQUIRE(std::multiset<u32>(r3.ranks.begin(), r3.ranks.end()) ==
          std::multiset<u32>{8, 64, 72, 72});
  REQUIRE(r3.square_ranks == 1);
  std::string txt = census_text(r3);
  REQUIRE(txt.find("census p=3 order=216 formula=4 computed=4") == 0);
  REQUIRE(txt.find("square_ranks=1") != std::string::npos);

  CensusReport gated = block_census(3, seed, 100);
  REQUIRE(gated.computed == -1);
  REQUIRE(gated.formula == 4);
  REQUIRE(gated.ranks.empty());
  REQUIRE(census_text(gated).find("computed=- (budget)") != std::string::npos);

  CensusReport r17 = block_census(17, seed);
  REQUIRE(r17.group_order == 39304);
  REQUIRE(r17.formula == 53);
  REQUIRE(r17.computed == -1);

  REQUIRE_THROWS_AS(block_census(4, seed), precondition_error);
}

TEST_CASE("census computes the next prime when the budget allows") {
  CensusReport r5 = block_census(5, 3);
  REQUIRE(r5.group_order == 1000);
  REQUIRE(r5.formula == 8);
  REQUIRE(r5.computed == 8);
  REQUIRE(r5.field_degree == 4);
  REQUIRE(r5.ranks.empty());  // rank pass is reserved for tiny orders
}

TEST_CASE("root-of-unity sums at p=17") {
  GaussData d = gauss_data(17, 0);
  REQUIRE(d.m == 8);
  REQUIRE(d.F.tag().rfind("2^8/", 0) == 0);
  REQUIRE(d.F.order_of(d.zeta) == 17);
  REQUIRE(d.w == 4);
  REQUIRE(d.b == 3);
  REQUIRE(d.t.size() == 4);

  // the residue sum is the 0- and 2-indexed half of the table
  REQUIRE(d.t_of_zeta == d.F.add(d.t[0], d.t[2]));
  // squaring steps the table by two
  REQUIRE(d.F.mul(d.t[0], d.t[0]) == d.t[2]);
  REQUIRE(d.F.mul(d.t[1], d.t[1]) == d.t[3]);
  // idempotent, so 0 or 1
  REQUIRE((d.t_of_zeta == 0 || d.t_of_zeta == 1));
  // table values live in the order-4 subfield
  for (u32 v : d.t) REQUIRE(d.F.frobenius(d.F.frobenius(v)) == v);

  GaussData tw = gauss_twist(d);
  REQUIRE(tw.zeta == d.F.pow(d.zeta, 3));  // 3 is the smallest non-square mod 17
  REQUIRE(d.F.add(tw.t_of_zeta, d.t_of_zeta) == 1);

  // deterministic given the seed
  GaussData d2 = gauss_data(17, 0);
  REQUIRE(d2.zeta == d.zeta);
  REQUIRE(d2.t == d.t);
  REQUIRE(d2.t_of_zeta == d.t_of_zeta);
}

TEST_CASE("membership test separates the two branches at p=17") {
  GaussData base = gauss_data(17, 0);
  GaussData tw = gauss_twist(base);
  const GaussData& zero = base.t_of_zeta == 0 ? base : tw;
  const GaussData& one = base.t_of_zeta == 0 ? tw : base;
  REQUIRE(zero.t_of_zeta == 0);
  REQUIRE(one.t_of_zeta == 1);

  FqMatrix M = build_M(zero);
  REQUIRE(M.rows() == 4);
  for (u32 i = 0; i < 4; ++i)
    for (u32 j = 0; j < 4; ++j) {
      REQUIRE(M.at(i, j) == zero.t[(i + j) % 4]);
      REQUIRE(M.at(i, j) == M.at(j, i));
    }

  // the alternating vector is an explicit witness in the zero branch
  FqMatrix A = M;
  for (u32 i = 0; i < 4; ++i) A.at(i, i) = zero.F.add(A.at(i, i), 1);
  std::vector<u32> alternating{1, 0, 1, 0};
  REQUIRE(A.apply(alternating) == std::vector<u32>{1, 1, 1, 1});

  MembershipVerdict vz = membership_test(zero);
  REQUIRE(vz.in_image);
  REQUIRE(A.apply(vz.witness) == std::vector<u32>{1, 1, 1, 1});

  MembershipVerdict vo = membership_test(one);
  REQUIRE_FALSE(vo.in_image);
  REQUIRE(vo.witness.empty());

  std::string rep = case_study_report(zero, vz);
  REQUIRE(rep.find("casestudy p=17") == 0);
  REQUIRE(rep.find("w=4 b=3") != std::string::npos);
  REQUIRE(rep.find("t(zeta)=0") != std::string::npos);
  REQUIRE(rep.find("in_image=true witness=") != std::string::npos);
  std::string rep1 = case_study_report(one, vo);
  REQUIRE(rep1.find("in_image=false witness=-") != std::string::npos);
}

TEST_CASE("other residue classes of p") {
  // 2 is not a square mod 5: the residue sum squares to its own flip
  GaussData d5 = gauss_data(5, 0);
  REQUIRE(d5.m == 4);
  REQUIRE(d5.w == 2);
  REQUIRE(d5.b == 2);
  REQUIRE(d5.t == std::vector<u32>{1});
  REQUIRE(d5.F.add(d5.F.mul(d5.t_of_zeta, d5.t_of_zeta), d5.t_of_zeta) == 1);
  REQUIRE_THROWS_AS(membership_test(d5), precondition_error);

  GaussData d13 = gauss_data(13, 0);
  REQUIRE(d13.m == 12);
  REQUIRE(d13.w == 5);
  REQUIRE(d13.b == 2);
  REQUIRE(d13.t.size() == 3);
  REQUIRE_THROWS_AS(membership_test(d13), precondition_error);

  REQUIRE_THROWS_AS(gauss_data(7, 0), precondition_error);  // 7 = 3 mod 4
}