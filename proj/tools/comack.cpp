// comack: exact computations with double-coset operator algebras from the
// command line.  Every run is reproducible: all randomness flows from
// --seed, which each report echoes together with the budget.
#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <json.hpp>

#include "comack/casestudy.hpp"
#include "comack/io.hpp"

using namespace comack;
using ojson = nlohmann::ordered_json;

namespace {

struct RunConfig {
  std::string format = "plain";
  u64 seed = 0;
  u64 budget = 1024;
};

// one report: ordered scalar fields, an optional table, optional
// preformatted plain-text lines
struct Out {
  std::string cmd;
  std::vector<std::pair<std::string, ojson>> kv;
  std::string table_name = "rows";
  std::vector<std::string> cols;
  std::vector<std::vector<ojson>> rows;
  std::vector<std::string> plain_lines;
};

std::string plain_value(const ojson& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void emit(const Out& o, const RunConfig& cfg, std::ostream& os) {
  if (cfg.format == "json") {
    ojson j;
    j["command"] = o.cmd;
    j["seed"] = cfg.seed;
    j["budget"] = cfg.budget;
    for (const auto& [k, v] : o.kv) j[k] = v;
    if (!o.cols.empty()) {
      ojson arr = ojson::array();
      for (const auto& row : o.rows) {
        ojson obj;
        for (std::size_t c = 0; c < o.cols.size(); ++c) obj[o.cols[c]] = row[c];
        arr.push_back(std::move(obj));
      }
      j[o.table_name] = std::move(arr);
    }
    os << j.dump(2) << "\n";
    return;
  }
  if (cfg.format == "csv") {
    os << "key,value\n";
    os << "command," << csv_quote(o.cmd) << "\n";
    os << "seed," << cfg.seed << "\n";
    os << "budget," << cfg.budget << "\n";
    for (const auto& [k, v] : o.kv) os << csv_quote(k) << "," << csv_quote(plain_value(v)) << "\n";
    if (!o.cols.empty()) {
      os << "\n";
      std::vector<std::string> h;
      for (const std::string& c : o.cols) h.push_back(csv_quote(c));
      os << join(h, ",") << "\n";
      for (const auto& row : o.rows) {
        std::vector<std::string> cells;
        for (const ojson& v : row) cells.push_back(csv_quote(plain_value(v)));
        os << join(cells, ",") << "\n";
      }
    }
    return;
  }
  os << "comack " << o.cmd << " seed=" << cfg.seed << " budget=" << cfg.budget << "\n";
  if (!o.kv.empty()) {
    os << o.cmd;
    for (const auto& [k, v] : o.kv) os << " " << k << "=" << plain_value(v);
    os << "\n";
  }
  for (const std::string& l : o.plain_lines) os << l << "\n";
}

// group order straight from the spec tokens, so oversized requests are
// refused before any multiplication table is built
u64 spec_order(const std::vector<std::string>& t, std::size_t& i) {
  require(i < t.size(), "group spec: empty");
  std::string head = t[i++];
  if (head == "prod") {
    require(i < t.size() && t[i] == "(", "group spec: prod requires '('");
    ++i;
    u64 a = spec_order(t, i);
    require(i < t.size() && t[i] == ",", "group spec: prod requires ','");
    ++i;
    u64 b = spec_order(t, i);
    require(i < t.size() && t[i] == ")", "group spec: prod requires ')'");
    ++i;
    return a * b;
  }
  if (head == "C") return detail::spec_num(t, i, "C");
  if (head == "E") {
    u64 p = detail::spec_num(t, i, "E");
    u32 k = detail::spec_num(t, i, "E p");
    u64 n = 1;
    for (u32 j = 0; j < k; ++j) n *= p;
    return n;
  }
  if (head == "K4") return 4;
  if (head == "D") return detail::spec_num(t, i, "D");
  if (head == "Q8") return 8;
  if (head == "S") {
    u32 k = detail::spec_num(t, i, "S");
    u64 n = 1;
    for (u64 j = 2; j <= k; ++j) n *= j;
    return n;
  }
  if (head == "X") {
    u64 p = detail::spec_num(t, i, "X");
    return p * p * p;
  }
  if (head == "XQ8") {
    u64 p = detail::spec_num(t, i, "XQ8");
    return 8 * p * p * p;
  }
  throw precondition_error("group spec: unknown constructor '" + head + "'");
}

Group checked_group(const std::string& spec, const RunConfig& cfg) {
  std::vector<std::string> toks = detail::tokenize_spec(spec);
  std::size_t i = 0;
  u64 n = spec_order(toks, i);
  require(i == toks.size(), "group spec: trailing tokens");
  if (n > cfg.budget)
    throw budget_error("group order " + std::to_string(n) + " exceeds budget " +
                       std::to_string(cfg.budget));
  Group g = parse_group_spec(spec);
  check(g.order() == n, "spec order estimate off");
  return g;
}

std::string abs_str(const boost::multiprecision::cpp_int& d) {
  return (d < 0 ? -d : d).str();
}

Out run_group(const std::string& spec, const RunConfig& cfg) {
  Group g = checked_group(spec, cfg);
  Out o{"group"};
  o.kv.emplace_back("group", g.label());
  o.kv.emplace_back("order", g.order());
  o.kv.emplace_back("classes", g.conjugacy_classes().size());
  o.kv.emplace_back("exponent", g.exponent());
  if (g.order() <= 512) {
    o.kv.emplace_back("subgroups", g.subgroups().size());
    o.kv.emplace_back("subgroup_classes", g.subgroup_class_reps().size());
  } else {
    o.kv.emplace_back("subgroups", "-");
    o.kv.emplace_back("subgroup_classes", "-");
  }
  return o;
}

Out run_comu_basis(const std::string& spec, const RunConfig& cfg) {
  Group g = checked_group(spec, cfg);
  std::vector<CoMuKey> basis = comu_basis(g);
  Out o{"comu-basis"};
  o.kv.emplace_back("group", g.label());
  o.kv.emplace_back("size", basis.size());
  o.table_name = "keys";
  o.cols = {"H", "K", "x"};
  for (const CoMuKey& k : basis) {
    o.rows.push_back({k.H, k.K, k.x});
    std::ostringstream l;
    l << "key H=" << k.H << " K=" << k.K << " x=" << k.x;
    o.plain_lines.push_back(l.str());
  }
  return o;
}

Out run_verify_yoshida(const std::string& spec, u32 p, u32 m, const RunConfig& cfg,
                       bool& failed) {
  Group g = checked_group(spec, cfg);
  Field F = Field::make(p, m, cfg.seed);
  VerifyReport rep = verify_yoshida(g, F);
  Out o{"verify-yoshida"};
  o.kv.emplace_back("group", g.label());
  o.kv.emplace_back("field", F.tag());
  o.kv.emplace_back("pass", rep.pass);
  o.kv.emplace_back("products", rep.products);
  if (!rep.pass) {
    o.kv.emplace_back("failure", rep.first_failure);
    failed = true;
  }
  return o;
}

Out run_blocks(const std::string& spec, u32 p, int m, bool iota_report, const RunConfig& cfg) {
  Group g = checked_group(spec, cfg);
  u32 deg = m > 0 ? static_cast<u32>(m) : block_field_degree(g, p);
  Field F = Field::make(p, deg, cfg.seed);
  bool with_embedding = iota_report || g.order() <= 512;
  std::vector<BlockIdempotent> blocks = block_idempotents(g, F, cfg.seed, with_embedding);
  Out o{"blocks"};
  o.kv.emplace_back("group", g.label());
  o.kv.emplace_back("field", F.tag());
  o.kv.emplace_back("count", blocks.size());
  o.table_name = "blocks";
  o.cols = {"block", "dim", "iota_keys", "classes"};
  for (const BlockIdempotent& b : blocks) {
    u32 dim = block_algebra_rank(g, F, b);
    std::vector<std::string> cls;
    for (u32 v : b.element.by_class) cls.push_back(F.str(v));
    o.rows.push_back({b.index, dim, b.iota_image.c.size(), join(cls, ";")});
    std::ostringstream l;
    l << "block " << b.index << " dim=" << dim << " iota_keys=" << b.iota_image.c.size()
      << " classes=" << join(cls, ";");
    o.plain_lines.push_back(l.str());
  }
  if (iota_report)
    for (const BlockIdempotent& b : blocks) {
      std::ostringstream l;
      l << "iota block " << b.index << ": " << comu_str(b.iota_image);
      o.plain_lines.push_back(l.str());
      o.kv.emplace_back("iota_" + std::to_string(b.index), comu_str(b.iota_image));
    }
  return o;
}

CartanMatrix cartan_for(const Group& g, u32 p, int m, std::optional<int> block,
                        bool pgroup_fast, const RunConfig& cfg) {
  if (pgroup_fast || (!block && g.is_p_group(p))) return cartan_pgroup(g, p);
  u32 deg = m > 0 ? static_cast<u32>(m) : block_field_degree(g, p);
  Field F = Field::make(p, deg, cfg.seed);
  std::vector<BlockIdempotent> blocks = block_idempotents(g, F, cfg.seed);
  PPermCatalog cat = pperm_catalog(g, p, F, cfg.seed);
  assign_blocks(cat, blocks);
  return cartan_block(cat, block.value_or(0));
}

Out cartan_out(const char* name, const CartanMatrix& c) {
  Out o{name};
  o.kv.emplace_back("group", c.group);
  if (c.block < 0)
    o.kv.emplace_back("block", "-");
  else
    o.kv.emplace_back("block", c.block);
  o.kv.emplace_back("rows", c.mat.size());
  o.kv.emplace_back("det", abs_str(int_det(c.to_int_matrix())));
  o.table_name = "matrix";
  o.cols.push_back("rows");
  for (u32 l : c.row_labels) o.cols.push_back(std::to_string(l));
  for (std::size_t i = 0; i < c.mat.size(); ++i) {
    std::vector<ojson> row{c.row_labels[i]};
    for (i64 v : c.mat[i]) row.push_back(v);
    o.rows.push_back(std::move(row));
  }
  std::istringstream body(cartan_text(c));
  std::string line;
  std::getline(body, line);  // header is already in kv form
  while (std::getline(body, line)) o.plain_lines.push_back(line);
  return o;
}

Out run_cartan(const std::string& spec, u32 p, int m, std::optional<int> block,
               bool pgroup_fast, const RunConfig& cfg) {
  Group g = checked_group(spec, cfg);
  return cartan_out("cartan", cartan_for(g, p, m, block, pgroup_fast, cfg));
}

Out run_criterion(const std::string& spec, u32 p, const RunConfig& cfg) {
  Group g = checked_group(spec, cfg);
  CyclicCriterion r = cyclic_criterion_report(g, p);
  Out o{"criterion"};
  o.kv.emplace_back("group", g.label());
  o.kv.emplace_back("p", p);
  o.kv.emplace_back("cyclic", r.cyclic);
  o.kv.emplace_back("det", abs_str(r.det));
  return o;
}

Out run_casestudy(u32 p, bool census, bool gauss, const RunConfig& cfg) {
  require(p % 2 == 1, "casestudy: p must be an odd prime");
  if (!census && !gauss) {
    census = true;
    gauss = p % 8 == 1;
  }
  Out o{"casestudy"};
  o.kv.emplace_back("p", p);
  if (census) {
    CensusReport r = block_census(p, cfg.seed, cfg.budget);
    o.kv.emplace_back("order", r.group_order);
    o.kv.emplace_back("formula", r.formula);
    if (r.computed < 0)
      o.kv.emplace_back("computed", "-");
    else
      o.kv.emplace_back("computed", r.computed);
    if (!r.ranks.empty()) {
      std::vector<std::string> rs;
      for (u32 v : r.ranks) rs.push_back(std::to_string(v));
      o.kv.emplace_back("ranks", join(rs, ";"));
      o.kv.emplace_back("square_ranks", r.square_ranks);
    }
    std::istringstream body(census_text(r));
    std::string line;
    while (std::getline(body, line)) o.plain_lines.push_back(line);
  }
  if (gauss) {
    require(p % 8 == 1, "casestudy: the membership test needs p = 1 mod 8");
    GaussData base = gauss_data(p, cfg.seed);
    GaussData tw = gauss_twist(base);
    const GaussData& zero = base.t_of_zeta == 0 ? base : tw;
    const GaussData& one = base.t_of_zeta == 0 ? tw : base;
    MembershipVerdict vz = membership_test(zero);
    MembershipVerdict vo = membership_test(one);
    o.kv.emplace_back("field", zero.F.tag());
    o.kv.emplace_back("w", zero.w);
    o.kv.emplace_back("b", zero.b);
    o.table_name = "branches";
    o.cols = {"t_of_zeta", "in_image", "witness"};
    auto add_branch = [&](const GaussData& d, const MembershipVerdict& v) {
      std::vector<std::string> wit;
      for (u32 x : v.witness) wit.push_back(d.F.str(x));
      o.rows.push_back({d.F.str(d.t_of_zeta), v.in_image, v.in_image ? join(wit, ";") : "-"});
      std::istringstream body(case_study_report(d, v));
      std::string line;
      while (std::getline(body, line)) o.plain_lines.push_back(line);
    };
    add_branch(zero, vz);
    add_branch(one, vo);
  }
  return o;
}

// "spec" or "spec:block" — the block index is the digits after the last colon
std::pair<std::string, std::optional<int>> split_block_arg(const std::string& s) {
  std::size_t pos = s.rfind(':');
  if (pos == std::string::npos || pos + 1 == s.size()) return {s, std::nullopt};
  for (std::size_t i = pos + 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return {s, std::nullopt};
  return {s.substr(0, pos), std::stoi(s.substr(pos + 1))};
}

Out run_fingerprint(const std::string& a, const std::string& b, u32 p, int pb, int m, int mb,
                    const RunConfig& cfg) {
  auto [spec_a, block_a] = split_block_arg(a);
  auto [spec_b, block_b] = split_block_arg(b);
  u32 p2 = pb > 0 ? static_cast<u32>(pb) : p;
  Group ga = checked_group(spec_a, cfg);
  Group gb = checked_group(spec_b, cfg);
  CartanMatrix ca = cartan_for(ga, p, m, block_a, !block_a.has_value(), cfg);
  CartanMatrix cb = cartan_for(gb, p2, mb, block_b, !block_b.has_value(), cfg);
  Out o{"fingerprint"};
  o.kv.emplace_back("a", ca.group);
  o.kv.emplace_back("a_block", block_a ? ojson(*block_a) : ojson("-"));
  o.kv.emplace_back("b", cb.group);
  o.kv.emplace_back("b_block", block_b ? ojson(*block_b) : ojson("-"));
  o.kv.emplace_back("rows_a", ca.mat.size());
  o.kv.emplace_back("rows_b", cb.mat.size());
  o.kv.emplace_back("same", same_cartan_fingerprint(ca, cb));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  if (const char* e = std::getenv("COMACK_BUDGET")) cfg.budget = std::strtoull(e, nullptr, 10);

  CLI::App app{"exact computations with double-coset operator algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("-o,--output", cfg.format, "output format")
      ->check(CLI::IsMember({"plain", "json", "csv"}));
  app.add_option("--seed", cfg.seed, "seed for all randomized routines");
  app.add_option("--budget", cfg.budget, "maximum admitted group order");

  std::string spec, spec_b;
  u32 p = 2;
  int m = 0, pb = 0, mb = 0;
  std::optional<int> block;
  bool pgroup_fast = false, iota_report = false, census = false, gauss = false;

  CLI::App* c_group = app.add_subcommand("group", "order, classes, subgroup counts");
  c_group->add_option("spec", spec, "group spec")->required();

  CLI::App* c_basis = app.add_subcommand("comu-basis", "operator basis size and dump");
  c_basis->add_option("spec", spec, "group spec")->required();

  CLI::App* c_verify = app.add_subcommand("verify-yoshida", "cross-check the two products");
  c_verify->add_option("spec", spec, "group spec")->required();
  c_verify->add_option("-p", p, "field characteristic")->required();
  c_verify->add_option("-m", m, "field degree (default 1)");

  CLI::App* c_blocks = app.add_subcommand("blocks", "block idempotents and dimensions");
  c_blocks->add_option("spec", spec, "group spec")->required();
  c_blocks->add_option("-p", p, "field characteristic")->required();
  c_blocks->add_option("-m", m, "field degree (default: splitting degree)");
  c_blocks->add_flag("--iota", iota_report, "print the embedded images");

  CLI::App* c_cartan = app.add_subcommand("cartan", "Cartan matrix and determinant");
  c_cartan->add_option("spec", spec, "group spec")->required();
  c_cartan->add_option("-p", p, "field characteristic")->required();
  c_cartan->add_option("-m", m, "field degree (default: splitting degree)");
  c_cartan->add_option("--block", block, "block index (default 0 off the p-group path)");
  c_cartan->add_flag("--pgroup-fast", pgroup_fast, "force the double-coset path");

  CLI::App* c_crit = app.add_subcommand("criterion", "cyclic determinant criterion");
  c_crit->add_option("spec", spec, "group spec")->required();
  c_crit->add_option("-p", p, "prime")->required();

  CLI::App* c_case = app.add_subcommand("casestudy", "census and membership reports");
  c_case->add_option("-p,--p", p, "odd prime")->required();
  c_case->add_flag("--census", census, "block census only");
  c_case->add_flag("--gauss", gauss, "membership test only");

  CLI::App* c_fp = app.add_subcommand("fingerprint", "compare two Cartan fingerprints");
  c_fp->add_option("a", spec, "spec[:block]")->required();
  c_fp->add_option("b", spec_b, "spec[:block]")->required();
  c_fp->add_option("-p", p, "field characteristic for a (and b unless --pb)")->required();
  c_fp->add_option("--pb", pb, "field characteristic for b");
  c_fp->add_option("-m", m, "field degree for a");
  c_fp->add_option("--mb", mb, "field degree for b");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    bool failed = false;
    Out o;
    if (*c_group) o = run_group(spec, cfg);
    if (*c_basis) o = run_comu_basis(spec, cfg);
    if (*c_verify) o = run_verify_yoshida(spec, p, m > 0 ? m : 1, cfg, failed);
    if (*c_blocks) o = run_blocks(spec, p, m, iota_report, cfg);
    if (*c_cartan) o = run_cartan(spec, p, m, block, pgroup_fast, cfg);
    if (*c_crit) o = run_criterion(spec, p, cfg);
    if (*c_case) o = run_casestudy(p, census, gauss, cfg);
    if (*c_fp) o = run_fingerprint(spec, spec_b, p, pb, m, mb, cfg);
    emit(o, cfg, std::cout);
    return failed ? 1 : 0;
  } catch (const budget_error& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
