// Command-line front end for the exact index computations: single queries,
// level sweeps from config files, admissibility tables, and the property
// suites. Exit codes: 0 success, 2 parse error, 3 inadmissible level,
// 4 self-check failure, 1 internal error.

#include <cstdlib>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "verlinde/registry.hpp"
#include "verlinde/selfcheck.hpp"
#include "verlinde/verlinde_sums.hpp"

using namespace vt;

namespace {

std::vector<long long> parse_int_list(const std::string& what, const std::string& raw) {
  std::vector<long long> out;
  std::string token;
  std::istringstream is(raw);
  while (std::getline(is, token, ',')) {
    size_t pos = 0;
    long long v = 0;
    try {
      v = std::stoll(token, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
    if (pos != token.size() || token.empty())
      throw std::invalid_argument(what + ": '" + token + "' is not an integer");
    out.push_back(v);
  }
  if (!raw.empty() && raw.back() == ',')
    throw std::invalid_argument(what + ": trailing comma in '" + raw + "'");
  return out;
}

long long total_rank(const ProductDatum& pd) {
  long long r = 0;
  for (const auto& f : pd.factors) r += f.rank;
  return r;
}

// Reassembles a flat coordinate list into one weight per factor.
PWeight to_pweight(const ProductDatum& pd, const std::vector<long long>& flat, size_t offset) {
  PWeight w;
  size_t pos = offset;
  for (const auto& f : pd.factors) {
    w.emplace_back(flat.begin() + pos, flat.begin() + pos + f.rank);
    pos += f.rank;
  }
  return w;
}

PLevel parse_level_vector(const ProductDatum& pd, const std::string& raw) {
  std::vector<long long> ks = parse_int_list("--level", raw);
  if (ks.size() == 1) ks.assign(pd.factors.size(), ks[0]);  // broadcast to all factors
  if (ks.size() != pd.factors.size())
    throw std::invalid_argument("--level needs one entry per factor (" +
                                std::to_string(pd.factors.size()) + "), got " +
                                std::to_string(ks.size()));
  for (long long k : ks)
    if (k < 1) throw std::invalid_argument("--level entries must be positive");
  return ks;
}

CenterIdx parse_center_generator(const ProductDatum& pd, const std::string& raw) {
  std::vector<long long> idx = parse_int_list("--center", raw);
  if (idx.size() != pd.factors.size())
    throw std::invalid_argument("--center needs one index per factor (" +
                                std::to_string(pd.factors.size()) + "), got " +
                                std::to_string(idx.size()));
  CenterIdx g;
  for (size_t j = 0; j < idx.size(); ++j) {
    if (idx[j] < 0 || idx[j] >= pd.factors[j].center_order)
      throw std::invalid_argument("--center index " + std::to_string(idx[j]) +
                                  " out of range for factor " + std::to_string(j + 1) +
                                  " (center order " +
                                  std::to_string(pd.factors[j].center_order) + ")");
    g.push_back(static_cast<int>(idx[j]));
  }
  return g;
}

long long generator_order(const ProductDatum& pd, const CenterIdx& g) {
  long long o = 1;
  for (size_t j = 0; j < g.size(); ++j)
    o = std::lcm(o, pd.factors[j].center_elt_order[g[j]]);
  return o;
}

// The subgroup character with the requested value e^{2 pi i e_i / ord_i} on
// each generator; the exponents must be consistent with the relations.
CenterCharacter character_from_exponents(const CenterSubgroup& G,
                                         const std::vector<CenterIdx>& gens,
                                         const std::vector<CenterCharacter>& chars,
                                         const std::vector<long long>& exps) {
  std::vector<Rat> target;
  for (size_t i = 0; i < gens.size(); ++i)
    target.push_back(frac_part(rat_ll(exps[i]) / rat_ll(generator_order(*G.datum, gens[i]))));
  for (const CenterCharacter& chi : chars) {
    bool ok = true;
    for (size_t i = 0; i < gens.size(); ++i)
      if (character_exponent(G, chi, gens[i]) != target[i]) {
        ok = false;
        break;
      }
    if (ok) return chi;
  }
  throw std::invalid_argument(
      "--phi: the requested exponents violate the subgroup relations and "
      "define no character");
}

// Exact rendering of a summand: plain rational when possible, otherwise the
// power-basis coefficients in its cyclotomic field.
std::string summand_str(const CycloNumber& x) {
  if (std::optional<Rat> q = try_as_rational(x)) return q->get_str();
  std::ostringstream os;
  os << "cyclo(" << x.modulus << ";";
  for (size_t i = 0; i < x.coeffs.size(); ++i) os << (i ? "," : " ") << x.coeffs[i].get_str();
  os << ")";
  return os.str();
}

std::string pweight_str(const PWeight& w) {
  std::ostringstream os;
  for (const IVec& f : w) {
    os << "(";
    for (size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i];
    os << ")";
  }
  return os.str();
}

std::string level_str(const PLevel& k, char sep) {
  std::ostringstream os;
  for (size_t i = 0; i < k.size(); ++i) os << (i ? std::string(1, sep) : "") << k[i];
  return os.str();
}

nlohmann::ordered_json pweight_json(const PWeight& w) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const IVec& f : w) out.push_back(f);
  return out;
}

enum class OutputFormat { kHuman, kJson, kCsv };

struct ComputeArgs {
  std::string group;
  std::string mode;
  std::vector<std::string> level_raw;
  std::vector<long long> genus;
  std::vector<std::string> markings_raw;
  std::string mu_raw;
  std::string phi_raw;
  std::vector<std::string> center_raw;
  bool per_lambda = false;
  OutputFormat format = OutputFormat::kHuman;
};

struct ComputedRow {
  PLevel level;
  long long genus = 0;
  std::vector<PWeight> markings;  // sc only
  PWeight mu;                     // ns / conjclass only
  std::vector<long long> phi_exponents;
  VerlindeResult result;
};

int run_compute(const ComputeArgs& a) {
  GroupSpec gs = parse_group_name(a.group);
  if (!a.center_raw.empty()) {
    gs.generators.clear();
    for (const std::string& raw : a.center_raw)
      gs.generators.push_back(parse_center_generator(gs.datum, raw));
  }
  const ProductDatum& pd = gs.datum;
  CenterSubgroup G = center_subgroup(pd, gs.generators);
  const bool quotient_mode = a.mode == "ns" || a.mode == "conjclass";

  if (!quotient_mode && G.order() > 1)
    throw std::invalid_argument("mode '" + a.mode +
                                "' applies to the simply connected form; use mode ns or "
                                "conjclass for a central quotient");
  if (!quotient_mode && (!a.mu_raw.empty() || !a.phi_raw.empty()))
    throw std::invalid_argument("--mu and --phi belong to the quotient modes ns/conjclass");
  if (quotient_mode && !a.markings_raw.empty())
    throw std::invalid_argument("--markings belongs to the modes sc/closed; quotient modes "
                                "take a single --mu");
  if (a.mode == "closed" && !a.markings_raw.empty())
    throw std::invalid_argument("mode closed takes no markings");

  const long long rank = total_rank(pd);

  std::vector<std::vector<long long>> marking_flats;
  if (!a.markings_raw.empty()) {
    std::string joined;
    for (const std::string& m : a.markings_raw) {
      if (!joined.empty()) joined += ",";
      joined += m;
    }
    std::vector<long long> flat = parse_int_list("--markings", joined);
    if (flat.empty() || flat.size() % rank != 0)
      throw std::invalid_argument("--markings length must be a positive multiple of the "
                                  "total rank " +
                                  std::to_string(rank));
    for (size_t pos = 0; pos < flat.size(); pos += rank)
      marking_flats.emplace_back(flat.begin() + pos, flat.begin() + pos + rank);
  }

  std::vector<long long> mu_flat(rank, 0);
  if (!a.mu_raw.empty()) {
    mu_flat = parse_int_list("--mu", a.mu_raw);
    if (static_cast<long long>(mu_flat.size()) != rank)
      throw std::invalid_argument("--mu needs exactly " + std::to_string(rank) +
                                  " coordinates");
  }

  std::vector<long long> phi_flat;
  if (!a.phi_raw.empty()) {
    phi_flat = parse_int_list("--phi", a.phi_raw);
    if (a.genus.size() != 1)
      throw std::invalid_argument("--phi requires a single --genus value");
  }

  std::vector<CenterCharacter> chars = enumerate_characters(G);
  const size_t ngens = gs.generators.size();

  std::vector<ComputedRow> rows;
  for (const std::string& level_raw : a.level_raw) {
    PLevel lev = parse_level_vector(pd, level_raw);
    for (long long h : a.genus) {
      if (h < 0) throw std::invalid_argument("--genus must be nonnegative");
      ComputedRow row;
      row.level = lev;
      row.genus = h;
      if (a.mode == "closed") {
        row.result = verlinde_closed(pd, lev, h);
      } else if (a.mode == "sc") {
        for (const auto& flat : marking_flats) row.markings.push_back(to_pweight(pd, flat, 0));
        row.result = verlinde_sc(pd, lev, h, row.markings);
      } else {
        row.mu = to_pweight(pd, mu_flat, 0);
        row.phi_exponents = phi_flat;
        if (row.phi_exponents.empty()) row.phi_exponents.assign(2 * h * ngens, 0);
        if (row.phi_exponents.size() != 2 * static_cast<size_t>(h) * ngens)
          throw std::invalid_argument(
              "--phi needs one exponent per subgroup generator per slot: 2*genus*" +
              std::to_string(ngens) + " = " + std::to_string(2 * h * ngens) + " values");
        std::vector<CenterCharacter> phi;
        for (long long s = 0; s < 2 * h; ++s) {
          std::vector<long long> exps(row.phi_exponents.begin() + s * ngens,
                                      row.phi_exponents.begin() + (s + 1) * ngens);
          phi.push_back(character_from_exponents(G, gs.generators, chars, exps));
        }
        row.result = a.mode == "ns" ? verlinde_ns(G, lev, h, row.mu, phi)
                                    : verlinde_conjclass(G, lev, h, row.mu, phi);
      }
      rows.push_back(std::move(row));
    }
  }

  if (a.format == OutputFormat::kJson) {
    nlohmann::ordered_json j;
    j["group"] = a.group;
    j["mode"] = a.mode;
    j["center_generators"] = nlohmann::ordered_json::array();
    for (const auto& g : gs.generators) j["center_generators"].push_back(g);
    j["results"] = nlohmann::ordered_json::array();
    for (const ComputedRow& row : rows) {
      nlohmann::ordered_json jr;
      jr["level"] = row.level;
      jr["genus"] = row.genus;
      if (a.mode == "sc") {
        jr["markings"] = nlohmann::ordered_json::array();
        for (const PWeight& m : row.markings) jr["markings"].push_back(pweight_json(m));
      }
      if (quotient_mode) {
        jr["mu"] = pweight_json(row.mu);
        jr["phi"] = row.phi_exponents;
      }
      jr["value"] = row.result.value.get_str();
      jr["integral"] = row.result.integral;
      if (a.per_lambda) {
        jr["per_lambda"] = nlohmann::ordered_json::array();
        for (const auto& [lam, val] : row.result.per_lambda) {
          nlohmann::ordered_json jl;
          jl["lambda"] = pweight_json(lam);
          jl["value"] = summand_str(val);
          jr["per_lambda"].push_back(std::move(jl));
        }
      }
      j["results"].push_back(std::move(jr));
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (a.format == OutputFormat::kCsv) {
    std::cout << "group,mode,level,genus,value\n";
    for (const ComputedRow& row : rows)
      std::cout << a.group << "," << a.mode << "," << level_str(row.level, ' ') << ","
                << row.genus << "," << row.result.value.get_str() << "\n";
    return 0;
  }

  std::cout << "group mode level genus value\n";
  for (const ComputedRow& row : rows) {
    std::cout << a.group << " " << a.mode << " " << level_str(row.level, ',') << " "
              << row.genus << " " << row.result.value.get_str() << "\n";
    if (a.per_lambda)
      for (const auto& [lam, val] : row.result.per_lambda)
        std::cout << "  lambda=" << pweight_str(lam) << " value=" << summand_str(val)
                  << "\n";
  }
  return 0;
}

int run_levels(const std::string& group, OutputFormat format) {
  GroupSpec gs = parse_group_name(group);
  struct Row {
    std::string type;
    long long order;
    long long min;
  };
  // The table only needs the order of each factorwise projection, so the
  // subgroup is projected before it is generated: materializing the product
  // group itself grows multiplicatively with the number of factors.
  std::vector<Row> rows;
  for (size_t j = 0; j < gs.datum.factors.size(); ++j) {
    ProductDatum fj = make_product({gs.datum.factors[j].type});
    std::vector<CenterIdx> fgens;
    fgens.reserve(gs.generators.size());
    for (const auto& g : gs.generators) fgens.push_back({g[static_cast<size_t>(j)]});
    const long long order = center_subgroup(fj, fgens).order();
    rows.push_back({to_string(gs.datum.factors[j].type), order,
                    min_level(gs.datum.factors[j], order)});
  }

  if (format == OutputFormat::kJson) {
    nlohmann::ordered_json j;
    j["group"] = group;
    j["factors"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < rows.size(); ++i) {
      nlohmann::ordered_json jf;
      jf["index"] = i + 1;
      jf["type"] = rows[i].type;
      jf["subgroup_order"] = rows[i].order;
      jf["min_level"] = rows[i].min;
      j["factors"].push_back(std::move(jf));
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  const char* sep = format == OutputFormat::kCsv ? "," : " ";
  std::cout << "factor" << sep << "type" << sep << "subgroup_order" << sep << "min_level\n";
  for (size_t i = 0; i < rows.size(); ++i)
    std::cout << i + 1 << sep << rows[i].type << sep << rows[i].order << sep << rows[i].min
              << "\n";
  return 0;
}

int run_selfcheck_cmd(const std::string& suite, bool weak, unsigned seed, bool json) {
  SelfCheckOptions opt;
  opt.full = suite == "full";
  opt.weak_admissibility = weak;
  opt.numeric_seed = seed;
  SelfCheckReport report = run_selfcheck(opt);
  if (json) {
    std::cout << report_json(report);
  } else {
    for (const auto& item : report.items) {
      std::cout << (item.passed ? "[PASS] " : "[FAIL] ") << item.name
                << " cases=" << item.cases;
      if (!item.detail.empty()) std::cout << " " << item.detail;
      std::cout << "\n";
    }
    std::cout << "suite=" << suite << " weak_admissibility=" << (weak ? "true" : "false")
              << " all_passed=" << (report.all_passed() ? "true" : "false") << "\n";
  }
  return report.all_passed() ? 0 : 4;
}

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("VERLINDE_THREADS")) {
    std::string s(env);
    size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size() || v < 1)
      throw std::invalid_argument("VERLINDE_THREADS must be a positive integer, got '" + s +
                                  "'");
    return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact indices of moduli spaces of flat connections over surfaces"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "read options from a TOML-like key = value file with [compute], "
                 "[levels], [selfcheck] sections; command-line flags override it");
  int threads = 0;
  app.add_option("--threads", threads,
                 "worker threads for the weight sums (default: VERLINDE_THREADS, "
                 "then the hardware count); results do not depend on it")
      ->check(CLI::Range(1, 4096));

  ComputeArgs ca;
  bool compute_json = false, compute_csv = false;
  CLI::App* compute = app.add_subcommand("compute", "evaluate one index query");
  compute->fallthrough();
  compute->add_option("--group", ca.group,
                      "group name: type labels (A2), adjoint marks (E7'), classical names "
                      "(SU(3), Spin(8), SO(3), PSU(4), PSp(2), PSO(8)), products with x")
      ->required();
  compute->add_option("--level", ca.level_raw,
                      "level vector, comma separated per factor (a single value is "
                      "broadcast); repeat the flag to sweep")
      ->required();
  compute->add_option("--genus", ca.genus, "surface genus; repeat to sweep");
  compute
      ->add_option("--mode", ca.mode,
                   "closed surface, marked simply connected sum, quotient component, or "
                   "full conjugacy-class sum")
      ->required()
      ->check(CLI::IsMember({"closed", "sc", "ns", "conjclass"}));
  compute->add_option("--markings", ca.markings_raw,
                      "marking weights for mode sc, flat comma list chunked by total rank");
  compute->add_option("--mu", ca.mu_raw,
                      "single marking weight for modes ns/conjclass (default 0)");
  compute->add_option("--phi", ca.phi_raw,
                      "flat twist exponents, one per subgroup generator per slot "
                      "(2*genus slots); slot character value is e^(2 pi i e/ord)");
  compute->add_option("--center", ca.center_raw,
                      "explicit center generator (comma list, one index per factor); "
                      "repeatable; replaces the named group's subgroup");
  compute->add_flag("--per-lambda", ca.per_lambda, "print the per-weight contributions");
  compute->add_flag("--json", compute_json, "emit JSON");
  compute->add_flag("--csv", compute_csv, "emit CSV");

  std::string lv_group;
  bool levels_json = false, levels_csv = false;
  CLI::App* levels = app.add_subcommand("levels", "minimal admissible level per factor");
  levels->fallthrough();
  levels->add_option("--group", lv_group, "group name, as in compute")->required();
  levels->add_flag("--json", levels_json, "emit JSON");
  levels->add_flag("--csv", levels_csv, "emit CSV");

  std::string suite = "fast";
  bool weak = false, selfcheck_json = false;
  unsigned seed = 20260815;
  CLI::App* selfcheck = app.add_subcommand("selfcheck", "run the property suites");
  selfcheck->fallthrough();
  selfcheck->add_option("--suite", suite, "fast: rank <= 2, level <= 4; full: rank <= 3, "
                                          "level <= 8 plus the numeric suite")
      ->check(CLI::IsMember({"fast", "full"}));
  selfcheck->add_flag("--force-weak-admissibility", weak,
                      "gate levels by the weaker divisibility test; borderline levels "
                      "then surface fractional sums and the suite fails by design");
  selfcheck->add_option("--seed", seed, "seed for the numeric suite of the full run");
  selfcheck->add_flag("--json", selfcheck_json, "emit the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    set_thread_count(resolve_threads(threads));
    if (compute->parsed()) {
      if (compute_json && compute_csv)
        throw std::invalid_argument("--json and --csv are mutually exclusive");
      ca.format = compute_json ? OutputFormat::kJson
                               : (compute_csv ? OutputFormat::kCsv : OutputFormat::kHuman);
      if (ca.genus.empty()) ca.genus.push_back(0);
      return run_compute(ca);
    }
    if (levels->parsed()) {
      if (levels_json && levels_csv)
        throw std::invalid_argument("--json and --csv are mutually exclusive");
      return run_levels(lv_group, levels_json ? OutputFormat::kJson
                                              : (levels_csv ? OutputFormat::kCsv
                                                            : OutputFormat::kHuman));
    }
    return run_selfcheck_cmd(suite, weak, seed, selfcheck_json);
  } catch (const InadmissibleLevelError& e) {
    std::cerr << "inadmissible level: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
