#pragma once

#include <nichols/braiding.hpp>
#include <nichols/catalog.hpp>
#include <nichols/free_ideal.hpp>
#include <nichols/nichols.hpp>
#include <nichols/parallel.hpp>
#include <nichols/r12_gadgets.hpp>

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace nichols {

using Json = nlohmann::ordered_json;

inline constexpr std::size_t kCliDegreeCap = 5;
inline constexpr std::size_t kCliOptInCap = 6;
inline constexpr std::size_t kCliLargeCap = 7;

inline void require_cli_degree(std::size_t n, bool allow_large) {
  if (n < 1) throw std::invalid_argument("max degree must be at least 1");
  if (n > kCliLargeCap) throw DegreeCapError(n, kCliLargeCap);
  if (n == kCliLargeCap && !allow_large) throw std::invalid_argument("degree 7 needs --allow-large");
}

struct Check {
  std::string name;
  std::string status;  // pass, fail, untested (degree cap)
  std::string detail;
};

struct VerificationReport {
  std::string family;
  std::string row;
  std::string conditions;
  ParamMap params;
  std::vector<std::string> pinned;
  std::uint64_t seed = 0;
  std::size_t max_degree = 0;
  std::vector<std::size_t> ranks_computed;
  std::optional<std::vector<std::size_t>> ranks_expected;
  std::vector<std::size_t> ranks_quotient;
  std::size_t quadratic_kernel_dim = 0;
  std::optional<std::size_t> quadratic_expected;
  std::string basis;
  std::string growth;
  std::vector<std::string> flags;
  std::vector<std::string> generators;
  std::vector<Check> checks;
  std::optional<r12::PropertyReport> gadgets;
  double seconds = 0;
  bool pass = false;

  void add(std::string name, bool ok, std::string detail = {}) {
    checks.push_back({std::move(name), ok ? "pass" : "fail", std::move(detail)});
  }
};

struct VerifyOptions {
  std::size_t max_degree = kCliDegreeCap;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::optional<std::string> row;
  // z_n checks: chain length max_degree-1, membership up to this degree
  std::size_t gadget_cap = 7;
};

inline std::string join_ranks(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

struct Resolved {
  ParamMap params;
  const TableRow* row = nullptr;
};

namespace report_detail {

inline bool keeps(const ParamMap& pinned, const ParamMap& m) {
  for (const auto& [k, v] : pinned) {
    auto it = m.find(k);
    if (it == m.end() || it->second != v) return false;
  }
  return true;
}

inline bool is_t_violation(const std::optional<std::string>& v) { return v && v->rfind("constraint t=", 0) == 0; }

inline ParamMap fill(const std::string& family, ParamMap m, std::mt19937_64& rng) {
  for (const auto& n : family_param_names(family))
    if (!m.count(n)) m[n] = draw_rational(rng);
  return m;
}

}  // namespace report_detail

// Pinned values are kept; the rest are drawn. Without a row id, the first row that accepts the pins wins.
inline Resolved resolve_params(const std::string& family, ParamMap pinned, std::mt19937_64& rng,
                               const std::optional<std::string>& row_id = std::nullopt) {
  using namespace report_detail;
  const auto& names = family_param_names(family);
  for (const auto& [k, v] : pinned)
    if (std::find(names.begin(), names.end(), k) == names.end())
      throw ConstraintError("parameter '" + k + "' is not used by " + family);
  if (pinned.count("t") && pinned.at("t") == 0) throw ConstraintError("constraint t!=0 violated");

  auto try_row = [&](const TableRow& row) -> std::optional<ParamMap> {
    ParamMap m = pinned;
    try {
      row.sample(m, rng);
    } catch (const ConstraintError&) {
      return std::nullopt;
    }
    if (!keeps(pinned, m) || row.violation(m)) return std::nullopt;
    return m;
  };

  if (row_id) {
    const TableRow& row = find_row(family, *row_id);
    return {sample_row(row, rng, pinned), &row};
  }

  if (!pinned.count("t")) {
    static const long ts[] = {1, -1, 2};
    std::uniform_int_distribution<int> pick(0, 2);
    pinned["t"] = ts[pick(rng)];
  }
  const Scalar t = pinned.at("t");
  if (t * t != 1) return {fill(family, pinned, rng), nullptr};
  for (const TableRow* row : rows_of(family))
    if (auto m = try_row(*row)) return {*m, row};
  ParamMap filled = fill(family, pinned, rng);
  for (const TableRow* row : rows_of(family)) {
    auto v = row->violation(filled);
    if (v && !is_t_violation(v)) throw ConstraintError(*v);
  }
  throw ConstraintError("no table row of " + family + " matches " + format_params(filled));
}

inline std::optional<r12::Subcase> gadget_subcase(const TableRow* row) {
  if (!row || row->family != "R1.2") return std::nullopt;
  if (row->id == "i-a" || row->id == "i-b") return r12::Subcase::i;
  if (row->id == "ii-a" || row->id == "ii-b") return r12::Subcase::ii;
  return std::nullopt;
}

inline VerificationReport verify_case(const std::string& family, const ParamMap& params, const TableRow* row,
                                      const VerifyOptions& opt, const std::vector<std::string>& pinned = {}) {
  auto t0 = std::chrono::steady_clock::now();
  VerificationReport r;
  r.family = family;
  r.params = params;
  r.pinned = pinned;
  r.seed = opt.seed;
  r.max_degree = opt.max_degree;
  std::size_t N = opt.max_degree;

  Braiding c = build(family, params);
  r.add("braid equation", true);
  auto [flat, bijective] = rigidity(c);
  r.add("rigidity map bijective", bijective);

  NicholsEngine engine(c, std::max<std::size_t>(N, kDefaultDegreeCap), opt.jobs);
  r.ranks_computed = engine.hilbert(N).ranks;
  r.quadratic_kernel_dim = quadratic_relations(c).kernel.dim();

  if (!row) {
    const Scalar& t = param(params, "t");
    r.row = "t^2!=1";
    r.conditions = "t^2!=1";
    r.growth = "unknown";
    r.quadratic_expected = 0;
    r.add("quadratic kernel dim", r.quadratic_kernel_dim == 0,
          "dim ker(id+c) = " + std::to_string(r.quadratic_kernel_dim) + ", expected 0 for t=" + t.get_str());
  } else {
    ExpectedOutcome e = expected_for_row(*row, params, N);
    r.row = row->id;
    r.conditions = row->conditions;
    r.basis = e.basis->name();
    r.growth = e.growth;
    r.flags = e.flags;
    r.quadratic_expected = e.quadratic_count;
    r.add("quadratic kernel dim", r.quadratic_kernel_dim == e.quadratic_count,
          "dim ker(id+c) = " + std::to_string(r.quadratic_kernel_dim) + ", listed " +
              std::to_string(e.quadratic_count));
    std::vector<std::size_t> expect;
    for (std::size_t n = 0; n <= N; ++n) expect.push_back(pbw_count(*e.basis, n));
    r.ranks_expected = expect;
    r.add("hilbert equals PBW count", expect == r.ranks_computed,
          "computed " + join_ranks(r.ranks_computed) + ", " + r.basis + " " + join_ranks(expect));
    GeneratorSet gens(3, e.generators);
    r.ranks_quotient = quotient_hilbert(gens, N, std::max<std::size_t>(N, kDefaultDegreeCap)).ranks;
    r.add("quotient by listed generators equals Nichols", r.ranks_quotient == r.ranks_computed,
          "quotient " + join_ranks(r.ranks_quotient));
    for (const auto& g : gens.generators()) {
      r.generators.push_back(g.str());
      if (g.degree() > kRelationDegreeCap) {
        r.checks.push_back({"relation " + g.str(), "untested (degree cap)", ""});
        continue;
      }
      r.add("relation " + g.str(), is_relation(c, g));
    }
    if (auto s = gadget_subcase(row)) {
      std::size_t n_max = N > 1 ? N - 1 : 1;
      r.gadgets = r12::verify_zn_properties(c, *s, params, n_max, std::min(opt.gadget_cap, kRelationDegreeCap));
      for (const auto& pc : r.gadgets->checks)
        r.checks.push_back({"z-chain " + pc.name + (pc.as_corrected ? " (as-corrected)" : ""),
                            pc.status == "holds" ? "pass" : pc.status == "fails" ? "fail" : pc.status,
                            "degree " + std::to_string(pc.degree)});
    }
  }
  r.pass = std::all_of(r.checks.begin(), r.checks.end(),
                       [](const Check& ch) { return ch.status == "pass" || ch.status == "untested (degree cap)"; });
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline VerificationReport run_verify(const std::string& family, const ParamMap& pinned, const VerifyOptions& opt) {
  family_param_names(family);
  std::mt19937_64 rng(opt.seed);
  Resolved res = resolve_params(family, pinned, rng, opt.row);
  std::vector<std::string> names;
  for (const auto& [k, v] : pinned) names.push_back(k);
  return verify_case(family, res.params, res.row, opt, names);
}

inline Json to_json(const VerificationReport& r, bool timings = false) {
  Json j;
  j["family"] = r.family;
  j["row"] = r.row;
  j["conditions"] = r.conditions;
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = v.get_str();
  j["params"] = params;
  j["pinned"] = r.pinned;
  j["seed"] = r.seed;
  j["max_degree"] = r.max_degree;
  j["ranks_computed"] = r.ranks_computed;
  j["ranks_expected"] = r.ranks_expected ? Json(*r.ranks_expected) : Json(nullptr);
  j["ranks_quotient"] = r.ranks_quotient;
  j["quadratic_kernel_dim"] = r.quadratic_kernel_dim;
  j["quadratic_expected"] = r.quadratic_expected ? Json(*r.quadratic_expected) : Json(nullptr);
  j["basis"] = r.basis;
  j["growth"] = {{"label", r.growth}, {"status", "consistency-only"}, {"window", r.max_degree}};
  j["flags"] = r.flags;
  j["generators"] = r.generators;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"status", c.status}, {"detail", c.detail}});
  j["checks"] = checks;
  if (r.gadgets) {
    Json g;
    g["subcase"] = r12::subcase_name(r.gadgets->subcase);
    Json gc = Json::array();
    for (const auto& pc : r.gadgets->checks)
      gc.push_back({{"name", pc.name}, {"degree", pc.degree}, {"status", pc.status}, {"as_corrected", pc.as_corrected}});
    g["checks"] = gc;
    g["pass"] = r.gadgets->pass();
    j["gadgets"] = g;
  }
  if (timings) j["seconds"] = r.seconds;
  j["pass"] = r.pass;
  return j;
}

inline std::string format_report_text(const VerificationReport& r) {
  std::ostringstream os;
  os << r.family << " [" << r.row << "] " << format_params(r.params) << "\n";
  os << "  ranks      " << join_ranks(r.ranks_computed) << "\n";
  if (r.ranks_expected) os << "  expected   " << join_ranks(*r.ranks_expected) << " (" << r.basis << ")\n";
  if (!r.ranks_quotient.empty()) os << "  quotient   " << join_ranks(r.ranks_quotient) << "\n";
  os << "  ker(id+c)  " << r.quadratic_kernel_dim << "\n";
  os << "  growth     " << r.growth << " (consistency-only, degrees 0.." << r.max_degree << ")\n";
  for (const auto& f : r.flags) os << "  flag       " << f << "\n";
  for (const auto& c : r.checks)
    if (c.status != "pass") os << "  " << c.status << ": " << c.name << (c.detail.empty() ? "" : " [" + c.detail + "]") << "\n";
  os << "  " << (r.pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

// ---- whole-table reports

struct RowRequest {
  std::string family;
  std::string row;
  ParamMap pinned;
};

struct ReportConfig {
  std::uint64_t seed = 1;
  std::size_t max_degree = kCliDegreeCap;
  unsigned jobs = 1;
  std::vector<RowRequest> rows;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& msg) : std::runtime_error("line " + std::to_string(line) + ": " + msg) {}
};

// Lines: `key = value` for seed, max_degree, jobs; `row <family> <row-id> [k=v,...]`; `#` comments.
inline ReportConfig parse_config(std::istream& in) {
  ReportConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "row") {
      RowRequest rq;
      std::string extra;
      if (!(ls >> rq.family >> rq.row)) throw ConfigError(lineno, "expected `row <family> <row-id> [k=v,...]`");
      std::string params;
      ls >> params;
      if (ls >> extra) throw ConfigError(lineno, "unexpected '" + extra + "'");
      try {
        find_row(rq.family, rq.row);
        rq.pinned = parse_params(params);
      } catch (const std::exception& e) {
        throw ConfigError(lineno, e.what());
      }
      cfg.rows.push_back(rq);
      continue;
    }
    std::string rest;
    std::getline(ls, rest);
    auto eq = (first + rest).find('=');
    if (eq == std::string::npos) throw ConfigError(lineno, "expected `key = value` or `row ...`");
    std::string all = first + rest;
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t"), e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(all.substr(0, eq)), value = trim(all.substr(eq + 1));
    try {
      std::size_t used = 0;
      unsigned long long v = std::stoull(value, &used);
      if (used != value.size()) throw std::invalid_argument("bad");
      if (key == "seed") cfg.seed = v;
      else if (key == "max_degree") cfg.max_degree = v;
      else if (key == "jobs") cfg.jobs = static_cast<unsigned>(std::max<unsigned long long>(v, 1));
      else throw ConfigError(lineno, "unknown key '" + key + "'");
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError(lineno, "bad value '" + value + "' for " + key);
    }
  }
  return cfg;
}

inline ReportConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config '" + path + "'");
  return parse_config(in);
}

// Every table row once, in catalog order.
inline ReportConfig default_config() {
  ReportConfig cfg;
  cfg.seed = 20240601;
  for (const auto& r : table_rows()) cfg.rows.push_back({r.family, r.id, {}});
  return cfg;
}

struct TableReport {
  ReportConfig config;
  std::vector<VerificationReport> rows;
  std::vector<std::string> errors;  // per row, empty when the row ran
  bool pass = false;
};

inline TableReport run_report(const ReportConfig& cfg) {
  TableReport tr{cfg, std::vector<VerificationReport>(cfg.rows.size()), std::vector<std::string>(cfg.rows.size()), false};
  parallel_for(cfg.rows.size(), cfg.jobs, [&](std::size_t i) {
    const RowRequest& rq = cfg.rows[i];
    VerifyOptions opt;
    opt.max_degree = cfg.max_degree;
    opt.seed = cfg.seed + i;
    opt.row = rq.row;
    try {
      tr.rows[i] = run_verify(rq.family, rq.pinned, opt);
    } catch (const std::exception& e) {
      tr.rows[i].family = rq.family;
      tr.rows[i].row = rq.row;
      tr.rows[i].seed = opt.seed;
      tr.rows[i].max_degree = cfg.max_degree;
      tr.errors[i] = e.what();
    }
  });
  tr.pass = !tr.rows.empty();
  for (std::size_t i = 0; i < tr.rows.size(); ++i)
    if (!tr.errors[i].empty() || !tr.rows[i].pass) tr.pass = false;
  return tr;
}

inline Json to_json(const TableReport& tr, bool timings = false) {
  Json j;
  j["seed"] = tr.config.seed;
  j["max_degree"] = tr.config.max_degree;
  Json rows = Json::array();
  std::vector<std::string> fams;
  std::size_t passed = 0;
  for (std::size_t i = 0; i < tr.rows.size(); ++i) {
    Json r = to_json(tr.rows[i], timings);
    if (!tr.errors[i].empty()) {
      r["pass"] = false;
      r["error"] = tr.errors[i];
    }
    if (r["pass"].get<bool>()) ++passed;
    if (std::find(fams.begin(), fams.end(), tr.rows[i].family) == fams.end()) fams.push_back(tr.rows[i].family);
    rows.push_back(r);
  }
  j["rows"] = rows;
  j["summary"] = {{"families", fams.size()}, {"rows", tr.rows.size()}, {"passed", passed},
                  {"failed", tr.rows.size() - passed}};
  j["pass"] = tr.pass;
  return j;
}

inline std::string format_table(const TableReport& tr) {
  std::ostringstream os;
  os << std::left << std::setw(7) << "family" << std::setw(7) << "row" << std::setw(36) << "conditions"
     << std::setw(14) << "basis" << std::setw(16) << "growth" << std::setw(22) << "ranks" << "status\n";
  for (std::size_t i = 0; i < tr.rows.size(); ++i) {
    const auto& r = tr.rows[i];
    std::string status = !tr.errors[i].empty() ? "ERROR " + tr.errors[i] : r.pass ? "pass" : "FAIL";
    for (const auto& f : r.flags) status += ", " + f;
    os << std::setw(7) << r.family << std::setw(7) << r.row << std::setw(36) << r.conditions << std::setw(14)
       << r.basis << std::setw(16) << r.growth << std::setw(22) << join_ranks(r.ranks_computed) << status << "\n";
    if (tr.errors[i].empty())
      for (const auto& c : r.checks)
        if (c.status == "fail") os << "       fail: " << c.name << (c.detail.empty() ? "" : " [" + c.detail + "]") << "\n";
  }
  std::size_t passed = 0;
  for (std::size_t i = 0; i < tr.rows.size(); ++i) passed += tr.errors[i].empty() && tr.rows[i].pass;
  os << passed << "/" << tr.rows.size() << " rows pass; growth labels are consistency-only over degrees 0.."
     << tr.config.max_degree << "\n";
  return os.str();
}

// ---- exploration of user braidings

struct ExploreReport {
  std::size_t dim = 0;
  std::size_t max_degree = 0;
  std::vector<std::size_t> ranks;
  // kernel elements of degree n not in the ideal generated by lower degrees
  std::vector<std::vector<TensorVector>> new_relations;
  std::vector<std::size_t> kernel_dims;
};

inline ExploreReport explore(const Braiding& raw, std::size_t N, unsigned jobs = 1) {
  Braiding c = validate(raw);
  ExploreReport er;
  er.dim = c.dim();
  er.max_degree = N;
  NicholsEngine engine(c, std::max<std::size_t>(N, kDefaultDegreeCap), jobs);
  er.ranks = engine.hilbert(N).ranks;
  er.new_relations.resize(N + 1);
  er.kernel_dims.assign(N + 1, 0);
  GeneratorSet found(c.dim());
  for (std::size_t n = 2; n <= N; ++n) {
    Subspace ker = engine.relations_at_degree(n).kernel;
    er.kernel_dims[n] = ker.dim();
    Subspace have = ideal_slice(found, n);
    std::vector<SparseRow> acc = have.basis();
    for (const auto& b : ker.basis()) {
      if (have.contains(b)) continue;
      acc.push_back(b);
      have = Subspace::span(ipow(c.dim(), n), acc);
      er.new_relations[n].push_back(TensorVector::from_sparse(c.dim(), n, b));
    }
    for (const auto& v : er.new_relations[n]) found.add(v);
  }
  return er;
}

inline Json to_json(const ExploreReport& er) {
  Json j;
  j["dim"] = er.dim;
  j["max_degree"] = er.max_degree;
  j["ranks"] = er.ranks;
  j["kernel_dims"] = er.kernel_dims;
  Json rel = Json::object();
  for (std::size_t n = 2; n <= er.max_degree; ++n) {
    Json list = Json::array();
    for (const auto& v : er.new_relations[n]) list.push_back(v.str());
    rel[std::to_string(n)] = list;
  }
  j["relations"] = rel;
  j["pass"] = true;
  return j;
}

inline std::string format_explore(const ExploreReport& er) {
  std::ostringstream os;
  os << "dim " << er.dim << ", ranks " << join_ranks(er.ranks) << "\n";
  for (std::size_t n = 2; n <= er.max_degree; ++n) {
    os << "degree " << n << ": ker Q_n dim " << er.kernel_dims[n] << ", " << er.new_relations[n].size()
       << " new relation(s)\n";
    for (const auto& v : er.new_relations[n]) os << "  " << v.str() << "\n";
  }
  return os.str();
}

}  // namespace nichols
