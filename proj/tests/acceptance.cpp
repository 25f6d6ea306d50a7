#include <nichols/catalog.hpp>
#include <nichols/free_ideal.hpp>
#include <nichols/nichols.hpp>
#include <nichols/r12_gadgets.hpp>
#include <nichols/report.hpp>
#include <nichols/symmetrizer.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace nichols;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << "s";
  return os.str();
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> problems;
  std::string summary;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    problems.push_back(what);
  }
};

std::string label(const TableRow& row) { return row.family + " " + row.id; }

std::string ranks(const std::vector<std::size_t>& v) { return join_ranks(v); }

// 1
Outcome transcription_gate() {
  Outcome o;
  auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  int draws = 0;
  for (const auto& f : family_ids())
    for (int k = 0; k < 5; ++k) {
      ParamMap m = sample_family(f, rng);
      Braiding c = build_unchecked(f, m);
      o.require(check_braid_equation(c), f + " braid equation at " + format_params(m));
      o.require(rigidity(c).second, f + " rigidity at " + format_params(m));
      ++draws;
    }
  double s = since(t0);
  o.require(s < 10.0, "runtime " + fmt(s) + " >= 10s");
  o.summary = std::to_string(draws) + " draws, " + fmt(s);
  return o;
}

// 2
Outcome quadratic_dichotomy() {
  Outcome o;
  std::mt19937_64 rng(102);
  for (const auto& f : family_ids())
    for (long t : {2L, 3L, -2L}) {
      ParamMap m = sample_family(f, rng, {{"t", t}});
      std::size_t k = quadratic_relations(build(f, m)).kernel.dim();
      o.require(k == 0, f + " t=" + std::to_string(t) + ": dim ker(id+c) = " + std::to_string(k));
    }
  std::size_t rows = 0;
  for (const auto& row : table_rows()) {
    ParamMap m = sample_row(row, rng);
    std::size_t listed = 0;
    for (const auto& g : row.generators(m, 2)) listed += g.degree() == 2;
    o.require(listed > 0, label(row) + ": no quadratic generators listed");
    std::size_t k = quadratic_relations(build(row.family, m)).kernel.dim();
    o.require(k == listed, label(row) + ": dim ker(id+c) = " + std::to_string(k) + ", listed " + std::to_string(listed));
    ++rows;
  }
  o.summary = "30 draws at t in {2,3,-2}, " + std::to_string(rows) + " table rows at t=+-1";
  return o;
}

// 3
Outcome finite_cases() {
  Outcome o;
  const std::vector<std::pair<std::string, std::string>> rows = {
      {"R1.1", "t=-1"}, {"R1.2", "iii-c"}, {"R1.3", "c"}, {"R1.4", "c"},     {"R1.5", "c"},
      {"R1.6", "t=-1"}, {"R1.7", "c"},     {"R1.8", "t=-1"}, {"R1.9", "c"}, {"R1.10", "c"}};
  std::mt19937_64 rng(103);
  const std::vector<std::size_t> want = {1, 3, 3, 1, 0, 0};
  double worst = 0;
  for (const auto& [f, id] : rows) {
    const TableRow& row = find_row(f, id);
    ParamMap m = sample_row(row, rng);
    o.require(row.basis(m).kind == BasisKind::B0, label(row) + " not listed as B0");
    std::vector<std::pair<std::string, ParamMap>> cases = {{"", m}};
    if (f == "R1.10")
      for (long a : {-7L, 0L, 1L}) cases.push_back({" a=" + std::to_string(a), {{"t", -1}, {"a", a}}});
    for (const auto& [tag, pm] : cases) {
      auto t0 = Clock::now();
      auto h = hilbert(build(f, pm), 5).ranks;
      double s = since(t0);
      worst = std::max(worst, s);
      std::size_t total = 0;
      for (auto v : h) total += v;
      o.require(h == want && total == 8, label(row) + tag + ": " + ranks(h));
      o.require(s <= 60.0, label(row) + tag + ": " + fmt(s));
    }
  }
  o.summary = "10 rows, slowest case " + fmt(worst);
  return o;
}

// 4 and 5
Outcome growth_rows(BasisKind kind, const std::vector<std::size_t>& want, std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed);
  std::size_t count = 0;
  for (const auto& row : table_rows()) {
    ParamMap m = sample_row(row, rng);
    if (row.basis(m).kind != kind) continue;
    ++count;
    auto h = hilbert(build(row.family, m), 5).ranks;
    o.require(h == want, label(row) + ": " + ranks(h));
    for (std::size_t n = 0; n <= 5; ++n) o.require(pbw_count(row.basis(m), n) == want[n], label(row) + " pbw count");
  }
  o.summary = std::to_string(count) + " rows";
  return o;
}

// 6
Outcome ideal_sufficiency() {
  Outcome o;
  std::mt19937_64 rng(106);
  for (const auto& row : table_rows()) {
    ParamMap m = sample_row(row, rng);
    Braiding c = build(row.family, m);
    auto gens = row.generators(m, 5);
    auto q = quotient_hilbert(GeneratorSet(3, gens), 5).ranks;
    auto h = hilbert(c, 5).ranks;
    o.require(q == h, label(row) + ": quotient " + ranks(q) + " vs Nichols " + ranks(h));
    for (const auto& g : gens) o.require(is_relation(c, g), label(row) + ": " + g.str() + " is not a relation");
  }
  o.summary = std::to_string(table_rows().size()) + " rows at degree 5";
  return o;
}

// 7
Outcome det_m() {
  Outcome o;
  std::mt19937_64 rng(107);
  std::size_t compared = 0;
  for (int draw = 0; draw < 5; ++draw) {
    ParamMap mi = sample_row(find_row("R1.2", "i-a"), rng), mii = sample_row(find_row("R1.2", "ii-a"), rng);
    for (std::size_t n = 1; n <= 6; ++n, ++compared)
      o.require(det_fraction_free(r12::build_M(r12::Subcase::i, mi, n)) == r12::det_closed(r12::Subcase::i, mi, n),
                "subcase i n=" + std::to_string(n) + " at " + format_params(mi));
    for (std::size_t n = 1; n <= 5; ++n, ++compared)
      o.require(det_fraction_free(r12::build_M(r12::Subcase::ii, mii, n)) == r12::det_closed(r12::Subcase::ii, mii, n),
                "subcase ii n=" + std::to_string(n) + " at " + format_params(mii));
  }
  o.summary = std::to_string(compared) + " determinants";
  return o;
}

// 8
Outcome zn_properties() {
  Outcome o;
  std::mt19937_64 rng(108);
  ParamMap m = sample_row(find_row("R1.2", "i-a"), rng);
  Braiding c = build("R1.2", m);
  auto zc = r12::z_chain(r12::Subcase::i, m, 4);
  const auto& z = zc.z;
  TensorVector x1 = TensorVector::letter(3, 1);
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::string tag = " n=" + std::to_string(n);
    o.require(is_relation(c, derive_left(c, 3, z[n])), "d3(z_n)" + tag);
    o.require(is_relation(c, derive_left(c, 2, z[n]) - r12::gamma(r12::Subcase::i, m, n) * power(x1, n)), "d2(z_n)" + tag);
    o.require(is_relation(c, derive_left(c, 1, z[n]) - r12::beta(r12::Subcase::i, m, n) * z[n - 1]), "d1(z_n)" + tag);
    checked += 3;
  }
  for (std::size_t n = 0; n <= 2; ++n, ++checked) {
    TensorVector comm = z[n + 1] * z[n] - z[n] * z[n + 1];
    o.require(comm.degree() == 2 * n + 3 && is_relation(c, comm, 7), "z_{n+1}z_n commutator n=" + std::to_string(n));
  }
  ParamMap v = {{"t", 1}, {"b", 1}, {"p", 2}, {"q", -1}, {"k", 3}, {"a", 5}};
  Braiding cv = build("R1.2", v);
  o.require(r12::beta(r12::Subcase::i, v, 1) == 0, "beta_1 != 0 at the vanishing draw");
  auto zv = r12::z_chain(r12::Subcase::i, v, 2);
  Scalar coef = 2 * (param(v, "b") + param(v, "p")) / 2;
  o.require(is_relation(cv, zv.z[2] + coef * (x1 * zv.z[1])), "z_2 + (b+p) x1 z_1 not in ker Q_3");
  auto h = hilbert(cv, 5).ranks;
  o.require(h == std::vector<std::size_t>{1, 3, 7, 13, 22, 34}, "beta_1=0 ranks " + ranks(h));
  o.summary = std::to_string(checked + 2) + " memberships, beta_1=0 ranks " + ranks(h);
  return o;
}

// 9
Outcome oracle_equivalences() {
  Outcome o;
  std::mt19937_64 rng(109);
  std::uniform_int_distribution<int> letter(1, 3);
  for (const auto& row : table_rows()) {
    ParamMap m = sample_row(row, rng);
    Braiding c = build(row.family, m);
    for (std::size_t n = 1; n <= 4; ++n)
      o.require(symmetrizer(c, n) == symmetrizer_naive(c, n), label(row) + ": symmetrizer n=" + std::to_string(n));
    for (std::size_t n = 1; n <= 5; ++n) {
      TensorVector x(3, n);
      for (int k = 0; k < 6; ++k) {
        std::vector<int> w(n);
        for (auto& l : w) l = letter(rng);
        x += TensorVector::word(3, w, Scalar(k + 1) / 2);
      }
      for (int i = 1; i <= 3; ++i)
        o.require(derive_left(c, i, x) == derive_left_shuffle(c, i, x), label(row) + ": derivation n=" + std::to_string(n));
    }
    NicholsEngine e(c);
    for (std::size_t n = 2; n <= 5; ++n)
      o.require(kernel_via_derivations(c, n).kernel == e.relations_at_degree(n).kernel,
                label(row) + ": kernels n=" + std::to_string(n));
  }
  o.summary = std::to_string(table_rows().size()) + " braidings";
  return o;
}

// 10
Outcome growth_labels() {
  Outcome o;
  ReportConfig cfg = default_config();
  cfg.jobs = 4;
  TableReport tr = run_report(cfg);
  Json j = to_json(tr);
  for (const auto& r : j["rows"]) {
    std::string who = r["family"].get<std::string>() + " " + r["row"].get<std::string>();
    o.require(r.contains("growth") && r["growth"]["status"] == "consistency-only", who + ": growth not labelled");
    o.require(r["growth"]["window"] == cfg.max_degree, who + ": window");
  }
  std::string text = format_table(tr);
  o.require(text.find("consistency-only over degrees 0..5") != std::string::npos, "table footer");
  o.summary = std::to_string(j["rows"].size()) + " report rows labelled consistency-only over degrees 0..5";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"transcription gate", transcription_gate},
      {"quadratic dichotomy", quadratic_dichotomy},
      {"finite cases", finite_cases},
      {"cubic growth rows", [] { return growth_rows(BasisKind::B3, {1, 3, 6, 10, 15, 21}, 104); }},
      {"linear growth rows", [] { return growth_rows(BasisKind::B1, {1, 3, 4, 4, 4, 4}, 105); }},
      {"ideal sufficiency", ideal_sufficiency},
      {"det M_n", det_m},
      {"z_n properties", zn_properties},
      {"oracle equivalences", oracle_equivalences},
      {"growth labelled consistency-only", growth_labels},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.problems.push_back(std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first;
    if (!o.summary.empty()) std::cout << " (" << o.summary << ")";
    std::cout << "\n";
    for (const auto& p : o.problems) std::cout << "    " << p << "\n";
    failed += !o.pass;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria pass\n";
  return failed ? 1 : 0;
}
