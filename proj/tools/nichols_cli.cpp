#include <nichols/report.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

namespace {

using namespace nichols;

void write_json(const std::string& path, const Json& j) {
  std::string text = j.dump(2) + "\n";
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

int fail(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nichols algebras of rank-3 braidings: verification harness"};
  app.require_subcommand(1);

  std::string json_path, set_text, row_id, export_path;
  std::size_t max_degree = kCliDegreeCap;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  bool allow_large = false, timings = false, quiet = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--max-degree", max_degree, "highest degree computed (5 default, 6 opt-in, 7 with --allow-large)");
    sub->add_option("--json", json_path, "write the JSON report to PATH ('-' for stdout)");
    sub->add_option("--jobs", jobs, "worker threads");
    sub->add_flag("--allow-large", allow_large, "permit degree 7");
    sub->add_flag("--timings", timings, "include wall-clock seconds in JSON");
    sub->add_flag("--quiet", quiet, "suppress the text summary");
  };

  std::string family;
  auto* verify = app.add_subcommand("verify", "verify one catalog case");
  verify->add_option("family", family, "family id, e.g. R1.1")->required();
  verify->add_option("--set", set_text, "pinned parameters k=v,...");
  verify->add_option("--row", row_id, "table row id; sampled parameters then satisfy its conditions");
  verify->add_option("--seed", seed, "seed for unpinned parameters");
  verify->add_option("--export", export_path, "also write the braiding in the explore file format");
  common(verify);

  std::string config_path;
  bool use_default = false;
  auto* report = app.add_subcommand("report", "verify every row listed in a config");
  report->add_option("config", config_path, "config file");
  report->add_flag("--default", use_default, "use the built-in config with every table row");
  report->add_option("--seed", seed, "override the config seed");
  common(report);

  std::string braiding_path;
  auto* explore_cmd = app.add_subcommand("explore", "relations and ranks of a braiding file");
  explore_cmd->add_option("file", braiding_path, "braiding file")->required();
  common(explore_cmd);

  auto* families = app.add_subcommand("families", "list catalog families and table rows");

  CLI11_PARSE(app, argc, argv);

  try {
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    if (*families) {
      for (const auto& f : list_families()) {
        std::cout << f.id << " (";
        for (std::size_t i = 0; i < f.params.size(); ++i) std::cout << (i ? "," : "") << f.params[i];
        std::cout << ")" << (f.conditions.empty() ? "" : " requires " + f.conditions) << "\n";
        for (const auto& r : f.rows) std::cout << "  " << r << "\n";
      }
      return 0;
    }
    require_cli_degree(max_degree, allow_large);

    if (*verify) {
      VerifyOptions opt;
      opt.max_degree = max_degree;
      opt.seed = seed;
      opt.jobs = jobs;
      if (!row_id.empty()) opt.row = row_id;
      VerificationReport r = run_verify(family, parse_params(set_text), opt);
      if (!export_path.empty()) {
        std::ofstream out(export_path);
        if (!out) throw std::runtime_error("cannot write '" + export_path + "'");
        out << "# " << r.family << " " << format_params(r.params) << "\n" << format_braiding(build(r.family, r.params));
      }
      if (!quiet) std::cout << format_report_text(r);
      if (!json_path.empty()) write_json(json_path, to_json(r, timings));
      return r.pass ? 0 : 1;
    }

    if (*report) {
      ReportConfig cfg;
      if (use_default) cfg = default_config();
      else if (!config_path.empty()) cfg = load_config(config_path);
      else return fail("report needs a config path or --default");
      if (report->count("--seed")) cfg.seed = seed;
      if (report->count("--max-degree")) cfg.max_degree = max_degree;
      if (report->count("--jobs")) cfg.jobs = jobs;
      require_cli_degree(cfg.max_degree, allow_large);
      TableReport tr = run_report(cfg);
      if (!quiet) std::cout << format_table(tr);
      if (!json_path.empty()) write_json(json_path, to_json(tr, timings));
      return tr.pass ? 0 : 1;
    }

    if (*explore_cmd) {
      std::ifstream in(braiding_path);
      if (!in) return fail("cannot read '" + braiding_path + "'");
      Braiding c = parse_braiding(in);
      ExploreReport er = explore(c, max_degree, jobs);
      if (!quiet) std::cout << format_explore(er);
      if (!json_path.empty()) write_json(json_path, to_json(er));
      return 0;
    }
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  return 0;
}
