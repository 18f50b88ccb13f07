#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "helmsweep/block_tridiag.hpp"
#include "helmsweep/experiment.hpp"

using namespace helmsweep;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sweeping-type Helmholtz preconditioner lab"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);

  std::string cfg_path, out_path, suite, source = "point:2,0";
  int table_id = 1, table_h = 64;
  bool include_pml = false;

  auto* run = app.add_subcommand("run", "run one experiment from a config");
  run->add_option("--config", cfg_path, "JSON config file")->required();
  run->add_option("--out", out_path, "CSV output path (default stdout)");

  auto* table =
      app.add_subcommand("table", "regenerate one iteration-count study");
  table->add_option("--id", table_id, "table id 1..4")->required();
  table->add_option("--h", table_h, "mesh: 64 or 128")->default_val(64);
  table->add_option("--out", out_path, "CSV output path");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite, "nilpotency|equivalence|structure")
      ->required();
  verify->add_option("--out", out_path, "JSON output path");

  auto* dump = app.add_subcommand("dump", "solve and dump the field as CSV");
  dump->add_option("--config", cfg_path, "JSON config file")->required();
  dump->add_option("--source", source,
                   "point:i,j or random:seed (default point:2,center)");
  dump->add_option("--out", out_path, "CSV output path");
  dump->add_flag("--include-pml", include_pml,
                 "dump the absorbing-layer unknowns too");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      ExperimentConfig cfg = ExperimentConfig::from_json(slurp(cfg_path));
      IterationReport rep = run_experiment(cfg);
      TableResult t;
      TableRow row;
      row.method = cfg.method;
      row.p = cfg.p;
      row.alpha = cfg.alpha;
      row.outer = cfg.outer;
      row.driver = cfg.driver;
      row.iters = rep.iters;
      row.converged = rep.converged;
      row.final_res = rep.final_res;
      row.wall_ms = rep.wall_ms;
      t.rows.push_back(row);
      write_out(out_path, t.csv());
      return 0;
    }
    if (*table) {
      TableResult t = reproduce_table(table_id, table_h);
      write_out(out_path, t.csv());
      return 0;
    }
    if (*verify) {
      auto checks = verify_suite(suite);
      write_out(out_path, checks_to_json(checks) + "\n");
      for (const auto& c : checks)
        if (!c.pass) {
          std::cerr << "FAIL " << c.name << " measured=" << c.measured
                    << " tol=" << c.tol << "\n";
          return 2;
        }
      return 0;
    }
    if (*dump) {
      ExperimentConfig cfg = ExperimentConfig::from_json(slurp(cfg_path));
      ExperimentSetup s = build_setup(cfg);
      Vector f;
      if (source.rfind("point:", 0) == 0) {
        const std::string rest = source.substr(6);
        const auto comma = rest.find(',');
        const int i = std::stoi(rest.substr(0, comma));
        int j;
        if (rest.substr(comma + 1) == "center")
          j = (s.grid.ny + 1) / 2;
        else
          j = std::stoi(rest.substr(comma + 1));
        f = point_rhs(s.op, i, j);
      } else if (source.rfind("random:", 0) == 0) {
        f = random_rhs(s.op, std::stoull(source.substr(7)));
      } else {
        throw ConfigError("bad --source: " + source);
      }
      SchurSequence seq = block_tridiag_factor(s.op);
      Vector u = block_lu_solve(seq, f);
      std::ostringstream os;
      dump_field(s.op, u, os, include_pml);
      write_out(out_path, os.str());
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
