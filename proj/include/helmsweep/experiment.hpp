#ifndef HELMSWEEP_EXPERIMENT_HPP
#define HELMSWEEP_EXPERIMENT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "helmsweep/preconditioners.hpp"

namespace helmsweep {

struct ExperimentConfig {
  int nx = 63;
  int ny = 63;
  std::vector<double> base_k = {20, 20, 20, 20};
  std::vector<double> delta_k = {0, 20, 10, -10};
  double alpha = 0.0;
  int repeats = 1;
  std::string outer = "robin";     // "robin" | "pml:5" | "pml:10"
  std::string setting = "guide";   // "guide" | "open"
  std::string method = "dosm";
  std::string transmission = "ident-ext";  // exact|ident-ext|pml:W|robin|dirichlet
  std::string driver = "richardson";       // richardson | gmres
  std::string precond_side = "left";
  std::string gdc_variant = "ras";
  double tol = 1e-6;
  int maxit = 100;
  std::uint64_t seed = 1;
  int p = 4;            // subdomain count
  int overlap_lines = 0;

  static ExperimentConfig from_json(const std::string& text);
  std::string to_json() const;
};

/// Assembled problem pieces shared by the drivers.
struct ExperimentSetup {
  Grid2D grid;
  MediumProfile medium;
  BoundarySpec bc;
  LineOperator op;
  StripPartition part;
  bool resolution_warning = false;
};

ExperimentSetup build_setup(const ExperimentConfig& cfg);

/// Assemble, build the selected preconditioner, run the driver on a seeded
/// random source, and report.
IterationReport run_experiment(const ExperimentConfig& cfg);

struct TableRow {
  std::string method;
  int p = 0;
  double alpha = 0.0;
  std::string outer;
  std::string driver;
  int iters = 0;
  bool converged = false;
  double final_res = 0.0;
  double wall_ms = 0.0;
};

struct TableResult {
  std::vector<TableRow> rows;
  std::string csv() const;  // schema: method,p,alpha,outer,driver,iters,...
};

/// Regenerate one of the four iteration-count studies.  h selects the
/// resolution/wavenumber pair (64 -> base 20, 128 -> base 40, subdomain
/// counts {4,8,16} and {4} respectively).
TableResult reproduce_table(int id, int h);

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tol = 0.0;
};

std::vector<CheckResult> verify_suite(const std::string& name);
std::string checks_to_json(const std::vector<CheckResult>& checks);

/// CSV field dump: one row per gridline, cells "re+imj" with 17 significant
/// digits; closure unknowns included only when include_pml is set.
void dump_field(const LineOperator& op, const Vector& u, std::ostream& os,
                bool include_pml);
Vector parse_field(const LineOperator& op, std::istream& is, bool include_pml);

}  // namespace helmsweep

#endif
