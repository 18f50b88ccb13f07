#include "helmsweep/experiment.hpp"

#include <chrono>
#include <sstream>

namespace helmsweep {

namespace {

std::uint64_t cell_seed(int id, int p, int alpha_idx, int outer_idx) {
  // both drivers of a cell solve the same seeded problem
  return 0x9e3779b97f4a7c15ull ^ (static_cast<std::uint64_t>(id) << 24) ^
         (static_cast<std::uint64_t>(p) << 16) ^
         (static_cast<std::uint64_t>(alpha_idx) << 8) ^
         static_cast<std::uint64_t>(outer_idx + 1);
}

}  // namespace

TableResult reproduce_table(int id, int h) {
  if (id < 1 || id > 4) throw ConfigError("table id must be 1..4");
  if (h != 64 && h != 128) throw ConfigError("table h must be 64 or 128");

  const bool lu = id == 1 || id == 3;
  const std::string setting = id <= 2 ? "guide" : "open";
  const std::vector<double> alphas = {0, 0.001, 0.005, 0.01, 0.05, 0.1, 1};
  const std::vector<int> ps = h == 64 ? std::vector<int>{4, 8, 16}
                                      : std::vector<int>{4};
  const std::vector<std::string> outers = {"robin", "pml:5", "pml:10"};
  const std::vector<std::string> drivers = {"richardson", "gmres"};

  ExperimentConfig base;
  base.nx = base.ny = h - 1;
  base.base_k = h == 64 ? std::vector<double>{20, 20, 20, 20}
                        : std::vector<double>{40, 40, 40, 40};
  base.delta_k = h == 64 ? std::vector<double>{0, 20, 10, -10}
                         : std::vector<double>{0, 40, 20, -20};
  base.setting = setting;
  base.method = lu ? "lu-sweep" : "dosm";
  base.transmission = "ident-ext";
  base.tol = 1e-6;
  base.maxit = 100;

  TableResult result;
  for (int p : ps) {
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
      for (std::size_t oi = 0; oi < outers.size(); ++oi) {
        // one assembled problem and one transmission build per cell pair
        ExperimentConfig cfg = base;
        cfg.p = p;
        cfg.repeats = p / 4;
        cfg.alpha = alphas[ai];
        cfg.outer = outers[oi];
        cfg.seed = cell_seed(id, p, static_cast<int>(ai),
                             static_cast<int>(oi));

        ExperimentSetup s = build_setup(cfg);
        TransmissionSet ts(s.grid, s.medium, s.bc, s.op, s.part);
        TransmissionConfig tc;
        tc.kind = TransmissionKind::IdentExtSchur;
        const Vector f = random_rhs(s.op, cfg.seed);

        LinearMap M;
        std::shared_ptr<void> keeper;
        if (lu) {
          auto pc =
              std::make_shared<LuSweepPreconditioner>(s.op, s.part, ts, tc);
          M = [pc](const Vector& v) { return pc->apply(v); };
          keeper = pc;
        } else {
          DosmConfig dc{KindPair{tc, tc}, KindPair{tc, tc}, false};
          auto pc = std::make_shared<DosmPreconditioner>(s.op, s.part, ts, dc);
          M = [pc](const Vector& v) { return pc->apply(v); };
          keeper = pc;
        }
        auto A = [&](const Vector& v) { return s.op.apply(v); };

        for (const std::string& driver : drivers) {
          SolverOptions opts;
          opts.tol = cfg.tol;
          opts.maxit = cfg.maxit;
          opts.monitor_true_residual = true;
          const auto t0 = std::chrono::steady_clock::now();
          IterationReport rep = driver == "gmres"
                                    ? gmres(A, M, f, opts).second
                                    : richardson(A, M, f, opts).second;
          TableRow row;
          row.method = cfg.method;
          row.p = p;
          row.alpha = cfg.alpha;
          row.outer = cfg.outer;
          row.driver = driver;
          row.iters = rep.iters;
          row.converged = rep.converged;
          row.final_res = rep.final_res;
          row.wall_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
          result.rows.push_back(row);
        }
      }
    }
  }
  return result;
}

std::string TableResult::csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "method,p,alpha,outer,driver,iters,converged,final_res,wall_ms\n";
  for (const auto& r : rows) {
    os << r.method << "," << r.p << "," << r.alpha << "," << r.outer << ","
       << r.driver << ",";
    if (r.converged)
      os << r.iters;
    else
      os << "-";
    os << "," << (r.converged ? "true" : "false") << "," << r.final_res << ","
       << r.wall_ms << "\n";
  }
  return os.str();
}

}  // namespace helmsweep
