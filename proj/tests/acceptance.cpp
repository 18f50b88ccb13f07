// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion.  Exit code 0 only when all
// criteria pass.

#include <chrono>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "helmsweep/block_tridiag.hpp"
#include "helmsweep/experiment.hpp"

using namespace helmsweep;

namespace {

int failures = 0;

void report(int id, const std::string& what, bool pass,
            const std::string& detail = "") {
  std::printf("%s criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", id,
              what.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  if (!pass) ++failures;
}

struct RefTable {
  // (p, alpha-string, outer, driver) -> iterations, "-" for divergence
  std::map<std::tuple<int, std::string, std::string, std::string>,
           std::string>
      cells;
};

RefTable parse_ref(const std::string& text, const std::vector<int>& ps) {
  RefTable t;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string alpha;
    ls >> alpha;
    for (int p : ps)
      for (const char* driver : {"richardson", "gmres"})
        for (const char* outer : {"robin", "pml:5", "pml:10"}) {
          std::string v;
          ls >> v;
          t.cells[{p, alpha, outer, driver}] = v;
        }
  }
  return t;
}

// reference iteration counts from the four published studies
const char* kTable[4][2] = {
    {// table 1: factorization sweeps, wave guide
     "0 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1\n"
     "0.001 4 3 3 3 3 3 5 3 3 4 3 3 6 3 3 4 3 3\n"
     "0.005 6 4 4 5 3 4 12 5 5 7 4 4 13 5 4 8 5 5\n"
     "0.01 8 5 4 5 4 4 16 6 5 8 5 5 38 7 7 11 6 6\n"
     "0.05 - 8 6 8 6 5 - 17 12 16 7 8 - 12 26 22 9 10\n"
     "0.1 32 10 11 10 7 6 - - - 18 11 11 - - - 26 14 15\n"
     "1 - - - 20 19 19 - - - 45 38 38 - - - 86 63 62",
     "0 1 1 1 1 1 1\n0.001 4 2 3 3 3 3\n0.005 7 3 3 5 3 3\n"
     "0.01 11 4 4 6 4 4\n0.05 - - - 13 7 6\n0.1 - 22 31 14 9 9\n"
     "1 - - - 36 21 19"},
    {// table 2: Schwarz sweeps, wave guide
     "0 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1\n"
     "0.001 3 2 2 3 2 2 3 2 2 3 2 2 3 2 2 3 2 2\n"
     "0.005 5 3 3 4 3 3 5 3 3 4 3 3 5 3 3 4 3 3\n"
     "0.01 7 4 3 4 3 3 7 4 4 5 3 3 7 4 4 5 4 3\n"
     "0.05 42 12 7 7 5 4 - 16 12 9 5 5 - 21 17 13 7 6\n"
     "0.1 - - - 9 7 6 - - - 14 12 11 - - - 20 17 17\n"
     "1 - - - 26 23 24 - - - 48 47 47 - - - 59 68 65",
     "0 1 1 1 1 1 1\n0.001 3 2 3 3 2 2\n0.005 5 3 4 4 3 3\n"
     "0.01 8 4 6 5 4 4\n0.05 - - - 10 7 6\n0.1 - - - 13 11 9\n"
     "1 - - - 43 40 38"},
    {// table 3: factorization sweeps, open domain
     "0 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1\n"
     "0.001 2 2 2 2 2 2 3 3 2 3 2 2 3 3 3 3 3 3\n"
     "0.005 3 3 3 3 3 3 4 3 3 4 3 3 4 3 3 4 3 3\n"
     "0.01 3 3 3 3 3 3 4 4 3 4 3 3 5 4 4 5 4 3\n"
     "0.05 5 5 5 5 4 4 7 5 5 6 5 5 8 6 5 8 5 5\n"
     "0.1 7 6 5 6 5 5 9 6 6 8 6 6 12 7 7 10 7 6\n"
     "1 - 31 27 15 12 12 - - - 32 25 22 - - - 58 34 29",
     "0 1 1 1 1 1 1\n0.001 3 2 2 3 2 2\n0.005 3 3 3 3 3 3\n"
     "0.01 4 3 3 4 3 3\n0.05 6 4 4 6 4 4\n0.1 8 5 5 7 5 5\n"
     "1 - - 52 23 13 12"},
    {// table 4: Schwarz sweeps, open domain
     "0 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1\n"
     "0.001 3 2 2 2 2 2 2 2 2 2 2 2 2 2 2 2 2 2\n"
     "0.005 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3\n"
     "0.01 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3\n"
     "0.05 5 4 4 4 4 4 5 5 4 4 4 4 5 5 4 4 4 4\n"
     "0.1 6 5 5 5 5 4 6 6 5 5 5 5 7 6 5 6 5 5\n"
     "1 - - - 23 33 37 - - - 35 44 44 - - - 41 43 48",
     "0 1 1 1 1 1 1\n0.001 3 2 2 2 2 2\n0.005 3 3 3 3 3 3\n"
     "0.01 4 3 3 3 3 3\n0.05 5 5 5 5 4 4\n0.1 7 7 6 6 6 5\n"
     "1 - - - 32 43 45"}};

std::string fmt_alpha(double a) {
  std::ostringstream os;
  os << a;
  return os.str();
}

struct Problem {
  Grid2D grid;
  MediumProfile medium;
  BoundarySpec bc;
  LineOperator op;
  Vector f;
  Vector u_exact;
  Problem(int n, double alpha, std::uint64_t seed) : grid(build_grid(n, n)) {
    medium = layered_wavenumber({20, 20, 20, 20}, {0, 20, 10, -10}, alpha, 1);
    bc = BoundarySpec::guide(SideCondition::Robin);
    op = assemble_helmholtz(grid, medium, bc);
    f = random_rhs(op, seed);
    u_exact = block_lu_solve(block_tridiag_factor(op), f);
  }
};

void criterion1() {
  // alpha = 0 cells of all four studies converge in exactly one iteration
  // and build+run within five seconds per cell
  bool pass = true;
  std::string detail;
  double worst_ms = 0.0;
  for (int id = 1; id <= 4 && pass; ++id)
    for (int p : {4, 8, 16})
      for (const std::string& outer : {"robin", "pml:5", "pml:10"})
        for (const std::string& driver : {"richardson", "gmres"}) {
          ExperimentConfig cfg;
          cfg.nx = cfg.ny = 63;
          cfg.alpha = 0.0;
          cfg.p = p;
          cfg.repeats = p / 4;
          cfg.outer = outer;
          cfg.setting = id <= 2 ? "guide" : "open";
          cfg.method = (id == 1 || id == 3) ? "lu-sweep" : "dosm";
          cfg.driver = driver;
          cfg.seed = 1000 + p;
          IterationReport rep = run_experiment(cfg);
          worst_ms = std::max(worst_ms, rep.wall_ms);
          if (!rep.converged || rep.iters != 1 || rep.wall_ms > 5000.0) {
            pass = false;
            detail = "table " + std::to_string(id) + " p=" +
                     std::to_string(p) + " " + outer + " " + driver +
                     " iters=" + std::to_string(rep.iters);
            break;
          }
        }
  report(1, "exact factorization case: every alpha=0 cell takes 1 iteration",
         pass,
         pass ? "slowest cell " + std::to_string(static_cast<int>(worst_ms)) +
                    " ms"
              : detail);
}

void criterion2() {
  double worst = 0.0;
  std::string where;
  for (int n : {32}) {
    for (int J : {2, 4}) {
      for (double alpha : {0.0, 1.0}) {
        Problem pr(n, alpha, 500 + J);
        StripPartition part = make_strip_partition(pr.op, J, 0);
        TransmissionSet ts(pr.grid, pr.medium, pr.bc, pr.op, part);
        TransmissionConfig exact{TransmissionKind::ExactSchur};
        auto track = [&](const char* name, const Vector& u) {
          const double rel = (pr.op.apply(u) - pr.f).norm() / pr.f.norm();
          if (rel > worst) {
            worst = rel;
            where = std::string(name) + " J=" + std::to_string(J) +
                    " alpha=" + fmt_alpha(alpha);
          }
        };
        DosmConfig dc{KindPair{exact, exact}, KindPair{exact, exact}, false};
        track("dosm", DosmPreconditioner(pr.op, part, ts, dc).apply(pr.f));
        track("lu-sweep",
              LuSweepPreconditioner(pr.op, part, ts, exact).apply(pr.f));
        track("polarized",
              PolarizedTracesPreconditioner(pr.op, part, ts, exact)
                  .apply(pr.f));
        StripPartition stp = make_source_transfer_partition(pr.op, J);
        TransmissionSet ts2(pr.grid, pr.medium, pr.bc, pr.op, stp);
        track("source-transfer",
              SourceTransferPreconditioner(pr.op, stp, ts2, exact)
                  .apply(pr.f));
      }
    }
  }
  std::ostringstream os;
  os.precision(3);
  os << "worst residual " << worst << " (" << where << ")";
  report(2, "nilpotency degree one of the exact-transmission sweeps",
         worst <= 1e-10, os.str());
}

void criterion3() {
  bool pass = true;
  std::string detail;
  for (int J : {2, 3, 4}) {
    Problem pr(32, 1.0, 600 + J);
    StripPartition part = make_strip_partition(pr.op, J, 0);
    TransmissionSet ts(pr.grid, pr.medium, pr.bc, pr.op, part);
    TransmissionConfig exact{TransmissionKind::ExactSchur};
    PosmIterator posm(pr.op, part, ts, KindPair{exact, exact});
    auto locals = posm.zero_iterates();
    double before = 1.0;
    for (int it = 1; it <= J; ++it) {
      if (it == J)
        before = (posm.glue(locals) - pr.u_exact).norm() / pr.u_exact.norm();
      locals = posm.iterate(locals, pr.f);
    }
    const double after =
        (posm.glue(locals) - pr.u_exact).norm() / pr.u_exact.norm();
    if (after > 1e-10 || (J > 1 && before < 1e-3)) {
      pass = false;
      detail = "J=" + std::to_string(J) + " after=" + std::to_string(after) +
               " before=" + std::to_string(before);
    }
  }
  report(3, "parallel Schwarz terminates in exactly J iterations", pass,
         detail);
}

void criterion4() {
  Problem pr(32, 1.0, 700);
  StripPartition part = make_strip_partition(pr.op, 4, 0);
  TransmissionSet ts(pr.grid, pr.medium, pr.bc, pr.op, part);
  GlobalOsmPreconditioner gosm(pr.op, part, ts);
  const double rel =
      (pr.op.apply(gosm.apply(pr.f)) - pr.f).norm() / pr.f.norm();
  std::ostringstream os;
  os.precision(3);
  os << "residual " << rel;
  report(4, "global transmission preconditioner is exact in two phases",
         rel <= 1e-10, os.str());
}

void criterion5() {
  auto checks = verify_suite("equivalence");
  int bad = 0;
  double worst = 0.0;
  std::string where;
  for (const auto& c : checks) {
    if (!c.pass) ++bad;
    if (c.measured > worst) {
      worst = c.measured;
      where = c.name;
    }
  }
  std::ostringstream os;
  os.precision(3);
  os << checks.size() << " pairings, worst discrepancy " << worst << " ("
     << where << ")";
  report(5, "equivalence oracle suite", bad == 0, os.str());
}

void criterion6() {
  Problem pr(32, 1.0, 800);
  StripPartition part = make_strip_partition(pr.op, 4, 0);
  TransmissionSet ts(pr.grid, pr.medium, pr.bc, pr.op, part);
  TransmissionConfig pml;
  pml.kind = TransmissionKind::PmlSchur;
  pml.pml.width_cells = 5;
  DosmConfig dc{KindPair{pml, pml}, KindPair{pml, pml}, false};
  DosmPreconditioner inner(pr.op, part, ts, dc);
  auto M = [&](const Vector& v) { return inner.apply(v); };
  ResidSubReport rrep;
  Vector u = residual_substructure_solve(pr.op, part, M, pr.f, 1e-12, 300,
                                         &rrep);
  const double rel = (pr.op.apply(u) - pr.f).norm() / pr.f.norm();

  // support confinement: rows of I - A M^{-1} stay interface-adjacent
  auto rows = interface_adjacent_rows(pr.op, part);
  std::set<Eigen::Index> rs(rows.begin(), rows.end());
  double off = 0.0;
  Vector probe = random_rhs(pr.op, 801);
  Vector e = probe - pr.op.apply(inner.apply(probe));
  for (Eigen::Index i = 0; i < e.size(); ++i)
    if (!rs.count(i)) off = std::max(off, std::abs(e(i)));

  const bool pass = rel <= 1e-10 && !rrep.degenerate &&
                    rrep.reduced_dim < pr.op.size() &&
                    off <= 1e-10 * probe.norm();
  std::ostringstream os;
  os.precision(3);
  os << "residual " << rel << ", reduced dim " << rrep.reduced_dim << " of "
     << pr.op.size() << ", off-support " << off;
  report(6, "residual substructuring returns the exact solution", pass,
         os.str());
}

void criterion7() {
  const auto t0 = std::chrono::steady_clock::now();
  int within = 0, total = 0, dash_bad = 0;
  std::vector<std::string> misses;
  bool anchors_ok = true;
  std::string anchor_detail;

  auto check_half = [&](int id, int h) {
    TableResult res = reproduce_table(id, h);
    RefTable ref = parse_ref(kTable[id - 1][h == 64 ? 0 : 1],
                                 h == 64 ? std::vector<int>{4, 8, 16}
                                         : std::vector<int>{4});
    for (const auto& r : res.rows) {
      const auto key = std::make_tuple(r.p, fmt_alpha(r.alpha), r.outer,
                                       r.driver);
      const std::string want = ref.cells.at(key);
      ++total;
      bool ok;
      if (want == "-") {
        ok = !r.converged;
        if (!ok && r.alpha == 1.0 && r.driver == "richardson" && id <= 2)
          ++dash_bad;
      } else {
        ok = r.converged && std::abs(r.iters - std::stoi(want)) <= 2;
      }
      if (ok)
        ++within;
      else
        misses.push_back("t" + std::to_string(id) + "/h" + std::to_string(h) +
                         " p=" + std::to_string(r.p) + " a=" +
                         fmt_alpha(r.alpha) + " " + r.outer + " " + r.driver +
                         ": ref " + want + " got " +
                         (r.converged ? std::to_string(r.iters) : "-"));
    }
    // representative anchors
    auto anchor = [&](int aid, int ah, int p, const char* alpha,
                      const char* driver, std::initializer_list<int> want) {
      if (aid != id || ah != h) return;
      int i = 0;
      for (const char* outer : {"robin", "pml:5", "pml:10"}) {
        const int w = want.begin()[i++];
        for (const auto& r : res.rows)
          if (r.p == p && fmt_alpha(r.alpha) == alpha && r.outer == outer &&
              r.driver == driver) {
            if (!r.converged || std::abs(r.iters - w) > 2) {
              anchors_ok = false;
              anchor_detail += " [t" + std::to_string(id) + " " + outer +
                               " ref " + std::to_string(w) + " got " +
                               (r.converged ? std::to_string(r.iters)
                                            : std::string("-")) +
                               "]";
            }
          }
      }
    };
    anchor(1, 64, 4, "1", "gmres", {20, 19, 19});
    anchor(2, 64, 4, "0.01", "richardson", {7, 4, 3});
    anchor(3, 64, 8, "0.1", "gmres", {8, 6, 6});
    anchor(4, 64, 16, "0.05", "richardson", {5, 5, 4});
  };

  for (int id = 1; id <= 4; ++id) check_half(id, 64);
  for (int id = 1; id <= 4; ++id) check_half(id, 128);
  const double mins = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count() /
                      60.0;

  const bool pass = misses.empty() && dash_bad == 0 && anchors_ok;
  std::ostringstream os;
  os << within << "/" << total << " cells within tolerance, " << dash_bad
     << " divergence-flag mismatches, anchors "
     << (anchors_ok ? "ok" : ("off:" + anchor_detail)) << ", "
     << static_cast<int>(mins * 10) / 10.0 << " min";
  report(7, "iteration-count study reproduction", pass, os.str());
  for (const auto& m : misses) std::printf("    cell off: %s\n", m.c_str());
}

void criterion8() {
  auto checks = verify_suite("structure");
  int bad = 0;
  for (const auto& c : checks)
    if (!c.pass) ++bad;
  report(8, "structural property suite", bad == 0,
         std::to_string(checks.size()) + " checks");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  if (failures) std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
