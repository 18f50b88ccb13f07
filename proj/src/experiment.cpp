#include "helmsweep/experiment.hpp"

#include <chrono>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace helmsweep {

using nlohmann::json;

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  ExperimentConfig c;
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("nx", c.nx);
  get("ny", c.ny);
  get("base_k", c.base_k);
  get("delta_k", c.delta_k);
  get("alpha", c.alpha);
  get("repeats", c.repeats);
  get("outer", c.outer);
  get("setting", c.setting);
  get("method", c.method);
  get("transmission", c.transmission);
  get("driver", c.driver);
  get("precond_side", c.precond_side);
  get("gdc_variant", c.gdc_variant);
  get("tol", c.tol);
  get("maxit", c.maxit);
  get("seed", c.seed);
  get("p", c.p);
  get("overlap_lines", c.overlap_lines);
  if (c.tol <= 0.0) throw ConfigError("config: tol must be positive");
  if (c.maxit < 1) throw ConfigError("config: maxit must be >= 1");
  return c;
}

std::string ExperimentConfig::to_json() const {
  json j;
  j["nx"] = nx;
  j["ny"] = ny;
  j["base_k"] = base_k;
  j["delta_k"] = delta_k;
  j["alpha"] = alpha;
  j["repeats"] = repeats;
  j["outer"] = outer;
  j["setting"] = setting;
  j["method"] = method;
  j["transmission"] = transmission;
  j["driver"] = driver;
  j["precond_side"] = precond_side;
  j["gdc_variant"] = gdc_variant;
  j["tol"] = tol;
  j["maxit"] = maxit;
  j["seed"] = seed;
  j["p"] = p;
  j["overlap_lines"] = overlap_lines;
  return j.dump();
}

namespace {

SideCondition parse_outer(const std::string& outer, PmlSpec& pml) {
  if (outer == "robin") return SideCondition::Robin;
  if (outer.rfind("pml:", 0) == 0) {
    pml.width_cells = std::stoi(outer.substr(4));
    if (pml.width_cells < 1) throw ConfigError("outer pml width must be >= 1");
    return SideCondition::Pml;
  }
  throw ConfigError("unknown outer condition: " + outer);
}

TransmissionConfig parse_transmission(const std::string& s) {
  TransmissionConfig tc;
  if (s == "exact") {
    tc.kind = TransmissionKind::ExactSchur;
  } else if (s == "ident-ext") {
    tc.kind = TransmissionKind::IdentExtSchur;
  } else if (s.rfind("pml:", 0) == 0) {
    tc.kind = TransmissionKind::PmlSchur;
    tc.pml.width_cells = std::stoi(s.substr(4));
  } else if (s == "robin") {
    tc.kind = TransmissionKind::Robin;
  } else if (s == "dirichlet") {
    tc.kind = TransmissionKind::Dirichlet;
  } else {
    throw ConfigError("unknown transmission kind: " + s);
  }
  return tc;
}

}  // namespace

ExperimentSetup build_setup(const ExperimentConfig& cfg) {
  ExperimentSetup s;
  s.grid = build_grid(cfg.nx, cfg.ny);
  s.medium = layered_wavenumber(cfg.base_k, cfg.delta_k, cfg.alpha,
                                cfg.repeats);
  PmlSpec pml;
  const SideCondition side = parse_outer(cfg.outer, pml);
  if (cfg.setting == "guide")
    s.bc = BoundarySpec::guide(side, pml);
  else if (cfg.setting == "open")
    s.bc = BoundarySpec::open(side, pml);
  else
    throw ConfigError("unknown setting: " + cfg.setting);
  s.op = assemble_helmholtz(s.grid, s.medium, s.bc);
  if (cfg.method == "source-transfer")
    s.part = make_source_transfer_partition(s.op, cfg.p);
  else
    s.part = make_strip_partition(s.op, cfg.p, cfg.overlap_lines);
  s.resolution_warning = !resolution_ok(s.medium, s.grid.h);
  return s;
}

IterationReport run_experiment(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentSetup s = build_setup(cfg);
  TransmissionSet ts(s.grid, s.medium, s.bc, s.op, s.part);
  const TransmissionConfig tc = parse_transmission(cfg.transmission);

  const Vector f = random_rhs(s.op, cfg.seed);
  SolverOptions opts;
  opts.tol = cfg.tol;
  opts.maxit = cfg.maxit;
  opts.monitor_true_residual = true;
  opts.side =
      cfg.precond_side == "right" ? PrecondSide::Right : PrecondSide::Left;

  auto A = [&](const Vector& v) { return s.op.apply(v); };

  IterationReport rep;
  if (cfg.method == "dosm-sub") {
    // the substructured methods iterate on the interface data
    SubstructuredDosm sub(s.op, s.part, ts, KindPair{tc, tc});
    const Vector g = sub.map(Vector::Zero(sub.trace_size()), f);
    const Vector zf = zero_rhs(s.op);
    auto ImF = [&](const Vector& lam) {
      return Vector(lam - sub.map(lam, zf));
    };
    if (cfg.driver == "gmres")
      rep = gmres(ImF, LinearMap{}, g, opts).second;
    else
      rep = richardson(ImF, LinearMap{}, g, opts).second;
    rep.method = cfg.method + "+" + cfg.driver;
  } else if (cfg.method == "posm" && cfg.driver == "richardson") {
    // plain parallel Schwarz iteration
    PosmIterator posm(s.op, s.part, ts, KindPair{tc, tc});
    auto locals = posm.zero_iterates();
    rep.method = "posm+richardson";
    rep.history.push_back(1.0);
    const double f0 = f.norm();
    for (int n = 1; n <= cfg.maxit; ++n) {
      locals = posm.iterate(locals, f);
      const double rel = (f - s.op.apply(posm.glue(locals))).norm() / f0;
      rep.history.push_back(rel);
      rep.iters = n;
      if (rel <= cfg.tol) {
        rep.converged = true;
        break;
      }
      if (rel > opts.divergence_guard) {
        rep.diverged = true;
        break;
      }
    }
    rep.final_res = rep.history.back();
  } else if (cfg.method == "resid-sub") {
    DosmConfig dc{KindPair{tc, tc}, KindPair{tc, tc}, false};
    DosmPreconditioner inner(s.op, s.part, ts, dc);
    auto M = [&](const Vector& v) { return inner.apply(v); };
    ResidSubReport rrep;
    Vector u = residual_substructure_solve(s.op, s.part, M, f, cfg.tol,
                                           cfg.maxit, &rrep);
    rep = rrep.inner;
    rep.method = "resid-sub";
    rep.converged = (f - s.op.apply(u)).norm() / f.norm() <= 10 * cfg.tol;
  } else {
    LinearMap M;
    DosmConfig dc{KindPair{tc, tc}, KindPair{tc, tc}, false};
    std::shared_ptr<void> keeper;  // owns the preconditioner object
    if (cfg.method == "dosm") {
      auto pc = std::make_shared<DosmPreconditioner>(s.op, s.part, ts, dc);
      M = [pc](const Vector& v) { return pc->apply(v); };
      keeper = pc;
    } else if (cfg.method == "dosm-gdc") {
      auto pc = std::make_shared<GdcPreconditioner>(
          s.op, s.part, ts, KindPair{tc, tc},
          cfg.gdc_variant == "ash" ? GdcVariant::Ash : GdcVariant::Ras);
      M = [pc](const Vector& v) { return pc->apply(v); };
      keeper = pc;
    } else if (cfg.method == "lu-sweep") {
      auto pc = std::make_shared<LuSweepPreconditioner>(s.op, s.part, ts, tc);
      M = [pc](const Vector& v) { return pc->apply(v); };
      keeper = pc;
    } else if (cfg.method == "source-transfer") {
      auto pc = std::make_shared<SourceTransferPreconditioner>(s.op, s.part,
                                                               ts, tc);
      M = [pc](const Vector& v) { return pc->apply(v); };
      keeper = pc;
    } else if (cfg.method == "slp1" || cfg.method == "slp2") {
      auto pc = std::make_shared<SlpPreconditioner>(
          s.op, s.part, ts, tc, cfg.method == "slp1" ? 1 : 2);
      M = [pc](const Vector& v) { return pc->apply(v); };
      keeper = pc;
    } else if (cfg.method == "polarized") {
      auto pc = std::make_shared<PolarizedTracesPreconditioner>(s.op, s.part,
                                                                ts, tc);
      M = [pc](const Vector& v) { return pc->apply(v); };
      keeper = pc;
    } else if (cfg.method == "posm") {
      auto pc = std::make_shared<PosmIterator>(s.op, s.part, ts,
                                               KindPair{tc, tc});
      M = [pc](const Vector& v) {
        return pc->glue(pc->iterate(pc->zero_iterates(), v));
      };
      keeper = pc;
    } else if (cfg.method == "global-osm") {
      auto pc = std::make_shared<GlobalOsmPreconditioner>(s.op, s.part, ts);
      M = [pc](const Vector& v) { return pc->apply(v); };
      keeper = pc;
    } else {
      throw ConfigError("unknown method: " + cfg.method);
    }
    auto [u, r] = cfg.driver == "gmres" ? gmres(A, M, f, opts)
                                        : richardson(A, M, f, opts);
    rep = r;
    rep.method = cfg.method + "+" + cfg.driver;
    (void)u;
  }
  rep.resolution_warning = s.resolution_warning;
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

void dump_field(const LineOperator& op, const Vector& u, std::ostream& os,
                bool include_pml) {
  os.precision(17);
  const int l0 = include_pml ? 0 : op.left_ext;
  const int l1 = include_pml ? op.n_lines() - 1 : op.left_ext + op.nx - 1;
  const int m0 = include_pml ? 0 : op.bottom_ext;
  const int m1 = include_pml ? op.block - 1 : op.bottom_ext + op.ny - 1;
  for (int l = l0; l <= l1; ++l) {
    for (int m = m0; m <= m1; ++m) {
      if (m > m0) os << ",";
      const Complex z = u(op.dof(l, m));
      os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag())
         << "j";
    }
    os << "\n";
  }
}

Vector parse_field(const LineOperator& op, std::istream& is,
                   bool include_pml) {
  Vector u = Vector::Zero(op.size());
  const int l0 = include_pml ? 0 : op.left_ext;
  const int l1 = include_pml ? op.n_lines() - 1 : op.left_ext + op.nx - 1;
  const int m0 = include_pml ? 0 : op.bottom_ext;
  const int m1 = include_pml ? op.block - 1 : op.bottom_ext + op.ny - 1;
  std::string line;
  for (int l = l0; l <= l1; ++l) {
    if (!std::getline(is, line))
      throw ConfigError("parse_field: unexpected end of file");
    std::istringstream ls(line);
    std::string cell;
    for (int m = m0; m <= m1; ++m) {
      if (!std::getline(ls, cell, ','))
        throw ConfigError("parse_field: short row");
      // split  re(+|-)im j  at the sign that starts the imaginary part
      const std::size_t jpos = cell.rfind('j');
      std::size_t split = std::string::npos;
      for (std::size_t i = 1; i < cell.size(); ++i) {
        if ((cell[i] == '+' || cell[i] == '-') && cell[i - 1] != 'e' &&
            cell[i - 1] != 'E')
          split = i;  // last such sign before 'j'
      }
      const double re = std::stod(cell.substr(0, split));
      const double im = std::stod(cell.substr(split, jpos - split));
      u(op.dof(l, m)) = Complex(re, im);
    }
  }
  return u;
}

}  // namespace helmsweep
