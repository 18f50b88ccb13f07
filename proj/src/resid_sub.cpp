#include <algorithm>
#include <set>

#include "helmsweep/preconditioners.hpp"

namespace helmsweep {

std::vector<Eigen::Index> interface_adjacent_rows(const LineOperator& op,
                                                  const StripPartition& p) {
  std::set<int> lines;
  for (int j = 2; j <= p.J(); ++j) {
    for (int d = -1; d <= 1; ++d) {
      const int l = p.first(j) + d;
      if (l >= 0 && l < op.n_lines()) lines.insert(l);
    }
  }
  for (int j = 1; j < p.J(); ++j) {
    for (int d = -1; d <= 1; ++d) {
      const int l = p.last(j) + d;
      if (l >= 0 && l < op.n_lines()) lines.insert(l);
    }
  }
  std::vector<Eigen::Index> rows;
  for (int l : lines)
    for (int m = 0; m < op.block; ++m)
      rows.push_back(static_cast<Eigen::Index>(l) * op.block + m);
  return rows;
}

Vector residual_substructure_solve(const LineOperator& op,
                                   const StripPartition& p,
                                   const LinearMap& inner_precond,
                                   const Vector& f, double tol, int maxit,
                                   ResidSubReport* report) {
  const Vector u0 = inner_precond(f);
  const Vector r0 = f - op.apply(u0);

  std::vector<Eigen::Index> rows = interface_adjacent_rows(op, p);
  std::sort(rows.begin(), rows.end());

  ResidSubReport rep;
  rep.reduced_dim = static_cast<Eigen::Index>(rows.size());

  // the residual must live on the detected support; otherwise fall back
  double off_norm = 0.0;
  {
    std::set<Eigen::Index> rs(rows.begin(), rows.end());
    for (Eigen::Index i = 0; i < r0.size(); ++i)
      if (!rs.count(i)) off_norm = std::max(off_norm, std::abs(r0(i)));
  }
  const bool degenerate = rows.empty() ||
                          rep.reduced_dim >= op.size() ||
                          off_norm > 1e-8 * (1.0 + r0.norm());
  rep.degenerate = degenerate;

  SolverOptions opts;
  opts.tol = tol;
  opts.maxit = maxit;

  Vector u;
  if (degenerate) {
    auto A = [&](const Vector& v) { return op.apply(v); };
    auto [x, inner] = gmres(A, inner_precond, f, opts);
    rep.inner = inner;
    u = x;
  } else {
    auto restrict_rows = [&](const Vector& v) {
      Vector y(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) y(i) = v(rows[i]);
      return y;
    };
    auto extend_rows = [&](const Vector& y) {
      Vector v = Vector::Zero(op.size());
      for (std::size_t i = 0; i < rows.size(); ++i) v(rows[i]) = y(i);
      return v;
    };
    const Vector h = restrict_rows(r0);
    auto reduced = [&](const Vector& y) {
      return restrict_rows(op.apply(inner_precond(extend_rows(y))));
    };
    auto [rr, inner] = gmres(reduced, LinearMap{}, h, opts);
    rep.inner = inner;
    u = inner_precond(extend_rows(rr)) + u0;
  }
  if (report) *report = rep;
  return u;
}

}  // namespace helmsweep
