#include "helmsweep/line_operator.hpp"

#include <ostream>
#include <random>

namespace helmsweep {

Matrix TriDiagBlock::dense() const {
  const int n = size();
  Matrix M = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    M(i, i) = diag(i);
    if (i + 1 < n) {
      M(i, i + 1) = off(i);
      M(i + 1, i) = off(i);
    }
  }
  return M;
}

Vector TriDiagBlock::apply(const Vector& v) const {
  const int n = size();
  Vector y(n);
  for (int i = 0; i < n; ++i) {
    Complex s = diag(i) * v(i);
    if (i > 0) s += off(i - 1) * v(i - 1);
    if (i + 1 < n) s += off(i) * v(i + 1);
    y(i) = s;
  }
  return y;
}

bool LineOperator::is_physical_dof(Eigen::Index d) const {
  const int line = static_cast<int>(d / block);
  const int row = static_cast<int>(d % block);
  return line >= left_ext && line < left_ext + nx && row >= bottom_ext &&
         row < bottom_ext + ny;
}

Vector LineOperator::apply(const Vector& v) const {
  if (v.size() != size())
    throw DimensionError("LineOperator::apply: dimension mismatch");
  Vector y(size());
  const int nl = n_lines();
  for (int l = 0; l < nl; ++l) {
    Vector seg = D[l].apply(v.segment(l * block, block));
    if (l > 0)
      seg += cpl[l - 1].cwiseProduct(v.segment((l - 1) * block, block));
    if (l + 1 < nl)
      seg += cpl[l].cwiseProduct(v.segment((l + 1) * block, block));
    y.segment(l * block, block) = seg;
  }
  return y;
}

Matrix LineOperator::dense() const {
  Matrix M = Matrix::Zero(size(), size());
  const int nl = n_lines();
  for (int l = 0; l < nl; ++l) {
    M.block(l * block, l * block, block, block) = D[l].dense();
    if (l + 1 < nl) {
      M.block(l * block, (l + 1) * block, block, block) =
          cpl[l].asDiagonal();
      M.block((l + 1) * block, l * block, block, block) =
          cpl[l].asDiagonal();
    }
  }
  return M;
}

void LineOperator::dump_triplets(std::ostream& os) const {
  os.precision(17);
  const int nl = n_lines();
  auto emit = [&os](Eigen::Index r, Eigen::Index c, Complex v) {
    if (v != Complex(0.0, 0.0))
      os << r << " " << c << " " << v.real() << " " << v.imag() << "\n";
  };
  for (int l = 0; l < nl; ++l) {
    for (int m = 0; m < block; ++m) {
      const Eigen::Index r = dof(l, m);
      emit(r, r, D[l].diag(m));
      if (m + 1 < block) {
        emit(r, r + 1, D[l].off(m));
        emit(r + 1, r, D[l].off(m));
      }
      if (l + 1 < nl) {
        emit(r, dof(l + 1, m), cpl[l](m));
        emit(dof(l + 1, m), r, cpl[l](m));
      }
    }
  }
}

Vector zero_rhs(const LineOperator& op) { return Vector::Zero(op.size()); }

Vector random_rhs(const LineOperator& op, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Vector f = Vector::Zero(op.size());
  for (int i = 1; i <= op.nx; ++i) {
    const int l = op.line_of_interior(i);
    for (int j = 1; j <= op.ny; ++j) {
      const double re = dist(gen);
      const double im = dist(gen);
      f(op.dof(l, op.row_of_interior(j))) = Complex(re, im);
    }
  }
  return f;
}

Vector point_rhs(const LineOperator& op, int i, int j) {
  if (i < 1 || i > op.nx || j < 1 || j > op.ny)
    throw ConfigError("point_rhs: source outside the interior grid");
  Vector f = Vector::Zero(op.size());
  f(op.dof(op.line_of_interior(i), op.row_of_interior(j))) = Complex(1.0, 0.0);
  return f;
}

}  // namespace helmsweep
