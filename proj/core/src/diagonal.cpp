#include "nlsplane/diagonal.hpp"

#include <cmath>
#include <string>

#include "nlsplane/errors.hpp"

namespace nlsplane {

double omega(long long n, double rho, double lambda) {
  const double nn = static_cast<double>(n);
  const double sq = nn * nn + 2.0 * nn * lambda * rho * rho;
  if (!(sq > 0.0))
    throw UnstableRegime("Omega_" + std::to_string(n) +
                         " is not real and positive: n^2 + 2 n lambda rho^2 <= 0");
  return std::sqrt(sq);
}

double omega_asymptotic_remainder(long long n, double rho, double lambda) {
  const double sigma = rho * rho;
  const double shifted = static_cast<double>(n) + lambda * sigma;
  const double om = omega(n, rho, lambda);
  const double s2 = sigma * sigma;
  return -s2 * s2 / (2.0 * shifted * (om + shifted) * (om + shifted));
}

Mat2 linearization_matrix(long long n, double rho, double lambda) {
  const double ls = lambda * rho * rho;
  const double nn = static_cast<double>(n);
  return Mat2{{{nn + ls, ls}, {-ls, -nn - ls}}};
}

ShellTransform build_shell_transform(long long n, double rho, double lambda) {
  if (n < 1) throw InvalidArgument("shell index must be >= 1");
  const double ls = lambda * rho * rho;
  const double nn = static_cast<double>(n);
  const double om = omega(n, rho, lambda);
  const double denom = (om + nn) * (om + nn + 2.0 * ls);
  if (!(denom > 0.0))
    throw UnstableRegime("shell transform undefined for n = " + std::to_string(n));
  const double c = 1.0 / std::sqrt(denom);
  const double diag = c * (nn + ls + om);
  const double off = c * ls;
  ShellTransform t;
  t.n = n;
  t.omega = om;
  t.s = Mat2{{{diag, -off}, {-off, diag}}};
  t.s_inv = Mat2{{{diag, off}, {off, diag}}};
  return t;
}

namespace {

Mat2 mul(const Mat2& a, const Mat2& b) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

// Singular values of a real 2x2 matrix, larger first.
std::array<double, 2> singular_values(const Mat2& m) {
  const double fro = m[0][0] * m[0][0] + m[0][1] * m[0][1] + m[1][0] * m[1][0] +
                     m[1][1] * m[1][1];
  const double det = std::abs(determinant(m));
  const double disc = std::sqrt(std::max(0.0, fro * fro - 4.0 * det * det));
  const double big = std::sqrt(0.5 * (fro + disc));
  const double small = big > 0.0 ? det / big : 0.0;
  return {big, small};
}

}  // namespace

double determinant(const Mat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

double condition_number(const Mat2& m) {
  const auto sv = singular_values(m);
  return sv[1] > 0.0 ? sv[0] / sv[1] : INFINITY;
}

double diagonalization_residual(const ShellTransform& t, double rho,
                                double lambda) {
  const Mat2 d = mul(mul(t.s_inv, linearization_matrix(t.n, rho, lambda)), t.s);
  return std::max({std::abs(d[0][0] - t.omega), std::abs(d[0][1]),
                   std::abs(d[1][0]), std::abs(d[1][1] + t.omega)});
}

DiagonalFrame::DiagonalFrame(double rho, double lambda, long long max_shell)
    : rho_(rho), lambda_(lambda) {
  if (!(rho > 0.0)) throw InvalidArgument("rho must be > 0");
  shells_.reserve(static_cast<std::size_t>(std::max(0LL, max_shell)));
  sigma_min_ = INFINITY;
  sigma_max_ = 0.0;
  cond_max_ = 1.0;
  for (long long n = 1; n <= max_shell; ++n) {
    shells_.push_back(build_shell_transform(n, rho, lambda));
    const auto sv = singular_values(shells_.back().s);
    sigma_max_ = std::max(sigma_max_, sv[0]);
    sigma_min_ = std::min(sigma_min_, sv[1]);
    cond_max_ = std::max(cond_max_, sv[0] / sv[1]);
  }
  if (shells_.empty()) sigma_min_ = sigma_max_ = 1.0;
}

const ShellTransform& DiagonalFrame::shell(long long n) const {
  if (n < 1 || n > max_shell())
    throw InvalidArgument("shell " + std::to_string(n) +
                          " is not covered by the diagonal frame");
  return shells_[static_cast<std::size_t>(n - 1)];
}

namespace {

FourierField apply_pairwise(const FourierField& in, const DiagonalFrame& frame,
                            bool inverse) {
  const GridSpec& grid = in.grid();
  if (grid.center() != kZeroMode)
    throw InvalidArgument("normal coordinates need a lattice centered at 0");
  FourierField out(grid);
  for (std::size_t i = 0; i < in.size(); ++i) {
    const Mode j = grid.mode(i);
    const Mode mj = -j;
    if (!(j < mj)) continue;  // zero mode and the larger pair member
    const ShellTransform& t = frame.shell(norm_sq(j));
    const Mat2& m = inverse ? t.s_inv : t.s;
    const std::size_t k = grid.index_of(mj);
    const Complex a = in[i];
    const Complex b = std::conj(in[k]);
    out[i] = m[0][0] * a + m[0][1] * b;
    out[k] = std::conj(m[1][0] * a + m[1][1] * b);
  }
  return out;
}

}  // namespace

FourierField to_normal_coords(const FourierField& w, const DiagonalFrame& frame) {
  return apply_pairwise(w, frame, true);
}

FourierField from_normal_coords(const FourierField& xi,
                                const DiagonalFrame& frame) {
  return apply_pairwise(xi, frame, false);
}

}  // namespace nlsplane
