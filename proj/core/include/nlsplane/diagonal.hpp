#pragma once

#include <array>
#include <vector>

#include "nlsplane/fourier_field.hpp"

namespace nlsplane {

using Mat2 = std::array<std::array<double, 2>, 2>;

// Omega_n = sqrt(n^2 + 2 n lambda rho^2); UnstableRegime when not positive.
double omega(long long n, double rho, double lambda);

// Omega_n - (n + lambda s - s^2 / (2 (n + lambda s))), s = rho^2, through
// the cancellation-free form -s^4 / (2 (n + lambda s) (Omega_n + n + lambda s)^2).
double omega_asymptotic_remainder(long long n, double rho, double lambda);

// Per-shell symplectic diagonalizer: S^{-1} A_n S = diag(Omega, -Omega) with
// A_n = [[n + l r^2, l r^2], [-l r^2, -n - l r^2]].
struct ShellTransform {
  long long n = 0;
  double omega = 0.0;
  Mat2 s{};
  Mat2 s_inv{};
};

ShellTransform build_shell_transform(long long n, double rho, double lambda);

Mat2 linearization_matrix(long long n, double rho, double lambda);

// max |(S^{-1} A S - diag(Omega, -Omega))_{ab}|.
double diagonalization_residual(const ShellTransform& t, double rho,
                                double lambda);
double condition_number(const Mat2& m);
double determinant(const Mat2& m);

// Cached shell transforms for n = 1..max_shell. Throws UnstableRegime if any
// Omega_n is not strictly positive.
class DiagonalFrame {
 public:
  DiagonalFrame(double rho, double lambda, long long max_shell);

  double rho() const noexcept { return rho_; }
  double lambda() const noexcept { return lambda_; }
  long long max_shell() const noexcept {
    return static_cast<long long>(shells_.size());
  }
  const ShellTransform& shell(long long n) const;

  // Extreme singular values of S_n over shells 1..max_shell (S_n is
  // symmetric positive definite, so these are its eigenvalues).
  double min_singular_value() const noexcept { return sigma_min_; }
  double max_singular_value() const noexcept { return sigma_max_; }
  double max_condition() const noexcept { return cond_max_; }

 private:
  double rho_;
  double lambda_;
  std::vector<ShellTransform> shells_;
  double sigma_min_ = 1.0;
  double sigma_max_ = 1.0;
  double cond_max_ = 1.0;
};

// (xi_j, conj xi_{-j}) = S_n^{-1} (w_j, conj w_{-j}), n = |j|^2, processed
// once per pair {j, -j} from its lexicographically smaller member. The
// lattice must be centered at 0.
FourierField to_normal_coords(const FourierField& w, const DiagonalFrame& frame);
FourierField from_normal_coords(const FourierField& xi,
                                const DiagonalFrame& frame);

}  // namespace nlsplane
