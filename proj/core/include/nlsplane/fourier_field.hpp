#pragma once

#include <complex>
#include <span>
#include <vector>

#include "nlsplane/grid.hpp"

namespace nlsplane {

using Complex = std::complex<double>;

// Coefficients u_j of a trigonometric polynomial on the truncated lattice of
// `grid`, stored row-major over the offsets j - center.
class FourierField {
 public:
  explicit FourierField(GridSpec grid);
  FourierField(GridSpec grid, std::vector<Complex> coeffs);

  const GridSpec& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  std::span<Complex> coeffs() noexcept { return coeffs_; }

  Complex& operator[](std::size_t i) { return coeffs_[i]; }
  const Complex& operator[](std::size_t i) const { return coeffs_[i]; }

  // Coefficient at lattice point j; zero when j is not retained.
  Complex at(const Mode& j) const;
  void set(const Mode& j, Complex value);

  bool all_finite() const;
  double max_abs() const;

  FourierField& operator+=(const FourierField& other);
  FourierField& operator-=(const FourierField& other);
  FourierField& operator*=(Complex c);

 private:
  GridSpec grid_;
  std::vector<Complex> coeffs_;
};

FourierField operator+(FourierField a, const FourierField& b);
FourierField operator-(FourierField a, const FourierField& b);
FourierField operator*(Complex c, FourierField a);

// max_j |a_j - b_j| over a common grid.
double max_abs_diff(const FourierField& a, const FourierField& b);

}  // namespace nlsplane
