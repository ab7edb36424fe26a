#pragma once

#include <memory>
#include <span>

#include "nlsplane/fourier_field.hpp"

namespace nlsplane {

// Padded pseudospectral grid: G^d equispaced points x_n = 2 pi n / G on the
// torus. Coefficients are placed by their offset j - center, so point values
// are those of e^{-i center.x} u(x); moduli, and therefore every gauge
// invariant nonlinearity, do not depend on the lattice center.
//
// One instance owns one scratch buffer and is not safe for concurrent use;
// use `thread_collocation` for a per-thread instance.
class CollocationTransform {
 public:
  explicit CollocationTransform(const GridSpec& grid);
  ~CollocationTransform();
  CollocationTransform(const CollocationTransform&) = delete;
  CollocationTransform& operator=(const CollocationTransform&) = delete;

  const GridSpec& grid() const noexcept { return grid_; }

  // Synthesizes the point values of the coefficient array into points().
  void to_points(std::span<const Complex> coeffs);
  // Analyzes points() and writes the retained coefficients (the buffer is
  // overwritten).
  void to_coeffs(std::span<Complex> coeffs);

  std::span<Complex> points() noexcept;
  std::span<const Complex> points() const noexcept;

 private:
  struct Plans;
  GridSpec grid_;
  std::unique_ptr<Plans> plans_;
};

// Per-thread cached transform for the shape (d, K, G) of `grid`.
CollocationTransform& thread_collocation(const GridSpec& grid);

}  // namespace nlsplane
