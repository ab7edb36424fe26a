#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>

namespace nlsplane {

inline constexpr int kMaxDim = 3;

// Lattice point of Z^d. Components past the grid dimension are kept at zero,
// so two modes compare equal iff they are the same lattice point.
using Mode = std::array<int, kMaxDim>;

inline constexpr Mode kZeroMode{0, 0, 0};

inline long long norm_sq(const Mode& j) {
  long long s = 0;
  for (int v : j) s += static_cast<long long>(v) * v;
  return s;
}

inline long long dot(const Mode& a, const Mode& b) {
  long long s = 0;
  for (int i = 0; i < kMaxDim; ++i) s += static_cast<long long>(a[i]) * b[i];
  return s;
}

inline Mode operator+(const Mode& a, const Mode& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Mode operator-(const Mode& a, const Mode& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Mode operator-(const Mode& a) { return {-a[0], -a[1], -a[2]}; }

std::string to_string(const Mode& j, int dim);

// Truncated lattice {j : |j - center|_inf <= K} in dimension d, together with
// the per-axis collocation size G used for nonlinear products. G >= 4K+1 makes
// every cubic (and quartic mean) product exact on the retained modes.
class GridSpec {
 public:
  GridSpec(int dim, int cutoff, Mode center = kZeroMode, int collocation = 0);

  int dim() const noexcept { return dim_; }
  int cutoff() const noexcept { return cutoff_; }
  int collocation() const noexcept { return collocation_; }
  const Mode& center() const noexcept { return center_; }

  // Modes per axis, 2K+1.
  int width() const noexcept { return 2 * cutoff_ + 1; }
  std::size_t size() const noexcept { return size_; }
  std::size_t collocation_points() const noexcept { return points_; }

  // Offset k = j - center of the flat index, |k_i| <= K.
  Mode offset(std::size_t index) const;
  Mode mode(std::size_t index) const { return center_ + offset(index); }

  bool contains_offset(const Mode& k) const;
  bool contains(const Mode& j) const { return contains_offset(j - center_); }

  std::size_t index_of_offset(const Mode& k) const;
  std::size_t index_of(const Mode& j) const { return index_of_offset(j - center_); }

  // Same lattice shape around another center.
  GridSpec recentered(const Mode& center) const;

  // Largest shell |j|^2 present on the lattice.
  long long max_shell() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int dim_;
  int cutoff_;
  Mode center_;
  int collocation_;
  std::size_t size_;
  std::size_t points_;
};

// Smallest n >= min_size whose only prime factors are 2, 3, 5 and 7.
int smooth_transform_size(int min_size);

}  // namespace nlsplane
