#include "nlsplane/grid.hpp"

#include <cstdlib>
#include <sstream>

#include "nlsplane/errors.hpp"

namespace nlsplane {

std::string to_string(const Mode& j, int dim) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < dim; ++i) {
    if (i) os << ',';
    os << j[i];
  }
  os << ')';
  return os.str();
}

int smooth_transform_size(int min_size) {
  for (int n = std::max(min_size, 1);; ++n) {
    int r = n;
    for (int p : {2, 3, 5, 7})
      while (r % p == 0) r /= p;
    if (r == 1) return n;
  }
}

GridSpec::GridSpec(int dim, int cutoff, Mode center, int collocation)
    : dim_(dim), cutoff_(cutoff), center_(center), collocation_(collocation) {
  if (dim < 1 || dim > kMaxDim)
    throw InvalidArgument("grid dimension must be 1, 2 or 3");
  if (cutoff < 0) throw InvalidArgument("mode cutoff K must be >= 0");
  for (int i = dim; i < kMaxDim; ++i) {
    if (center_[i] != 0)
      throw InvalidArgument("lattice center has components beyond the dimension");
  }
  const int min_g = 4 * cutoff + 1;
  if (collocation_ == 0) collocation_ = smooth_transform_size(min_g);
  if (collocation_ < min_g)
    throw InvalidArgument("collocation size G must satisfy G >= 4K+1");

  size_ = 1;
  points_ = 1;
  for (int i = 0; i < dim; ++i) {
    size_ *= static_cast<std::size_t>(width());
    points_ *= static_cast<std::size_t>(collocation_);
  }
}

Mode GridSpec::offset(std::size_t index) const {
  Mode k = kZeroMode;
  const auto w = static_cast<std::size_t>(width());
  for (int i = dim_ - 1; i >= 0; --i) {
    k[i] = static_cast<int>(index % w) - cutoff_;
    index /= w;
  }
  return k;
}

bool GridSpec::contains_offset(const Mode& k) const {
  for (int i = 0; i < kMaxDim; ++i) {
    if (i < dim_) {
      if (std::abs(k[i]) > cutoff_) return false;
    } else if (k[i] != 0) {
      return false;
    }
  }
  return true;
}

std::size_t GridSpec::index_of_offset(const Mode& k) const {
  std::size_t idx = 0;
  for (int i = 0; i < dim_; ++i)
    idx = idx * static_cast<std::size_t>(width()) +
          static_cast<std::size_t>(k[i] + cutoff_);
  return idx;
}

GridSpec GridSpec::recentered(const Mode& center) const {
  return GridSpec(dim_, cutoff_, center, collocation_);
}

long long GridSpec::max_shell() const {
  long long best = 0;
  for (std::size_t i = 0; i < size_; ++i) best = std::max(best, norm_sq(mode(i)));
  return best;
}

}  // namespace nlsplane
