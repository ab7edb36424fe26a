#include "nlsplane/fourier_field.hpp"

#include <cmath>

#include "nlsplane/errors.hpp"

namespace nlsplane {

FourierField::FourierField(GridSpec grid)
    : grid_(std::move(grid)), coeffs_(grid_.size(), Complex{}) {}

FourierField::FourierField(GridSpec grid, std::vector<Complex> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size())
    throw InvalidArgument("coefficient array length must equal (2K+1)^d");
}

Complex FourierField::at(const Mode& j) const {
  return grid_.contains(j) ? coeffs_[grid_.index_of(j)] : Complex{};
}

void FourierField::set(const Mode& j, Complex value) {
  if (!grid_.contains(j)) throw InvalidArgument("mode is outside the lattice");
  coeffs_[grid_.index_of(j)] = value;
}

bool FourierField::all_finite() const {
  for (const auto& c : coeffs_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

double FourierField::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

FourierField& FourierField::operator+=(const FourierField& other) {
  if (!(grid_ == other.grid_)) throw InvalidArgument("grid mismatch in +=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

FourierField& FourierField::operator-=(const FourierField& other) {
  if (!(grid_ == other.grid_)) throw InvalidArgument("grid mismatch in -=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

FourierField& FourierField::operator*=(Complex c) {
  for (auto& v : coeffs_) v *= c;
  return *this;
}

FourierField operator+(FourierField a, const FourierField& b) { return a += b; }
FourierField operator-(FourierField a, const FourierField& b) { return a -= b; }
FourierField operator*(Complex c, FourierField a) { return a *= c; }

double max_abs_diff(const FourierField& a, const FourierField& b) {
  if (!(a.grid() == b.grid())) throw InvalidArgument("grid mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace nlsplane
