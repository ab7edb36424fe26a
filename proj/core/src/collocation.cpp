#include "nlsplane/collocation.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "nlsplane/errors.hpp"

namespace nlsplane {

namespace {

// The FFTW planner is not reentrant; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct CollocationTransform::Plans {
  fftw_complex* buffer = nullptr;
  std::size_t points = 0;
  fftw_plan synth = nullptr;
  fftw_plan analyze = nullptr;
  std::vector<std::size_t> point_of_coeff;
  double count = 1.0;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (synth) fftw_destroy_plan(synth);
    if (analyze) fftw_destroy_plan(analyze);
    if (buffer) fftw_free(buffer);
  }
};

CollocationTransform::CollocationTransform(const GridSpec& grid)
    : grid_(grid), plans_(std::make_unique<Plans>()) {
  const int d = grid.dim();
  const int g = grid.collocation();
  plans_->points = grid.collocation_points();
  plans_->count = static_cast<double>(plans_->points);

  std::vector<int> dims(static_cast<std::size_t>(d), g);
  {
    std::lock_guard lock(planner_mutex());
    plans_->buffer = fftw_alloc_complex(plans_->points);
    if (!plans_->buffer) throw Error("fftw_alloc_complex failed");
    plans_->synth = fftw_plan_dft(d, dims.data(), plans_->buffer, plans_->buffer,
                                  FFTW_BACKWARD, FFTW_ESTIMATE);
    plans_->analyze = fftw_plan_dft(d, dims.data(), plans_->buffer,
                                    plans_->buffer, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  if (!plans_->synth || !plans_->analyze) throw Error("FFTW planning failed");

  plans_->point_of_coeff.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Mode k = grid.offset(i);
    std::size_t p = 0;
    for (int a = 0; a < d; ++a) {
      const int wrapped = ((k[a] % g) + g) % g;
      p = p * static_cast<std::size_t>(g) + static_cast<std::size_t>(wrapped);
    }
    plans_->point_of_coeff[i] = p;
  }
}

CollocationTransform::~CollocationTransform() = default;

std::span<Complex> CollocationTransform::points() noexcept {
  return {reinterpret_cast<Complex*>(plans_->buffer), plans_->points};
}

std::span<const Complex> CollocationTransform::points() const noexcept {
  return {reinterpret_cast<const Complex*>(plans_->buffer), plans_->points};
}

void CollocationTransform::to_points(std::span<const Complex> coeffs) {
  if (coeffs.size() != grid_.size())
    throw InvalidArgument("coefficient array does not match the transform grid");
  auto pts = points();
  std::fill(pts.begin(), pts.end(), Complex{});
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    pts[plans_->point_of_coeff[i]] = coeffs[i];
  fftw_execute(plans_->synth);
}

void CollocationTransform::to_coeffs(std::span<Complex> coeffs) {
  if (coeffs.size() != grid_.size())
    throw InvalidArgument("coefficient array does not match the transform grid");
  fftw_execute(plans_->analyze);
  const auto pts = points();
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    coeffs[i] = pts[plans_->point_of_coeff[i]] / plans_->count;
}

CollocationTransform& thread_collocation(const GridSpec& grid) {
  using Key = std::tuple<int, int, int>;
  thread_local std::map<Key, std::unique_ptr<CollocationTransform>> cache;
  const Key key{grid.dim(), grid.cutoff(), grid.collocation()};
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<CollocationTransform>(
                                grid.recentered(kZeroMode)))
             .first;
  return *it->second;
}

}  // namespace nlsplane
