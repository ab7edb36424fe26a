#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nlsplane {

// One frequency combination |Omega_{m1}+...+Omega_{mp} - Omega_{n1}-...-Omega_{nq}|
// over shells, with m and n sorted nondecreasing.
struct DivisorRecord {
  std::vector<int> m;
  std::vector<int> n;
  double value = 0.0;
  int mu3 = 1;
  bool cancels_pairwise = false;
};

struct ScanBox {
  double rho = 1.0;
  double lambda = 1.0;
  int max_order = 3;     // r: p + q <= r, p, q >= 1
  int shell_cutoff = 20;
  // When > 0, only shells that are sums of this many squares are scanned.
  int realizable_dim = 0;
};

// Third largest of the combined shells; 1 when there are only two.
int third_largest(const std::vector<int>& m, const std::vector<int>& n);

// True iff the two sorted multisets coincide.
bool cancels_pairwise(const std::vector<int>& m, const std::vector<int>& n);

// Shells in [1, cutoff] that are sums of `dim` squares (all shells if dim <= 0).
std::vector<int> admissible_shells(int cutoff, int dim);

// Exhaustive enumeration, each unordered pair {(m,n), (n,m)} once: p > q, or
// p == q with m <= n lexicographically. Throws UnstableRegime.
void scan_divisors(const ScanBox& box,
                   const std::function<void(const DivisorRecord&)>& visit);
std::vector<DivisorRecord> collect_divisors(const ScanBox& box);

// Number of records scan_divisors emits when every shell in [1, cutoff] is
// admissible.
std::size_t divisor_record_count(int max_order, int shell_cutoff);

struct ResonanceCertificate {
  double rho = 0.0;
  double lambda = 1.0;
  int max_order = 0;
  int shell_cutoff = 0;
  double alpha = 0.0;
  double gamma_hat = 0.0;
  DivisorRecord worst;
  std::size_t records = 0;
};

// gamma_hat = min over non-cancelling records of value * mu3^alpha. The
// leading shell of m partitions the work over `threads` workers; the result
// does not depend on the schedule. Throws ExactResonance when a non-cancelling
// value falls below 1e-14, UnstableRegime when 1 + 2 lambda rho^2 <= 0.
ResonanceCertificate certify(const ScanBox& box, double alpha,
                             unsigned threads = 1);

// Smallest alpha with gamma_hat(alpha) >= gamma_floor over the box; nullopt
// if a record with mu3 == 1 is already below the floor.
std::optional<double> fit_alpha(const ScanBox& box, double gamma_floor);

struct RhoScanRow {
  double rho = 0.0;
  bool pass = false;
  std::optional<ResonanceCertificate> certificate;
  std::string reason;
};

struct RhoScanTable {
  std::vector<RhoScanRow> rows;
  double gamma_floor = 0.0;
  double pass_fraction = 0.0;
};

// Marks rho as passing iff gamma_hat >= gamma_floor; failures of certify are
// recorded as failing rows with a reason.
RhoScanTable rho_grid_scan(const std::vector<double>& rho_values, double lambda,
                           int max_order, int shell_cutoff, double alpha,
                           double gamma_floor, unsigned threads = 1);

// Root of Omega_{m1}+... - Omega_{n1}-... as a function of rho in [lo, hi]
// (bracketing required). Used to plant exact resonances.
double find_resonant_rho(const std::vector<int>& m, const std::vector<int>& n,
                         double lambda, double lo, double hi);

}  // namespace nlsplane
