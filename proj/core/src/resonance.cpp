#include "nlsplane/resonance.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include <boost/math/tools/roots.hpp>

#include "nlsplane/diagonal.hpp"
#include "nlsplane/errors.hpp"

namespace nlsplane {

int third_largest(const std::vector<int>& m, const std::vector<int>& n) {
  if (m.size() + n.size() < 3) return 1;
  std::vector<int> all(m);
  all.insert(all.end(), n.begin(), n.end());
  std::nth_element(all.begin(), all.begin() + 2, all.end(), std::greater<>());
  return all[2];
}

bool cancels_pairwise(const std::vector<int>& m, const std::vector<int>& n) {
  return m.size() == n.size() && std::is_permutation(m.begin(), m.end(), n.begin());
}

std::vector<int> admissible_shells(int cutoff, int dim) {
  std::vector<int> out;
  if (dim <= 0) {
    for (int s = 1; s <= cutoff; ++s) out.push_back(s);
    return out;
  }
  std::vector<bool> hit(static_cast<std::size_t>(std::max(cutoff, 0)) + 1, false);
  const int r = static_cast<int>(std::sqrt(static_cast<double>(cutoff))) + 1;
  // Sums of `dim` squares with nonnegative components (signs do not matter).
  std::vector<int> x(static_cast<std::size_t>(dim), 0);
  while (true) {
    long long s = 0;
    for (int v : x) s += static_cast<long long>(v) * v;
    if (s >= 1 && s <= cutoff) hit[static_cast<std::size_t>(s)] = true;
    int i = 0;
    while (i < dim && ++x[static_cast<std::size_t>(i)] > r) x[static_cast<std::size_t>(i++)] = 0;
    if (i == dim) break;
  }
  for (int s = 1; s <= cutoff; ++s)
    if (hit[static_cast<std::size_t>(s)]) out.push_back(s);
  return out;
}

namespace {

void check_box(const ScanBox& box) {
  if (!(box.rho > 0.0)) throw InvalidArgument("rho must be > 0");
  if (box.max_order < 2) throw InvalidArgument("max order r must be >= 2");
  if (box.shell_cutoff < 1) throw InvalidArgument("shell cutoff must be >= 1");
  if (!(1.0 + 2.0 * box.lambda * box.rho * box.rho > 0.0))
    throw UnstableRegime("1 + 2 lambda rho^2 <= 0: frequencies are not all real");
}

struct Enumerator {
  std::vector<int> shells;
  std::vector<double> freq;  // Omega of shells[i]
  int max_order = 2;

  Enumerator(const ScanBox& box)
      : shells(admissible_shells(box.shell_cutoff, box.realizable_dim)),
        max_order(box.max_order) {
    freq.reserve(shells.size());
    for (int s : shells) freq.push_back(omega(s, box.rho, box.lambda));
  }

  // Visits every representative record whose m starts at shells[lead]
  // (all leads when lead < 0).
  template <class F>
  void run(long lead, F&& visit) const {
    DivisorRecord rec;
    std::vector<std::size_t> mi, ni;
    for (int p = 1; p < max_order; ++p) {
      for (int q = 1; q <= p && p + q <= max_order; ++q) {
        mi.clear();
        grow_m(p, q, lead, mi, ni, rec, visit);
      }
    }
  }

  template <class F>
  void grow_m(int p, int q, long lead, std::vector<std::size_t>& mi,
              std::vector<std::size_t>& ni, DivisorRecord& rec, F& visit) const {
    if (static_cast<int>(mi.size()) == p) {
      ni.clear();
      grow_n(p, q, mi, ni, rec, visit);
      return;
    }
    std::size_t from = mi.empty() ? 0 : mi.back();
    std::size_t to = shells.size();
    if (mi.empty() && lead >= 0) {
      from = static_cast<std::size_t>(lead);
      to = from + 1;
    }
    for (std::size_t i = from; i < to; ++i) {
      mi.push_back(i);
      grow_m(p, q, lead, mi, ni, rec, visit);
      mi.pop_back();
    }
  }

  template <class F>
  void grow_n(int p, int q, const std::vector<std::size_t>& mi,
              std::vector<std::size_t>& ni, DivisorRecord& rec, F& visit) const {
    if (static_cast<int>(ni.size()) == q) {
      // p == q: keep (m, n) only with m <= n lexicographically.
      if (p == q && std::lexicographical_compare(ni.begin(), ni.end(), mi.begin(),
                                                 mi.end()))
        return;
      rec.m.clear();
      rec.n.clear();
      double plus = 0.0, minus = 0.0;
      for (auto i : mi) {
        rec.m.push_back(shells[i]);
        plus += freq[i];
      }
      for (auto i : ni) {
        rec.n.push_back(shells[i]);
        minus += freq[i];
      }
      rec.value = std::abs(plus - minus);
      rec.mu3 = third_largest(rec.m, rec.n);
      rec.cancels_pairwise = (p == q) && mi == ni;
      visit(static_cast<const DivisorRecord&>(rec));
      return;
    }
    const std::size_t from = ni.empty() ? 0 : ni.back();
    for (std::size_t i = from; i < shells.size(); ++i) {
      ni.push_back(i);
      grow_n(p, q, mi, ni, rec, visit);
      ni.pop_back();
    }
  }
};

double binomial(long long n, long long k) {
  double r = 1.0;
  for (long long i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / i;
  return r;
}

// Orders records by (p+q, p, m, n) so min-reductions break ties the same way
// whatever the work split.
bool record_before(const DivisorRecord& a, const DivisorRecord& b) {
  const auto da = a.m.size() + a.n.size(), db = b.m.size() + b.n.size();
  if (da != db) return da < db;
  if (a.m.size() != b.m.size()) return a.m.size() > b.m.size();
  if (a.m != b.m) return a.m < b.m;
  return a.n < b.n;
}

struct Partial {
  bool have = false;
  double weighted = std::numeric_limits<double>::infinity();
  DivisorRecord worst;
  bool have_tiny = false;
  DivisorRecord tiny;
  std::size_t records = 0;
};

constexpr double kExactResonance = 1e-14;

}  // namespace

void scan_divisors(const ScanBox& box,
                   const std::function<void(const DivisorRecord&)>& visit) {
  check_box(box);
  Enumerator(box).run(-1, visit);
}

std::vector<DivisorRecord> collect_divisors(const ScanBox& box) {
  std::vector<DivisorRecord> out;
  scan_divisors(box, [&](const DivisorRecord& r) { out.push_back(r); });
  return out;
}

std::size_t divisor_record_count(int max_order, int shell_cutoff) {
  double total = 0.0;
  for (int p = 1; p < max_order; ++p) {
    for (int q = 1; q <= p && p + q <= max_order; ++q) {
      const double mp = binomial(shell_cutoff + p - 1, p);
      const double mq = binomial(shell_cutoff + q - 1, q);
      total += (p == q) ? mp * (mp + 1.0) / 2.0 : mp * mq;
    }
  }
  return static_cast<std::size_t>(std::llround(total));
}

ResonanceCertificate certify(const ScanBox& box, double alpha, unsigned threads) {
  check_box(box);
  if (!(alpha >= 0.0)) throw InvalidArgument("alpha must be >= 0");
  const Enumerator en(box);
  const long leads = static_cast<long>(en.shells.size());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(leads)));

  std::vector<Partial> partials(threads);
  std::atomic<long> next{0};
  auto work = [&](Partial& part) {
    for (long lead = next++; lead < leads; lead = next++) {
      en.run(lead, [&](const DivisorRecord& r) {
        ++part.records;
        if (r.cancels_pairwise) return;
        const double wv = r.value * std::pow(static_cast<double>(r.mu3), alpha);
        if (!part.have || wv < part.weighted ||
            (wv == part.weighted && record_before(r, part.worst))) {
          part.have = true;
          part.weighted = wv;
          part.worst = r;
        }
        if (r.value < kExactResonance &&
            (!part.have_tiny || record_before(r, part.tiny))) {
          part.have_tiny = true;
          part.tiny = r;
        }
      });
    }
  };
  if (threads == 1) {
    work(partials[0]);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] { work(partials[t]); });
  }

  Partial total;
  for (const auto& part : partials) {
    total.records += part.records;
    if (part.have && (!total.have || part.weighted < total.weighted ||
                      (part.weighted == total.weighted &&
                       record_before(part.worst, total.worst)))) {
      total.have = true;
      total.weighted = part.weighted;
      total.worst = part.worst;
    }
    if (part.have_tiny && (!total.have_tiny || record_before(part.tiny, total.tiny))) {
      total.have_tiny = true;
      total.tiny = part.tiny;
    }
  }

  if (total.have_tiny) {
    auto join = [](const std::vector<int>& v) {
      std::string s;
      for (int x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
      return s;
    };
    throw ExactResonance("non-cancelling divisor below 1e-14 for m = (" +
                         join(total.tiny.m) + "), n = (" + join(total.tiny.n) + ")");
  }

  ResonanceCertificate cert;
  cert.rho = box.rho;
  cert.lambda = box.lambda;
  cert.max_order = box.max_order;
  cert.shell_cutoff = box.shell_cutoff;
  cert.alpha = alpha;
  cert.records = total.records;
  if (total.have) {
    cert.gamma_hat = total.weighted;
    cert.worst = total.worst;
  } else {
    cert.gamma_hat = std::numeric_limits<double>::infinity();
  }
  return cert;
}

std::optional<double> fit_alpha(const ScanBox& box, double gamma_floor) {
  if (!(gamma_floor > 0.0)) throw InvalidArgument("gamma floor must be > 0");
  double alpha = 0.0;
  bool feasible = true;
  scan_divisors(box, [&](const DivisorRecord& r) {
    if (r.cancels_pairwise || r.value >= gamma_floor) return;
    if (r.mu3 <= 1 || r.value <= 0.0) {
      feasible = false;
      return;
    }
    alpha = std::max(alpha, std::log(gamma_floor / r.value) /
                                std::log(static_cast<double>(r.mu3)));
  });
  if (!feasible) return std::nullopt;
  return alpha;
}

RhoScanTable rho_grid_scan(const std::vector<double>& rho_values, double lambda,
                           int max_order, int shell_cutoff, double alpha,
                           double gamma_floor, unsigned threads) {
  RhoScanTable table;
  table.gamma_floor = gamma_floor;
  std::size_t passed = 0;
  for (double rho : rho_values) {
    RhoScanRow row;
    row.rho = rho;
    try {
      ScanBox box{rho, lambda, max_order, shell_cutoff, 0};
      row.certificate = certify(box, alpha, threads);
      row.pass = row.certificate->gamma_hat >= gamma_floor;
      if (!row.pass) row.reason = "gamma_hat below floor";
    } catch (const Error& e) {
      row.pass = false;
      row.reason = e.what();
    }
    passed += row.pass ? 1 : 0;
    table.rows.push_back(std::move(row));
  }
  table.pass_fraction = rho_values.empty()
                            ? 0.0
                            : static_cast<double>(passed) /
                                  static_cast<double>(rho_values.size());
  return table;
}

double find_resonant_rho(const std::vector<int>& m, const std::vector<int>& n,
                         double lambda, double lo, double hi) {
  auto f = [&](double rho) {
    double v = 0.0;
    for (int s : m) v += omega(s, rho, lambda);
    for (int s : n) v -= omega(s, rho, lambda);
    return v;
  };
  const double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw InvalidArgument("resonance root is not bracketed by [lo, hi]");
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(), iters);
  return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
}

}  // namespace nlsplane
