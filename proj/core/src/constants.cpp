#include "polyapprox/constants.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "polyapprox/errors.hpp"
#include "polyapprox/measures.hpp"

namespace polyapprox {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

long double lgam(long double x) { return std::lgamma(x); }

void check_nj(int n, int j) {
  if (n < 2) fail(ErrorCode::DomainError, "need n >= 2");
  if (j < 1 || j > n) fail(ErrorCode::DomainError, "need 1 <= j <= n");
}

// log Gamma(j+1+2/(n-1)) / Gamma(j+1)
double log_gamma_ratio(int n, int j) {
  const long double e = 2.0L / (n - 1);
  return static_cast<double>(lgam(j + 1 + e) - lgam(j + 1.0L));
}

double log_v1_ball(int n) { return std::log(double(n)) + log_ball_volume(n) - log_ball_volume(n - 1); }

double log_surface(int n) { return std::log(double(n)) + log_ball_volume(n); }

// log of j V_j(D_n) / |D_n| = log j + log C(n,j) - log |D_{n-j}|
double log_jvj_over_dn(int n, int j) {
  const double log_binom = static_cast<double>(lgam(n + 1.0L) - lgam(j + 1.0L) - lgam(n - j + 1.0L));
  return std::log(double(j)) + log_binom - log_ball_volume(n - j);
}

// Collects the worst case over j for each (name, n).
class Recorder {
 public:
  void check(const std::string& name, int n, int j, double lhs, double rhs, bool log_scale) {
    const double margin = rhs - lhs;
    auto [it, inserted] = current_.try_emplace(name);
    InequalityRecord& r = it->second;
    if (inserted || margin < r.margin) {
      r.name = name;
      r.n = n;
      r.worst_j = j;
      r.lhs = lhs;
      r.rhs = rhs;
      r.margin = margin;
      r.log_scale = log_scale;
      r.pass = margin >= -kInequalitySlack;
    }
  }
  void identity(const std::string& name, int n, int j, double a, double b, double rel) {
    const double diff = std::abs(a - b);
    check(name, n, j, diff, rel * std::max(1.0, std::abs(a)), false);
  }
  void flush(std::vector<InequalityRecord>& out) {
    for (auto& [_, r] : current_) out.push_back(r);
    current_.clear();
  }

 private:
  std::map<std::string, InequalityRecord> current_;
};

void check_gamma_general(Recorder& rec, int n) {
  for (double x : {n / 2.0, double(n)}) {
    if (x < 1.0) continue;
    const double stirling = 0.5 * std::log(2 * kPi * x) + x * (std::log(x) - 1.0);
    const double lg = static_cast<double>(lgam(x + 1.0L));
    rec.check("gamma_general.lower", n, 0, stirling, lg, true);
    rec.check("gamma_general.upper", n, 0, lg, stirling + 1.0 / (12 * x), true);
    rec.check("gamma_general.upper_linear", n, 0, stirling + 1.0 / (12 * x), stirling + std::log1p(1.0 / x), true);
  }
}

void check_ball_bounds(Recorder& rec, int n) {
  const double base = -0.5 * std::log(kPi * n) + 0.5 * n * std::log(2 * kPi * kE / n);
  const double lv = log_ball_volume(n);
  rec.check("vol_Dn.lower", n, 0, base + std::log1p(-1.0 / n), lv, true);
  rec.check("vol_Dn.upper", n, 0, lv, base, true);

  const double v1 = std::exp(log_v1_ball(n));
  const double s = std::sqrt(2 * kPi * n);
  rec.check("vol_Dn_and_partial_Dn.lower", n, 0, s * (1.0 - 1.0 / n), v1, false);
  rec.check("vol_Dn_and_partial_Dn.upper", n, 0, v1, s, false);

  const double p = std::exp(2.0 / (n - 1) * log_surface(n));
  const double c = 2 * kPi * kE / n;
  const double mid = c * std::pow(2 * kE, 1.0 / (n - 1));
  rec.check("partial_Dn.lower", n, 0, c, p, false);
  rec.check("partial_Dn.middle", n, 0, p, mid, false);
  rec.check("partial_Dn.upper", n, 0, mid, c * (1.0 + 8.0 / n), false);

  const double g = std::exp(static_cast<double>(lgam(1.0L + 2.0L / (n - 1))));
  rec.check("gamma_small.lower", n, 0, 1.0 - 2.0 / n, g, false);
  rec.check("gamma_small.upper", n, 0, g, 1.0 + 2.0 / n, false);
}

void check_alpha_family(Recorder& rec, int n) {
  const double ln = std::log(double(n));
  const double lg_small = static_cast<double>(lgam(1.0L + 2.0L / (n - 1)));
  const double log_ann = log_alpha(n, n);
  double harmonic = 0.0;
  long double log_prod = 0.0L;
  for (int j = 1; j <= n; ++j) {
    harmonic += 1.0 / j;
    log_prod += std::log1p(2.0L / (static_cast<long double>(j) * (n - 1)));
    const double lr = log_gamma_ratio(n, j);
    const double ratio = std::exp(lr);

    rec.identity("increasing_est.identity", n, j, lr, lg_small + static_cast<double>(log_prod), 1e-12);
    rec.check("increasing_est.upper", n, j, lr, std::log1p(2.0 / n) + 2.0 / (n - 1) * harmonic, true);

    rec.check("j_n_estimate.lower", n, j, 1.0, ratio, false);
    rec.check("j_n_estimate.upper", n, j, ratio, 1.0 + 25.0 * std::log(j + 1.0) / n, false);

    const double a = alpha(n, j);
    rec.check("alpha_estimate.lower", n, j, 1.0 + ln / n - 2.0 / n, a, false);
    rec.check("alpha_estimate.upper", n, j, a, 1.0 + 120.0 * ln / n, false);
    if (n >= 4) rec.check("alpha_estimate.at_least_one", n, j, 1.0, a, false);

    if (j <= n - 1) {
      const double rel = std::exp(log_ann - log_alpha(n, j));
      rec.check("alpha_rel_est.lower", n, j, 1.0 + 2.0 / (double(n) * n), rel, false);
      rec.check("alpha_rel_est.upper", n, j, rel, 1.0 + std::min(1.0 / j, 3.0 * ln / n), false);
      rec.check("alpha_rel_est.increasing", n, j, log_alpha(n, j), log_alpha(n, j + 1), true);
    }

    const double lb = log_beta(n, j);
    const double pref = log_jvj_over_dn(n, j) - std::log(4 * kPi * kE);
    rec.check("beta_estimate.lower", n, j, pref + std::log1p(14.0 * ln / n), lb, true);
    rec.check("beta_estimate.upper", n, j, lb, pref + std::log1p(120.0 * ln / n), true);
  }
  if (n >= 10) rec.check("j_n_estimate.n_ge_10", n, n, std::exp(log_gamma_ratio(n, n)), 1.0 + 4.0 * ln / n, false);
  rec.identity("beta_nn_closed_form", n, n, log_beta(n, n), std::log(beta_nn_closed_form(n)), 1e-12);
}

void check_del(Recorder& rec, int n) {
  const double ln = std::log(double(n));
  const double c = n / (2 * kPi * kE);
  // Mankiewicz-Schutt band, which the stated estimate is derived from.
  const double ms_lo = (n - 1.0) / (n + 1.0) * std::exp(-2.0 / (n - 1) * log_ball_volume(n - 1));
  const double ms_hi = ms_lo * std::exp(log_gamma_ratio(n, n));
  rec.check("del_estim.lower", n, 0, c * (1.0 + ln / n - 2.0 / n), ms_lo, false);
  rec.check("del_estim.upper", n, 0, ms_hi, c * (1.0 + 25.0 * ln / n), false);
  if (n >= 10) {
    rec.check("del_estim.n_ge_10.lower", n, 0, c * (1.0 + ln / (8.0 * n)), ms_lo, false);
    rec.check("del_estim.n_ge_10.upper", n, 0, ms_hi, c * (1.0 + 4.0 * ln / n), false);
  }
  const TilingNumbers t = tiling_numbers(n);
  if (t.known) {
    const double del = t.del.lo;
    rec.check("del_estim.known.lower", n, 0, c * (1.0 + ln / n - 2.0 / n), del, false);
    rec.check("del_estim.known.upper", n, 0, del, c * (1.0 + 25.0 * ln / n), false);
    rec.check("del_estim.known.ms_band_lower", n, 0, ms_lo, del, false);
    rec.check("del_estim.known.ms_band_upper", n, 0, del, ms_hi, false);
    rec.check("del_div_ineq", n, 0, t.div.lo, del, false);
  }
}

}  // namespace

double log_alpha(int n, int j) {
  check_nj(n, j);
  return std::log1p(-2.0 / (n + 1)) + 2.0 / (n - 1) * log_v1_ball(n) + log_gamma_ratio(n, j);
}

double alpha(int n, int j) { return std::exp(log_alpha(n, j)); }

double log_beta(int n, int j) {
  check_nj(n, j);
  return log_alpha(n, j) + log_jvj_over_dn(n, j) - std::log(2.0 * n) - 2.0 / (n - 1) * log_surface(n);
}

double beta(int n, int j) { return std::exp(log_beta(n, j)); }

double beta_nn_closed_form(int n) {
  check_nj(n, n);
  return 0.5 * (1.0 - 2.0 / (n + 1)) * std::exp(-2.0 / (n - 1) * log_ball_volume(n - 1) + log_gamma_ratio(n, n));
}

double random_inscribed_limit(int n, int j) { return 0.5 * j * ball_intrinsic_volume(n, j) * alpha(n, j); }

TilingNumbers tiling_numbers(int n) {
  if (n < 2) fail(ErrorCode::DomainError, "need n >= 2");
  auto point = [](double v) { return Interval{v, v}; };
  TilingNumbers t;
  t.n = n;
  const double s3 = std::sqrt(3.0);
  if (n == 2) {
    t.known = true;
    t.del = point(1.0 / 6);
    t.div = point(1.0 / 12);
    t.ldel = point(1.0 / 16);
    t.ldiv = point(1.0 / 16);
  } else if (n == 3) {
    t.known = true;
    t.del = point(1.0 / (2 * s3));
    t.div = point(5.0 / (18 * s3));
    t.ldel = point(1.0 / (6 * s3) - 1.0 / (8 * kPi));
    t.ldiv = point(5.0 / (18 * s3) - 1.0 / (4 * kPi));
  } else {
    const double lo = (n - 1.0) / (n + 1.0) * std::exp(-2.0 / (n - 1) * log_ball_volume(n - 1));
    t.del = {lo, lo * std::exp(log_gamma_ratio(n, n))};
    t.div = {0.0, t.del.hi};
    t.ldel = {0.0, std::numeric_limits<double>::infinity()};
    t.ldiv = {0.0, std::numeric_limits<double>::infinity()};
  }
  return t;
}

double what_hat(int n) {
  if (n < 2) fail(ErrorCode::DomainError, "need n >= 2");
  double s = 0.0;
  for (int j = 1; j <= n; ++j) s += j * ball_intrinsic_volume(n, j);
  return s;
}

double what_hat_product(int n) {
  if (n < 2) fail(ErrorCode::DomainError, "need n >= 2");
  double w = 0.0;
  for (int j = 0; j <= n - 1; ++j) w += ball_intrinsic_volume(n - 1, j);
  return ball_intrinsic_volume(n, 1) * w;
}

std::size_t InequalityReport::failures() const {
  std::size_t k = 0;
  for (const auto& r : records) k += r.pass ? 0 : 1;
  return k;
}

std::vector<std::string> InequalityReport::failing_names() const {
  std::vector<std::string> out;
  for (const auto& r : records)
    if (!r.pass) out.push_back(r.name + " n=" + std::to_string(r.n) + " j=" + std::to_string(r.worst_j));
  return out;
}

InequalityReport appendix_b_suite(int n_max) {
  if (n_max < 2 || n_max > 2000) fail(ErrorCode::DomainError, "need 2 <= n_max <= 2000");
  InequalityReport rep;
  rep.n_max = n_max;
  Recorder rec;
  for (int n = 2; n <= n_max; ++n) {
    check_gamma_general(rec, n);
    check_ball_bounds(rec, n);
    check_alpha_family(rec, n);
    check_del(rec, n);
    rec.flush(rep.records);
  }
  return rep;
}

}  // namespace polyapprox
