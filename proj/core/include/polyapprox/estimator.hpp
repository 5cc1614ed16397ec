#pragma once

#include <cmath>
#include <cstdint>

#include "polyapprox/linalg.hpp"
#include "polyapprox/parallel.hpp"
#include "polyapprox/rng.hpp"

namespace polyapprox {

struct EstimatorResult {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  static EstimatorResult exact(double v) { return {v, 0.0, 0, 0}; }
};

// Running mean / second central moment with an order-fixed merge.
struct RunningMoments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    count += 1.0;
    const double d = x - mean;
    mean += d / count;
    m2 += d * (x - mean);
  }

  void merge(const RunningMoments& o) {
    if (o.count == 0.0) return;
    if (count == 0.0) {
      *this = o;
      return;
    }
    const double total = count + o.count;
    const double d = o.mean - mean;
    mean += d * o.count / total;
    m2 += o.m2 + d * d * count * o.count / total;
    count = total;
  }

  double variance() const { return count > 1.0 ? m2 / (count - 1.0) : 0.0; }
  double std_error() const { return count > 1.0 ? std::sqrt(variance() / count) : 0.0; }
};

struct RunningVecMoments {
  double count = 0.0;
  Vec mean;
  Mat m2;

  explicit RunningVecMoments(int k = 0) : mean(Vec::Zero(k)), m2(Mat::Zero(k, k)) {}

  void add(const Vec& x) {
    count += 1.0;
    const Vec d = x - mean;
    mean += d / count;
    m2.noalias() += d * (x - mean).transpose();
  }

  void merge(const RunningVecMoments& o) {
    if (o.count == 0.0) return;
    if (count == 0.0) {
      *this = o;
      return;
    }
    const double total = count + o.count;
    const Vec d = o.mean - mean;
    mean += d * (o.count / total);
    m2 += o.m2 + d * d.transpose() * (count * o.count / total);
    count = total;
  }

  // Covariance of the mean estimator.
  Mat mean_covariance() const {
    if (count <= 1.0) return Mat::Zero(mean.size(), mean.size());
    return m2 / ((count - 1.0) * count);
  }
};

// Mean of f(stream_i) over substreams i = 0..samples-1 of `seed`.
template <class F>
EstimatorResult mc_estimate(std::uint64_t samples, std::uint64_t seed, F&& f) {
  auto blocks = run_blocks<RunningMoments>(samples, [&](std::uint64_t b, std::uint64_t e) {
    RunningMoments m;
    for (std::uint64_t i = b; i < e; ++i) {
      Stream s(seed, i);
      m.add(f(s));
    }
    return m;
  });
  RunningMoments total;
  for (const auto& m : blocks) total.merge(m);
  return {total.mean, total.std_error(), samples, seed};
}

// Vector-valued version: f(stream, out) fills out (size k).
template <class F>
RunningVecMoments mc_estimate_vec(std::uint64_t samples, std::uint64_t seed, int k, F&& f) {
  auto blocks = run_blocks<RunningVecMoments>(samples, [&](std::uint64_t b, std::uint64_t e) {
    RunningVecMoments m(k);
    Vec out(k);
    for (std::uint64_t i = b; i < e; ++i) {
      Stream s(seed, i);
      f(s, out);
      m.add(out);
    }
    return m;
  });
  RunningVecMoments total(k);
  for (const auto& m : blocks) total.merge(m);
  return total;
}

}  // namespace polyapprox
