#include "polyapprox/linalg.hpp"

#include <cmath>

namespace polyapprox {

Mat orthonormal_row_basis(const Mat& d, double rel_tol) {
  const Eigen::Index n = d.cols();
  if (d.rows() == 0) return Mat(n, 0);
  Eigen::ColPivHouseholderQR<Mat> qr(d.transpose());
  qr.setThreshold(rel_tol);
  const Eigen::Index r = qr.rank();
  Mat q = qr.householderQ() * Mat::Identity(n, r);
  return q;
}

int affine_rank(const Points& pts, double abs_tol) {
  if (pts.size() < 2) return 0;
  const Eigen::Index n = pts[0].size();
  Mat d(static_cast<Eigen::Index>(pts.size()) - 1, n);
  for (std::size_t i = 1; i < pts.size(); ++i) d.row(static_cast<Eigen::Index>(i) - 1) = (pts[i] - pts[0]).transpose();
  Eigen::JacobiSVD<Mat> svd(d);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > abs_tol) ++r;
  return r;
}

bool lex_less(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

Vec hyperplane_normal(const Points& pts) {
  const Eigen::Index n = pts[0].size();
  Mat d(n, n - 1);
  for (Eigen::Index i = 1; i < n; ++i) d.col(i - 1) = pts[static_cast<std::size_t>(i)] - pts[0];
  Eigen::HouseholderQR<Mat> qr(d);
  Vec e = Vec::Zero(n);
  e[n - 1] = 1.0;
  Vec normal = qr.householderQ() * e;
  return normal.normalized();
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

}  // namespace polyapprox
