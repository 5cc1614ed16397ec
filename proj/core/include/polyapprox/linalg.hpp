#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace polyapprox {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Points = std::vector<Vec>;

// Orthonormal basis (columns) of span{rows of d}; rank decided with a relative threshold.
Mat orthonormal_row_basis(const Mat& d, double rel_tol = 1e-10);

// Dimension of the affine hull of the given points.
int affine_rank(const Points& pts, double abs_tol);

// Lexicographic comparison for deterministic ordering.
bool lex_less(const Vec& a, const Vec& b);

// Unit normal of the hyperplane through n points in R^n (sign arbitrary).
Vec hyperplane_normal(const Points& pts);

double binomial(int n, int k);

}  // namespace polyapprox
