// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "vitsqueeze/matrix.hpp"

namespace vitsq {

// Dense kernels shared by every module. All functions are pure; none mutates
// its inputs, so concurrent calls on shared matrices are safe.

Matrix matmul(const Matrix& a, const Matrix& b);

// a * transpose(b) and transpose(a) * b without materializing the transpose.
Matrix matmul_nt(const Matrix& a, const Matrix& b);
Matrix matmul_tn(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& m);

// Row-wise softmax of (scale * m), computed with per-row max subtraction.
// Every output row sums to 1 for any finite input.
Matrix row_softmax(const Matrix& m, double scale);

struct SvdResult {
    Matrix u;               // rows x k, orthonormal columns
    std::vector<double> s;  // k singular values, descending, k = min(rows, cols)
    Matrix v;               // cols x k, orthonormal columns
};

// One-sided Jacobi SVD. Accurate for the small dense matrices this toolkit
// sees (tokens x tokens); throws NumericError if a sweep cap is exceeded.
SvdResult svd(const Matrix& m);

// Z with Z * (a + ridge*I) = b, i.e. Z = b * (a + ridge*I)^-1, for symmetric
// positive-definite a (Cholesky). Throws SingularMatrixError when the ridged
// matrix is not numerically positive definite.
Matrix solve_spd(const Matrix& a, const Matrix& b, double ridge);

// Exact Gaussian-CDF form x * Phi(x), and its derivative Phi(x) + x * phi(x).
Matrix gelu(const Matrix& m);
Matrix gelu_derivative(const Matrix& m);
double gelu_scalar(double x);
double gelu_derivative_scalar(double x);

// Per-row standardization (mean 0, variance 1) with no affine parameters;
// callers that need scale/shift apply it themselves.
Matrix layer_norm(const Matrix& m, double eps);

double frobenius(const Matrix& m);

}  // namespace vitsq
