// SPDX-License-Identifier: Apache-2.0
#include "vitsqueeze/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace vitsq {

namespace {

constexpr int kJacobiSweepCap = 100;
constexpr double kJacobiOffDiagTol = 1e-12;

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("matmul: inner dimensions differ (" + std::to_string(a.cols()) +
                         " vs " + std::to_string(b.rows()) + ")");
    }
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double* ci = c.data() + i * c.cols();
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            const double* bk = b.data() + k * b.cols();
            for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) {
        throw ShapeError("matmul_nt: inner dimensions differ (" + std::to_string(a.cols()) +
                         " vs " + std::to_string(b.cols()) + ")");
    }
    Matrix c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.rows(); ++j) {
            c(i, j) = dot(a.row(i), b.row(j));
        }
    }
    return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) {
        throw ShapeError("matmul_tn: inner dimensions differ (" + std::to_string(a.rows()) +
                         " vs " + std::to_string(b.rows()) + ")");
    }
    Matrix c(a.cols(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* ai = a.data() + i * a.cols();
        const double* bi = b.data() + i * b.cols();
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = ai[k];
            if (aik == 0.0) continue;
            double* ck = c.data() + k * c.cols();
            for (std::size_t j = 0; j < b.cols(); ++j) ck[j] += aik * bi[j];
        }
    }
    return c;
}

Matrix transpose(const Matrix& m) {
    Matrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    }
    return t;
}

Matrix row_softmax(const Matrix& m, double scale) {
    if (!(scale > 0.0)) throw ParamError("row_softmax: scale must be > 0");
    Matrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto in = m.row(i);
        auto dst = out.row(i);
        double max_logit = -HUGE_VAL;
        for (double v : in) max_logit = std::max(max_logit, scale * v);
        double sum = 0.0;
        for (std::size_t j = 0; j < in.size(); ++j) {
            dst[j] = std::exp(scale * in[j] - max_logit);
            sum += dst[j];
        }
        for (std::size_t j = 0; j < in.size(); ++j) dst[j] /= sum;
    }
    return out;
}

namespace {

// One-sided Jacobi on a copy with rows >= cols; returns thin U, sigma, V.
SvdResult svd_tall(const Matrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    Matrix b = m;
    Matrix v = Matrix::identity(cols);

    for (int sweep = 0; sweep < kJacobiSweepCap; ++sweep) {
        std::size_t rotations = 0;
        for (std::size_t p = 0; p + 1 < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t i = 0; i < rows; ++i) {
                    const double bp = b(i, p);
                    const double bq = b(i, q);
                    alpha += bp * bp;
                    beta += bq * bq;
                    gamma += bp * bq;
                }
                if (std::abs(gamma) <= kJacobiOffDiagTol * std::sqrt(alpha * beta)) continue;

                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < rows; ++i) {
                    const double bp = b(i, p);
                    const double bq = b(i, q);
                    b(i, p) = c * bp - s * bq;
                    b(i, q) = s * bp + c * bq;
                }
                for (std::size_t i = 0; i < cols; ++i) {
                    const double vp = v(i, p);
                    const double vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
                ++rotations;
            }
        }
        if (rotations == 0) break;
        if (sweep == kJacobiSweepCap - 1) {
            throw NumericError("svd: Jacobi sweeps did not converge within cap");
        }
    }

    std::vector<double> sigma(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        double norm_sq = 0.0;
        for (std::size_t i = 0; i < rows; ++i) norm_sq += b(i, j) * b(i, j);
        sigma[j] = std::sqrt(norm_sq);
    }

    std::vector<std::size_t> order(cols);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    SvdResult result;
    result.s.resize(cols);
    result.u = Matrix(rows, cols);
    result.v = Matrix(cols, cols);
    const double sigma_max = sigma.empty() ? 0.0 : sigma[order[0]];
    const double tiny = sigma_max * 1e-15;
    for (std::size_t j = 0; j < cols; ++j) {
        const std::size_t src = order[j];
        result.s[j] = sigma[src];
        for (std::size_t i = 0; i < cols; ++i) result.v(i, j) = v(i, src);
        if (sigma[src] > tiny) {
            for (std::size_t i = 0; i < rows; ++i) result.u(i, j) = b(i, src) / sigma[src];
        }
    }

    // Columns with zero singular value get an orthonormal completion so U
    // stays orthogonal even for rank-deficient inputs.
    for (std::size_t j = 0; j < cols; ++j) {
        if (result.s[j] > tiny) continue;
        for (std::size_t basis = 0; basis < rows; ++basis) {
            std::vector<double> cand(rows, 0.0);
            cand[basis] = 1.0;
            for (std::size_t k = 0; k < cols; ++k) {
                if (k == j || (result.s[k] <= tiny && k > j)) continue;
                double proj = 0.0;
                for (std::size_t i = 0; i < rows; ++i) proj += cand[i] * result.u(i, k);
                for (std::size_t i = 0; i < rows; ++i) cand[i] -= proj * result.u(i, k);
            }
            double norm = 0.0;
            for (double c : cand) norm += c * c;
            norm = std::sqrt(norm);
            if (norm > 0.5) {
                for (std::size_t i = 0; i < rows; ++i) result.u(i, j) = cand[i] / norm;
                break;
            }
        }
    }
    return result;
}

}  // namespace

SvdResult svd(const Matrix& m) {
    if (m.empty()) throw ShapeError("svd: empty matrix");
    if (m.rows() >= m.cols()) return svd_tall(m);
    SvdResult flipped = svd_tall(transpose(m));
    SvdResult result;
    result.u = std::move(flipped.v);
    result.s = std::move(flipped.s);
    result.v = std::move(flipped.u);
    return result;
}

Matrix solve_spd(const Matrix& a, const Matrix& b, double ridge) {
    if (a.rows() != a.cols()) throw ShapeError("solve_spd: a must be square");
    if (b.cols() != a.rows()) {
        throw ShapeError("solve_spd: b has " + std::to_string(b.cols()) +
                         " cols, expected " + std::to_string(a.rows()));
    }
    if (ridge < 0.0) throw ParamError("solve_spd: ridge must be >= 0");

    const std::size_t n = a.rows();
    double max_abs = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) max_abs = std::max(max_abs, std::abs(a.data()[i]));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(a(i, j) - a(j, i)) > 1e-6 * std::max(1.0, max_abs)) {
                throw ParamError("solve_spd: a is not symmetric");
            }
        }
    }

    // Cholesky of (a + ridge I), lower triangle.
    Matrix l(n, n);
    double min_pivot = HUGE_VAL, max_pivot = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = j; i < n; ++i) {
            double sum = a(i, j) + (i == j ? ridge : 0.0);
            for (std::size_t k = 0; k < j; ++k) sum -= l(i, k) * l(j, k);
            if (i == j) {
                if (!(sum > 0.0) || !std::isfinite(sum)) {
                    const double cond = min_pivot > 0.0 && max_pivot > 0.0
                                            ? (max_pivot / min_pivot) * (max_pivot / min_pivot)
                                            : HUGE_VAL;
                    throw SingularMatrixError(
                        "solve_spd: matrix numerically singular at pivot " + std::to_string(j) +
                            (ridge == 0.0 ? "; retry with ridge > 0" : ""),
                        cond);
                }
                l(j, j) = std::sqrt(sum);
                min_pivot = std::min(min_pivot, l(j, j));
                max_pivot = std::max(max_pivot, l(j, j));
            } else {
                l(i, j) = sum / l(j, j);
            }
        }
    }

    // Solve (a + ridge I) z_col = b_row for every row of b: z = b (a + ridge I)^-1.
    Matrix z(b.rows(), n);
    std::vector<double> y(n);
    for (std::size_t r = 0; r < b.rows(); ++r) {
        for (std::size_t i = 0; i < n; ++i) {
            double sum = b(r, i);
            for (std::size_t k = 0; k < i; ++k) sum -= l(i, k) * y[k];
            y[i] = sum / l(i, i);
        }
        for (std::size_t ii = n; ii-- > 0;) {
            double sum = y[ii];
            for (std::size_t k = ii + 1; k < n; ++k) sum -= l(k, ii) * z(r, k);
            z(r, ii) = sum / l(ii, ii);
        }
    }
    return z;
}

double gelu_scalar(double x) { return x * 0.5 * (1.0 + std::erf(x * M_SQRT1_2)); }

double gelu_derivative_scalar(double x) {
    const double cdf = 0.5 * (1.0 + std::erf(x * M_SQRT1_2));
    const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    return cdf + x * pdf;
}

Matrix gelu(const Matrix& m) {
    Matrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.size(); ++i) out.data()[i] = gelu_scalar(m.data()[i]);
    return out;
}

Matrix gelu_derivative(const Matrix& m) {
    Matrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.size(); ++i) {
        out.data()[i] = gelu_derivative_scalar(m.data()[i]);
    }
    return out;
}

Matrix layer_norm(const Matrix& m, double eps) {
    if (eps < 0.0) throw ParamError("layer_norm: eps must be >= 0");
    Matrix out(m.rows(), m.cols());
    const std::size_t d = m.cols();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto in = m.row(i);
        double mean = 0.0;
        for (double v : in) mean += v;
        mean /= static_cast<double>(d);
        double var = 0.0;
        for (double v : in) var += (v - mean) * (v - mean);
        var /= static_cast<double>(d);
        const double inv = 1.0 / std::sqrt(var + eps);
        auto dst = out.row(i);
        for (std::size_t j = 0; j < d; ++j) dst[j] = (in[j] - mean) * inv;
    }
    return out;
}

double frobenius(const Matrix& m) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) acc += m.data()[i] * m.data()[i];
    return std::sqrt(acc);
}

}  // namespace vitsq
