#include "adiwave/reference.hpp"

#include "adiwave/error.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace adiwave::reference {

DenseMatrix matmul(ConstMatrixView a, ConstMatrixView b)
{
    if (a.cols() != b.rows()) {
        throw ShapeMismatch("matmul: inner dimensions differ");
    }
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) {
                s += a(i, k) * b(k, j);
            }
            c(i, j) = s;
        }
    }
    return c;
}

DenseMatrix tridiagonal(std::span<const double> lower, std::span<const double> main, std::span<const double> upper)
{
    const std::size_t n = main.size();
    DenseMatrix       t(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        t(i, i) = main[i];
        if (i + 1 < n) {
            t(i + 1, i) = lower[i];
            t(i, i + 1) = upper[i];
        }
    }
    return t;
}

DenseMatrix solve(ConstMatrixView a, ConstMatrixView b)
{
    const std::size_t n = a.rows();
    if (a.cols() != n || b.rows() != n) {
        throw ShapeMismatch("reference::solve: incompatible shapes");
    }
    DenseMatrix m(a);
    DenseMatrix x(b);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(m(i, k)) > std::abs(m(piv, k))) {
                piv = i;
            }
        }
        if (m(piv, k) == 0.0) {
            throw ZeroPivot("reference::solve: singular matrix");
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(k, j), m(piv, j));
            }
            for (std::size_t j = 0; j < x.cols(); ++j) {
                std::swap(x(k, j), x(piv, j));
            }
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j) {
                m(i, j) -= f * m(k, j);
            }
            for (std::size_t j = 0; j < x.cols(); ++j) {
                x(i, j) -= f * x(k, j);
            }
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = 0; j < x.cols(); ++j) {
            double s = x(i, j);
            for (std::size_t k = i + 1; k < n; ++k) {
                s -= m(i, k) * x(k, j);
            }
            x(i, j) = s / m(i, i);
        }
    }
    return x;
}

double frobenius_norm(ConstMatrixView m)
{
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            s += m(i, j) * m(i, j);
        }
    }
    return std::sqrt(s);
}

void thomas(std::span<const double> lower, std::span<const double> main, std::span<const double> upper,
            std::span<double> rhs)
{
    const std::size_t   n = main.size();
    std::vector<double> c(n);
    double              d = main[0];
    rhs[0] /= d;
    for (std::size_t i = 1; i < n; ++i) {
        c[i - 1] = upper[i - 1] / d;
        d        = main[i] - lower[i - 1] * c[i - 1];
        rhs[i]   = (rhs[i] - lower[i - 1] * rhs[i - 1]) / d;
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        rhs[i] -= c[i] * rhs[i + 1];
    }
}

} // namespace adiwave::reference
