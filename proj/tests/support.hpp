#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "adr/linalg.hpp"

namespace testing {

inline adr::Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng,
                                 double lo = -1.0, double hi = 1.0)
{
    std::uniform_real_distribution<double> u(lo, hi);
    adr::Matrix m(r, c);
    for (double& v : m.data()) {
        v = u(rng);
    }
    return m;
}

inline std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng, double lo = -1.0,
                                         double hi = 1.0)
{
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) {
        x = u(rng);
    }
    return v;
}

// Textbook triple loop.
inline adr::Matrix naive_product(const adr::Matrix& a, const adr::Matrix& b)
{
    adr::Matrix c(a.rows(), b.cols());
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

// Gaussian elimination with partial pivoting, written out independently of the library.
inline std::vector<double> naive_solve(adr::Matrix a, std::vector<double> b)
{
    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a(i, k)) > std::abs(a(p, k))) {
                p = i;
            }
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(p, j));
            }
            std::swap(b[k], b[p]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j) {
                a(i, j) -= m * a(k, j);
            }
            b[i] -= m * b[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t k = n; k-- > 0;) {
        double s = b[k];
        for (std::size_t j = k + 1; j < n; ++j) {
            s -= a(k, j) * x[j];
        }
        x[k] = s / a(k, k);
    }
    return x;
}

inline double max_abs_diff(const adr::Matrix& a, const adr::Matrix& b)
{
    double d = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        d = std::max(d, std::abs(a.data()[k] - b.data()[k]));
    }
    return d;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        d = std::max(d, std::abs(a[k] - b[k]));
    }
    return d;
}

} // namespace testing
