#include "core/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

namespace ris::numerics {

namespace {

double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const auto& v : a.data()) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw InvalidArgument("matrix product: dimension mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

ComplexVector mat_vec(const ComplexMatrix& a, const ComplexVector& v) {
    if (a.cols() != v.size()) throw InvalidArgument("mat_vec: dimension mismatch");
    ComplexVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

ComplexMatrix lu_solve(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw InvalidArgument("lu_solve: A must be square");
    if (b.rows() != n) throw InvalidArgument("lu_solve: B row count mismatch");

    ComplexMatrix lu = a;
    ComplexMatrix x = b;
    const double pivot_floor = 1e-14 * max_abs(a);

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = std::abs(lu(i, k));
            if (m > best) {
                best = m;
                piv = i;
            }
        }
        if (best < pivot_floor || best == 0.0) throw SingularMatrix("lu_solve: singular matrix");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
            for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(piv, j));
        }
        const Complex inv_piv = 1.0 / lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex factor = lu(i, k) * inv_piv;
            lu(i, k) = factor;
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= factor * lu(k, j);
            for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) -= factor * x(k, j);
        }
    }

    // Back substitution.
    for (std::size_t col = 0; col < x.cols(); ++col) {
        for (std::size_t ii = n; ii-- > 0;) {
            Complex s = x(ii, col);
            for (std::size_t j = ii + 1; j < n; ++j) s -= lu(ii, j) * x(j, col);
            x(ii, col) = s / lu(ii, ii);
        }
    }
    return x;
}

ComplexVector lu_solve(const ComplexMatrix& a, const ComplexVector& b) {
    ComplexMatrix rhs(b.size(), 1);
    for (std::size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
    ComplexMatrix x = lu_solve(a, rhs);
    ComplexVector out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = x(i, 0);
    return out;
}

ComplexMatrix invert(const ComplexMatrix& a) {
    return lu_solve(a, ComplexMatrix::identity(a.rows()));
}

double spectral_norm(const ComplexMatrix& a, bool* converged) {
    constexpr int kMaxIters = 500;
    constexpr double kTol = 1e-6;
    if (converged) *converged = true;

    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    ComplexVector v(n, 1.0 / std::sqrt(static_cast<double>(n)));

    double sigma = 0.0;
    for (int it = 0; it < kMaxIters; ++it) {
        // w = A v, s = A^H w
        ComplexVector w = mat_vec(a, v);
        ComplexVector s(n, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) s[j] += std::conj(a(i, j)) * w[i];
        }
        double wn = 0.0;
        for (const auto& c : w) wn += std::norm(c);
        const double sigma_new = std::sqrt(wn);  // ||A v|| with ||v|| = 1
        double sn = 0.0;
        for (const auto& c : s) sn += std::norm(c);
        sn = std::sqrt(sn);
        if (sn == 0.0) return 0.0;
        for (auto& c : s) c /= sn;
        v = std::move(s);
        if (it > 0 && std::abs(sigma_new - sigma) <= kTol * std::max(sigma_new, 1e-300)) {
            return sigma_new;
        }
        sigma = sigma_new;
    }
    if (converged) *converged = false;
    return sigma;
}

QuadratureRule gauss_legendre(std::size_t n, double lo, double hi) {
    if (n < 1) throw InvalidArgument("gauss_legendre: n must be >= 1");
    if (!(lo < hi)) throw InvalidArgument("gauss_legendre: need lo < hi");

    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    const double xm = 0.5 * (hi + lo);
    const double xl = 0.5 * (hi - lo);
    const std::size_t m = (n + 1) / 2;
    const double dn = static_cast<double>(n);

    for (std::size_t i = 1; i <= m; ++i) {
        // Newton iteration on P_n from the Chebyshev-based initial guess.
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) - 0.25) / (dn + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                const double dj = static_cast<double>(j);
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * dj - 1.0) * z * p2 - (dj - 1.0) * p3) / dj;
            }
            pp = dn * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15) break;
        }
        rule.nodes[i - 1] = xm - xl * z;
        rule.nodes[n - i] = xm + xl * z;
        const double w = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        rule.weights[i - 1] = w;
        rule.weights[n - i] = w;
    }
    return rule;
}

double wrap_to_pi(double angle) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double y = std::fmod(angle + std::numbers::pi, two_pi);
    if (y < 0.0) y += two_pi;
    double r = y - std::numbers::pi;
    if (r >= std::numbers::pi) r = -std::numbers::pi;
    return r;
}

}  // namespace ris::numerics
