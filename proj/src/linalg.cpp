#include "kadec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kadec/parallel.hpp"
#include "kadec/types.hpp"

namespace kadec::linalg {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix adjoint(const Matrix& m) {
    Matrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(j, i) = std::conj(m(i, j));
    return out;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    require(a.cols() == b.rows(), "multiply: inner dimensions must agree");
    Matrix c(a.rows(), b.cols());
    const long rows = static_cast<long>(a.rows());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(par::thread_budget()) \
    if (a.rows() * a.cols() * b.cols() > 32768)
#endif
    for (long i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cdouble aik = a(static_cast<std::size_t>(i), k);
            if (aik == cdouble(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(static_cast<std::size_t>(i), j) += aik * b(k, j);
        }
    }
    return c;
}

std::vector<cdouble> apply(const Matrix& m, const std::vector<cdouble>& x) {
    require(m.cols() == x.size(), "apply: dimension mismatch");
    std::vector<cdouble> y(m.rows(), cdouble(0.0, 0.0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cdouble acc(0.0, 0.0);
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

double max_abs(const Matrix& m) {
    double v = 0.0;
    for (const auto& z : m.data()) v = std::max(v, std::abs(z));
    return v;
}

double frobenius_norm(const Matrix& m) {
    double s = 0.0;
    for (const auto& z : m.data()) s += std::norm(z);
    return std::sqrt(s);
}

double hermitian_defect(const Matrix& m) {
    require(m.rows() == m.cols(), "hermitian_defect: matrix must be square");
    double v = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            v = std::max(v, std::abs(m(i, j) - std::conj(m(j, i))));
    return v;
}

namespace {

// Householder reduction of a real symmetric matrix (lower triangle) to
// tridiagonal form; eigenvalue-only variant, transforms are not accumulated.
// The two O(n^2) inner phases per step (symmetric matrix-vector product and
// rank-2 update) run in parallel for large trailing blocks.
void tridiagonalize(std::vector<double>& a, std::size_t n,
                    std::vector<double>& d, std::vector<double>& e) {
    auto at = [&a, n](std::size_t i, std::size_t j) -> double& {
        return a[i * n + j];
    };
    for (std::size_t i = n - 1; i >= 1; --i) {
        const std::size_t l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (std::size_t k = 0; k <= l; ++k) scale += std::fabs(at(i, k));
            if (scale == 0.0) {
                e[i] = at(i, l);
            } else {
                for (std::size_t k = 0; k <= l; ++k) {
                    at(i, k) /= scale;
                    h += at(i, k) * at(i, k);
                }
                double f = at(i, l);
                const double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                at(i, l) = f - g;
                const long ll = static_cast<long>(l);
                const bool big = l >= 128;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(par::thread_budget()) if (big)
#endif
                for (long j = 0; j <= ll; ++j) {
                    const std::size_t ju = static_cast<std::size_t>(j);
                    double gg = 0.0;
                    for (std::size_t k = 0; k <= ju; ++k)
                        gg += at(ju, k) * at(i, k);
                    for (std::size_t k = ju + 1; k <= l; ++k)
                        gg += at(k, ju) * at(i, k);
                    e[ju] = gg / h;
                }
                f = 0.0;
                for (std::size_t j = 0; j <= l; ++j) f += e[j] * at(i, j);
                const double hh = f / (h + h);
                for (std::size_t j = 0; j <= l; ++j) e[j] -= hh * at(i, j);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(par::thread_budget()) if (big)
#endif
                for (long j = 0; j <= ll; ++j) {
                    const std::size_t ju = static_cast<std::size_t>(j);
                    const double fj = at(i, ju);
                    const double gj = e[ju];
                    for (std::size_t k = 0; k <= ju; ++k)
                        at(ju, k) -= fj * e[k] + gj * at(i, k);
                }
            }
        } else {
            e[i] = at(i, l);
        }
        d[i] = h;
    }
    e[0] = 0.0;
    for (std::size_t i = 0; i < n; ++i) d[i] = at(i, i);
}

// Implicit-shift QL on a symmetric tridiagonal matrix; eigenvalues only.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, std::size_t n) {
    if (n <= 1) return;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        int iterations = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iterations++ == 50)
                    throw std::runtime_error(
                        "symmetric_eigenvalues: QL iteration failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0;
                double c = 1.0;
                double p = 0.0;
                bool underflow = false;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        // Deflate: a rotation annihilated the subdiagonal early.
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

bool imaginary_part_vanishes(const Matrix& m) {
    for (const auto& z : m.data())
        if (z.imag() != 0.0) return false;
    return true;
}

} // namespace

std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
    require(n >= 1 && a.size() == n * n,
            "symmetric_eigenvalues: storage must be n*n with n >= 1");
    std::vector<double> d(n, 0.0);
    std::vector<double> e(n, 0.0);
    if (n == 1) {
        d[0] = a[0];
        return d;
    }
    tridiagonalize(a, n, d, e);
    ql_implicit(d, e, n);
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<double> hermitian_eigenvalues(const Matrix& m) {
    require(m.rows() == m.cols() && m.rows() >= 1,
            "hermitian_eigenvalues: matrix must be square and nonempty");
    const std::size_t n = m.rows();

    if (imaginary_part_vanishes(m)) {
        std::vector<double> a(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                a[i * n + j] = 0.5 * (m(i, j).real() + m(j, i).real());
        return symmetric_eigenvalues(std::move(a), n);
    }

    // A = X + iY with X symmetric and Y antisymmetric embeds into the
    // 2n x 2n real symmetric [[X, -Y], [Y, X]], each eigenvalue doubled.
    const std::size_t n2 = 2 * n;
    std::vector<double> a(n2 * n2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double x = 0.5 * (m(i, j).real() + m(j, i).real());
            const double y = 0.5 * (m(i, j).imag() - m(j, i).imag());
            a[i * n2 + j] = x;
            a[(i + n) * n2 + (j + n)] = x;
            a[i * n2 + (j + n)] = -y;
            a[(i + n) * n2 + j] = y;
        }
    }
    std::vector<double> doubled = symmetric_eigenvalues(std::move(a), n2);
    std::vector<double> values(n);
    for (std::size_t k = 0; k < n; ++k)
        values[k] = 0.5 * (doubled[2 * k] + doubled[2 * k + 1]);
    return values;
}

std::vector<double> singular_values(const Matrix& m) {
    require(m.rows() >= 1 && m.cols() >= 1, "singular_values: empty matrix");
    const bool wide = m.cols() >= m.rows();
    const Matrix gram =
        wide ? multiply(m, adjoint(m)) : multiply(adjoint(m), m);
    std::vector<double> ev = hermitian_eigenvalues(gram);
    std::vector<double> sv(ev.size());
    for (std::size_t i = 0; i < ev.size(); ++i)
        sv[i] = std::sqrt(std::max(ev[ev.size() - 1 - i], 0.0));
    return sv;
}

Matrix solve_hpd(const Matrix& h, const Matrix& b) {
    require(h.rows() == h.cols(), "solve_hpd: matrix must be square");
    require(h.rows() == b.rows(), "solve_hpd: dimension mismatch");
    const std::size_t n = h.rows();
    Matrix l(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        double diag = h(k, k).real();
        for (std::size_t j = 0; j < k; ++j) diag -= std::norm(l(k, j));
        require(diag > 0.0, "solve_hpd: matrix is not positive definite");
        const double lkk = std::sqrt(diag);
        l(k, k) = lkk;
        for (std::size_t i = k + 1; i < n; ++i) {
            cdouble acc = h(i, k);
            for (std::size_t j = 0; j < k; ++j)
                acc -= l(i, j) * std::conj(l(k, j));
            l(i, k) = acc / lkk;
        }
    }
    // Forward then back substitution, one right-hand side column at a time.
    Matrix x(n, b.cols());
    std::vector<cdouble> y(n);
    for (std::size_t col = 0; col < b.cols(); ++col) {
        for (std::size_t i = 0; i < n; ++i) {
            cdouble acc = b(i, col);
            for (std::size_t j = 0; j < i; ++j) acc -= l(i, j) * y[j];
            y[i] = acc / l(i, i).real();
        }
        for (std::size_t i = n; i-- > 0;) {
            cdouble acc = y[i];
            for (std::size_t j = i + 1; j < n; ++j)
                acc -= std::conj(l(j, i)) * x(j, col);
            x(i, col) = acc / l(i, i).real();
        }
    }
    return x;
}

namespace reference {

std::vector<double> hermitian_eigenvalues(const Matrix& m) {
    require(m.rows() == m.cols() && m.rows() >= 1,
            "hermitian_eigenvalues: matrix must be square and nonempty");
    const std::size_t n = m.rows();
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

    const double scale = std::max(frobenius_norm(a), 1e-300);
    const double stop = 1e-14 * scale;
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (std::sqrt(2.0 * off) <= stop) break;
        if (sweep == max_sweeps - 1)
            throw std::runtime_error(
                "reference::hermitian_eigenvalues: Jacobi failed to converge");
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cdouble apq = a(p, q);
                const double b = std::abs(apq);
                if (b <= 1e-300) continue;
                // Factor out the phase, then rotate the real 2x2 block.
                const cdouble w = apq / b;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * b);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::hypot(tau, 1.0));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cdouble swbar = s * std::conj(w);
                const cdouble sw = s * w;
                const cdouble cwbar = c * std::conj(w);
                const cdouble cw = c * w;
                for (std::size_t k = 0; k < n; ++k) {
                    const cdouble akp = a(k, p);
                    const cdouble akq = a(k, q);
                    a(k, p) = c * akp - swbar * akq;
                    a(k, q) = s * akp + cwbar * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cdouble apk = a(p, k);
                    const cdouble aqk = a(q, k);
                    a(p, k) = c * apk - sw * aqk;
                    a(q, k) = s * apk + cw * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i).real();
    std::sort(values.begin(), values.end());
    return values;
}

} // namespace reference

} // namespace kadec::linalg
