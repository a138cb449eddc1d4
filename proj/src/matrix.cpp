#include "cocycle/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cocycle/errors.hpp"

namespace cocycle {

namespace {

double wrap_pi(double angle) {
    double t = std::fmod(angle, std::numbers::pi);
    if (t < 0.0) t += std::numbers::pi;
    if (t >= std::numbers::pi) t = 0.0;
    return t;
}

void check_dim(std::size_t dim) {
    if (dim == 0 || dim > kMaxDim) {
        throw std::invalid_argument("matrix dimension must be in [1, 16], got " +
                                    std::to_string(dim));
    }
}

// Largest eigenvalue of a symmetric matrix by cyclic Jacobi rotations.
double symmetric_top_eigenvalue(MatD s) {
    const std::size_t n = s.dim();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += s(i, j) * s(i, j);
        if (off < 1e-30 * (1.0 + frobenius_norm(s))) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (s(p, q) == 0.0) continue;
                const double theta = (s(q, q) - s(p, p)) / (2.0 * s(p, q));
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double skp = s(k, p), skq = s(k, q);
                    s(k, p) = c * skp - sn * skq;
                    s(k, q) = sn * skp + c * skq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double spk = s(p, k), sqk = s(q, k);
                    s(p, k) = c * spk - sn * sqk;
                    s(q, k) = sn * spk + c * sqk;
                }
            }
        }
    }
    double top = s(0, 0);
    for (std::size_t i = 1; i < n; ++i) top = std::max(top, s(i, i));
    return std::max(top, 0.0);
}

}  // namespace

bool Mat2::finite() const {
    return std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d);
}

MatD::MatD(std::size_t dim) : dim_(dim), data_() {
    check_dim(dim);
    data_.assign(dim * dim, 0.0);
}

MatD::MatD(std::size_t dim, std::vector<double> row_major) : dim_(dim), data_(std::move(row_major)) {
    check_dim(dim);
    if (data_.size() != dim * dim) {
        throw std::invalid_argument("matrix data size does not match dimension");
    }
}

MatD::MatD(const Mat2& m) : dim_(2), data_{m.a, m.b, m.c, m.d} {}

MatD MatD::identity(std::size_t dim) {
    MatD m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

MatD MatD::diagonal(std::span<const double> diag) {
    MatD m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

Mat2 MatD::to_mat2() const {
    if (dim_ != 2) throw std::invalid_argument("to_mat2 on a matrix of dimension != 2");
    return {data_[0], data_[1], data_[2], data_[3]};
}

MatD MatD::transpose() const {
    MatD t(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool MatD::finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

double MatD::determinant() const {
    if (dim_ == 2) return to_mat2().det();
    // Gaussian elimination with partial pivoting.
    MatD m = *this;
    double det = 1.0;
    for (std::size_t k = 0; k < dim_; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < dim_; ++i)
            if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
        if (m(piv, k) == 0.0) return 0.0;
        if (piv != k) {
            for (std::size_t j = 0; j < dim_; ++j) std::swap(m(k, j), m(piv, j));
            det = -det;
        }
        det *= m(k, k);
        for (std::size_t i = k + 1; i < dim_; ++i) {
            const double f = m(i, k) / m(k, k);
            for (std::size_t j = k; j < dim_; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return det;
}

void MatD::scale(double s) {
    for (double& x : data_) x *= s;
}

void mat_mul_into(MatD& out, const MatD& a, const MatD& b) {
    const std::size_t n = a.dim();
    if (b.dim() != n) {
        throw std::invalid_argument("mat_mul: dimension mismatch (" + std::to_string(n) +
                                    " vs " + std::to_string(b.dim()) + ")");
    }
    if (out.dim() != n) out = MatD(n);
    if (n == 2) {
        const auto x = a.data();
        const auto y = b.data();
        auto o = out.data();
        o[0] = x[0] * y[0] + x[1] * y[2];
        o[1] = x[0] * y[1] + x[1] * y[3];
        o[2] = x[2] * y[0] + x[3] * y[2];
        o[3] = x[2] * y[1] + x[3] * y[3];
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += a(i, k) * b(k, j);
            out(i, j) = s;
        }
    }
}

MatD mat_mul(const MatD& a, const MatD& b) {
    MatD out(a.dim());
    mat_mul_into(out, a, b);
    return out;
}

QRFactors qr_positive(const MatD& m) {
    const std::size_t n = m.dim();
    MatD r = m;
    MatD q = MatD::identity(n);
    std::vector<double> v(n);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        double norm_x = 0.0;
        for (std::size_t i = k; i < n; ++i) norm_x += r(i, k) * r(i, k);
        norm_x = std::sqrt(norm_x);
        if (norm_x == 0.0) continue;
        const double alpha = r(k, k) > 0.0 ? -norm_x : norm_x;
        double vnorm2 = 0.0;
        for (std::size_t i = k; i < n; ++i) {
            v[i] = r(i, k) - (i == k ? alpha : 0.0);
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2 == 0.0) continue;
        // R <- H R, Q <- Q H with H = I - 2 v v^T / (v^T v).
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = k; i < n; ++i) s += v[i] * r(i, j);
            s *= 2.0 / vnorm2;
            for (std::size_t i = k; i < n; ++i) r(i, j) -= s * v[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = k; j < n; ++j) s += q(i, j) * v[j];
            s *= 2.0 / vnorm2;
            for (std::size_t j = k; j < n; ++j) q(i, j) -= s * v[j];
        }
        for (std::size_t i = k + 1; i < n; ++i) r(i, k) = 0.0;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (r(i, i) < 0.0) {
            for (std::size_t j = 0; j < n; ++j) r(i, j) = -r(i, j);
            for (std::size_t j = 0; j < n; ++j) q(j, i) = -q(j, i);
        }
    }
    return {std::move(q), std::move(r)};
}

double operator_norm(const Mat2& m) {
    // sigma_max = (|(a+d, b-c)| + |(a-d, b+c)|) / 2, free of cancellation.
    return 0.5 * (std::hypot(m.a + m.d, m.b - m.c) + std::hypot(m.a - m.d, m.b + m.c));
}

double operator_norm(const MatD& m) {
    if (m.dim() == 1) return std::abs(m(0, 0));
    if (m.dim() == 2) return operator_norm(m.to_mat2());
    const double scale = frobenius_norm(m);
    if (scale == 0.0) return 0.0;
    MatD s = m;
    s.scale(1.0 / scale);
    const MatD gram = mat_mul(s.transpose(), s);
    return scale * std::sqrt(symmetric_top_eigenvalue(gram));
}

double frobenius_norm(const MatD& m) {
    double s = 0.0;
    for (double x : m.data()) s += x * x;
    return std::sqrt(s);
}

double max_abs_diff(const MatD& a, const MatD& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    return worst;
}

SingularFrame2 singular_frame(const Mat2& m) {
    const double p = m.a * m.a + m.c * m.c;
    const double q = m.a * m.b + m.c * m.d;
    const double r = m.b * m.b + m.d * m.d;
    const double right_top = wrap_pi(0.5 * std::atan2(2.0 * q, p - r));
    const double x = std::cos(right_top), y = std::sin(right_top);
    const double left_top = wrap_pi(std::atan2(m.c * x + m.d * y, m.a * x + m.b * y));
    const double smax = operator_norm(m);
    const double smin = smax > 0.0 ? std::abs(m.det()) / smax : 0.0;
    return {smax, smin, left_top, right_top, wrap_pi(right_top + 0.5 * std::numbers::pi)};
}

double spectral_radius(const Mat2& m) {
    const double half_tr = 0.5 * m.trace();
    const double disc = half_tr * half_tr - m.det();
    if (disc >= 0.0) return std::abs(half_tr) + std::sqrt(disc);
    return std::sqrt(m.det());  // complex pair: |lambda|^2 = det
}

HalfPlanePoint::HalfPlanePoint(double re, double im) : re_(re), im_(im) {
    if (!std::isfinite(re) || !std::isfinite(im) || !(im > 0.0)) {
        throw std::invalid_argument("half-plane point needs finite coordinates and im > 0");
    }
}

HalfPlanePoint projective_apply(const Mat2& m, HalfPlanePoint z) {
    const double det = m.det();
    if (det == 0.0 || !std::isfinite(det)) {
        throw std::invalid_argument("projective_apply: singular matrix");
    }
    const std::complex<double> w =
        det > 0.0 ? std::complex<double>(z.re(), z.im()) : std::complex<double>(z.re(), -z.im());
    const std::complex<double> den = m.c * w + m.d;
    const double den2 = std::norm(den);
    const std::complex<double> image = (m.a * w + m.b) / den;
    // The imaginary part is evaluated multiplicatively so it keeps full
    // relative precision even when the image is close to the boundary.
    const double im = std::abs(det) * z.im() / den2;
    if (!std::isfinite(image.real()) || !(im > 0.0) || !std::isfinite(im)) {
        throw NumericalError("projective_apply: image left the open upper half plane");
    }
    return {image.real(), im};
}

double hyperbolic_distance(HalfPlanePoint z, HalfPlanePoint w) {
    const double dx = z.re() - w.re(), dy = z.im() - w.im();
    const double arg = 1.0 + (dx * dx + dy * dy) / (2.0 * z.im() * w.im());
    return std::acosh(arg);
}

}  // namespace cocycle
