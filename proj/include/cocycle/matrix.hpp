#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace cocycle {

// Row-major 2x2 real matrix [[a, b], [c, d]].
struct Mat2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    constexpr double det() const { return a * d - b * c; }
    constexpr double trace() const { return a + d; }
    constexpr Mat2 transpose() const { return {a, c, b, d}; }
    // Inverse; caller guarantees det() != 0.
    constexpr Mat2 inverse() const {
        const double k = 1.0 / det();
        return {d * k, -b * k, -c * k, a * k};
    }
    constexpr Mat2 scaled(double s) const { return {a * s, b * s, c * s, d * s}; }
    bool finite() const;

    friend constexpr Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

// Square d x d real matrix, d in [1, 16].
class MatD {
public:
    MatD() : MatD(1) {}
    explicit MatD(std::size_t dim);
    MatD(std::size_t dim, std::vector<double> row_major);
    MatD(const Mat2& m);  // NOLINT(google-explicit-constructor): Mat2 is a MatD of dim 2

    static MatD identity(std::size_t dim);
    static MatD diagonal(std::span<const double> diag);

    std::size_t dim() const { return dim_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
    std::span<const double> data() const { return data_; }
    std::span<double> data() { return data_; }

    Mat2 to_mat2() const;  // requires dim() == 2
    MatD transpose() const;
    bool finite() const;
    double determinant() const;
    void scale(double s);

    friend bool operator==(const MatD&, const MatD&) = default;

private:
    std::size_t dim_;
    std::vector<double> data_;
};

inline constexpr std::size_t kMaxDim = 16;

// Product a*b. Throws std::invalid_argument on dimension mismatch.
MatD mat_mul(const MatD& a, const MatD& b);
// out = a*b without allocating when out already has the right size.
// out must not alias a or b.
void mat_mul_into(MatD& out, const MatD& a, const MatD& b);

struct QRFactors {
    MatD q;  // orthogonal
    MatD r;  // upper triangular, nonnegative diagonal
};

// Householder QR with the sign convention diag(R) >= 0. Rank deficiency
// shows up as zero diagonal entries of R.
QRFactors qr_positive(const MatD& m);

// Largest singular value. Closed form for 2x2, Jacobi iteration on m^T m otherwise.
double operator_norm(const Mat2& m);
double operator_norm(const MatD& m);
double frobenius_norm(const MatD& m);
double max_abs_diff(const MatD& a, const MatD& b);

// Singular directions of a 2x2 matrix, as angles in [0, pi).
struct SingularFrame2 {
    double sigma_max;
    double sigma_min;
    double left_top;      // direction of m * right_top
    double right_top;     // most expanded input direction
    double right_bottom;  // most contracted input direction
};
SingularFrame2 singular_frame(const Mat2& m);

// Spectral radius of a 2x2 matrix (modulus of the largest eigenvalue).
double spectral_radius(const Mat2& m);

// A point of the open upper half plane.
class HalfPlanePoint {
public:
    // Throws std::invalid_argument unless im > 0 and both parts are finite.
    HalfPlanePoint(double re, double im);

    double re() const { return re_; }
    double im() const { return im_; }

private:
    double re_;
    double im_;
};

// Projective action on the upper half plane. Orientation-preserving matrices
// (det > 0) act by z -> (az+b)/(cz+d); orientation-reversing ones (det < 0)
// act through conjugation, z -> (a conj(z)+b)/(c conj(z)+d), which is how
// the lower half plane is folded back onto the upper one. Throws
// std::invalid_argument for det == 0 and NumericalError when the image
// leaves the open half plane.
HalfPlanePoint projective_apply(const Mat2& m, HalfPlanePoint z);

// Hyperbolic distance in the upper half plane.
double hyperbolic_distance(HalfPlanePoint z, HalfPlanePoint w);

}  // namespace cocycle
