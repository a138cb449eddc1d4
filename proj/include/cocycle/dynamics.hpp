#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <variant>
#include <vector>

#include "cocycle/matrix.hpp"

namespace cocycle {

// Points of the three kinds of base space.
struct Phase {
    double value;  // in [0, 1)
};
struct Symbol {
    int value;  // in 1..k
};
struct TorusPoint {
    double x;
    double y;
};
using BasePoint = std::variant<Phase, Symbol, TorusPoint>;

// Fractional part in [0, 1).
double frac(double x);
// Distance on the circle R/Z.
double circle_distance(double x, double y);

// SplitMix64 finalizer; used to derive per-task seeds from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Circle rotation x -> x + alpha (mod 1). The phase at step n is evaluated as
// frac(x0 + n*alpha) with the product split exactly via fma, so there is no
// drift from repeated addition.
class RotationDriver {
public:
    RotationDriver(double alpha, double x0 = 0.0);

    // Returns the current phase, then advances by one step.
    double next();
    double phase() const { return phase_at(step_); }
    double phase_at(std::uint64_t n) const;
    double alpha() const { return alpha_; }
    std::uint64_t step() const { return step_; }

private:
    double alpha_;
    double x0_;
    std::uint64_t step_ = 0;
};

// i.i.d. symbols 1..k with law p, driven by std::mt19937_64. The mapping from
// raw 64-bit words to symbols is done here (53-bit uniform, cumulative
// search) rather than through std:: distributions, which are not specified
// bit-for-bit across standard libraries.
class BernoulliDriver {
public:
    // Throws std::invalid_argument unless k >= 2, every p_i is in (0, 1) and
    // the p_i sum to 1 within 1e-12.
    BernoulliDriver(std::vector<double> probabilities, std::uint64_t seed);
    static BernoulliDriver uniform(int k, std::uint64_t seed);

    int next();
    int alphabet_size() const { return static_cast<int>(probabilities_.size()); }
    const std::vector<double>& probabilities() const { return probabilities_; }
    std::uint64_t seed() const { return seed_; }

private:
    std::vector<double> probabilities_;
    std::vector<double> cumulative_;
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

// Hyperbolic toral map: either the linear automorphism x -> A x (mod 1) for an
// integer matrix with det 1, or the perturbation
//   g(x, y) = (2x + y + eps sin(2 pi (x + y)), x + y)  (mod 1).
class ToralDriver {
public:
    // Throws std::invalid_argument unless A has integer entries and det 1.
    static ToralDriver linear(const Mat2& a, TorusPoint start);
    static ToralDriver perturbed(double epsilon, TorusPoint start);

    // Returns the current point, then advances.
    TorusPoint next();
    TorusPoint point() const { return point_; }
    TorusPoint apply(TorusPoint p) const;

    bool is_linear() const { return linear_; }
    double epsilon() const { return epsilon_; }
    const Mat2& matrix() const { return matrix_; }

private:
    ToralDriver(bool linear, const Mat2& m, double eps, TorusPoint start);

    bool linear_;
    Mat2 matrix_;
    double epsilon_;
    TorusPoint point_;
};

// Any of the base systems, behind one stateful interface.
class OrbitDriver {
public:
    OrbitDriver(RotationDriver d) : impl_(std::move(d)) {}  // NOLINT
    OrbitDriver(BernoulliDriver d) : impl_(std::move(d)) {}  // NOLINT
    OrbitDriver(ToralDriver d) : impl_(std::move(d)) {}  // NOLINT

    BasePoint next();

    template <class D>
    const D* as() const {
        return std::get_if<D>(&impl_);
    }

private:
    std::variant<RotationDriver, BernoulliDriver, ToralDriver> impl_;
};

// (1/n) * sum of the observable over the first n orbit points. Throws
// std::invalid_argument for n == 0.
double birkhoff_average(OrbitDriver& driver,
                        const std::function<double(const BasePoint&)>& observable,
                        std::uint64_t n);

}  // namespace cocycle
