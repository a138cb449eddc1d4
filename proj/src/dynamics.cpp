#include "cocycle/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace cocycle {

double frac(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;  // x a tiny negative number
    return f;
}

double circle_distance(double x, double y) {
    const double d = frac(x - y);
    return std::min(d, 1.0 - d);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

RotationDriver::RotationDriver(double alpha, double x0) : alpha_(frac(alpha)), x0_(frac(x0)) {
    if (!std::isfinite(alpha) || !std::isfinite(x0)) {
        throw std::invalid_argument("rotation: alpha and x0 must be finite");
    }
}

double RotationDriver::phase_at(std::uint64_t n) const {
    const double nd = static_cast<double>(n);
    const double prod = nd * alpha_;
    const double err = std::fma(nd, alpha_, -prod);  // exact remainder of the product
    return frac(frac(prod) + (x0_ + err));
}

double RotationDriver::next() {
    const double x = phase_at(step_);
    ++step_;
    return x;
}

BernoulliDriver::BernoulliDriver(std::vector<double> probabilities, std::uint64_t seed)
    : probabilities_(std::move(probabilities)), seed_(seed), engine_(seed) {
    if (probabilities_.size() < 2) {
        throw std::invalid_argument("bernoulli: alphabet needs at least 2 symbols");
    }
    double sum = 0.0;
    for (double p : probabilities_) {
        if (!(p > 0.0 && p < 1.0)) {
            throw std::invalid_argument("bernoulli: every probability must lie in (0, 1)");
        }
        sum += p;
        cumulative_.push_back(sum);
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("bernoulli: probabilities must sum to 1");
    }
}

BernoulliDriver BernoulliDriver::uniform(int k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("bernoulli: alphabet needs at least 2 symbols");
    return BernoulliDriver(std::vector<double>(static_cast<std::size_t>(k), 1.0 / k), seed);
}

int BernoulliDriver::next() {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    const auto k = cumulative_.size();
    for (std::size_t i = 0; i + 1 < k; ++i) {
        if (u < cumulative_[i]) return static_cast<int>(i) + 1;
    }
    return static_cast<int>(k);
}

ToralDriver::ToralDriver(bool linear, const Mat2& m, double eps, TorusPoint start)
    : linear_(linear), matrix_(m), epsilon_(eps), point_{frac(start.x), frac(start.y)} {}

ToralDriver ToralDriver::linear(const Mat2& a, TorusPoint start) {
    for (double e : {a.a, a.b, a.c, a.d}) {
        if (e != std::round(e)) throw std::invalid_argument("toral: matrix entries must be integers");
    }
    if (a.det() != 1.0) throw std::invalid_argument("toral: matrix must have determinant 1");
    return ToralDriver(true, a, 0.0, start);
}

ToralDriver ToralDriver::perturbed(double epsilon, TorusPoint start) {
    if (!std::isfinite(epsilon)) throw std::invalid_argument("toral: epsilon must be finite");
    return ToralDriver(false, Mat2{2.0, 1.0, 1.0, 1.0}, epsilon, start);
}

TorusPoint ToralDriver::apply(TorusPoint p) const {
    if (linear_) {
        return {frac(matrix_.a * p.x + matrix_.b * p.y), frac(matrix_.c * p.x + matrix_.d * p.y)};
    }
    const double s = p.x + p.y;
    return {frac(2.0 * p.x + p.y + epsilon_ * std::sin(2.0 * std::numbers::pi * s)), frac(s)};
}

TorusPoint ToralDriver::next() {
    const TorusPoint p = point_;
    point_ = apply(point_);
    return p;
}

BasePoint OrbitDriver::next() {
    return std::visit(
        [](auto& d) -> BasePoint {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, RotationDriver>) {
                return Phase{d.next()};
            } else if constexpr (std::is_same_v<D, BernoulliDriver>) {
                return Symbol{d.next()};
            } else {
                return d.next();
            }
        },
        impl_);
}

double birkhoff_average(OrbitDriver& driver,
                        const std::function<double(const BasePoint&)>& observable,
                        std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("birkhoff_average: n must be >= 1");
    // Kahan summation.
    double sum = 0.0, comp = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double y = observable(driver.next()) - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum / static_cast<double>(n);
}

}  // namespace cocycle
