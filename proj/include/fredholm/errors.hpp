#pragma once

#include <stdexcept>
#include <string>

namespace fredholm {

/// Kernel numerator evaluated at a point where it has no limit.
class UndefinedPointError : public std::domain_error {
public:
    UndefinedPointError(double t, double v)
        : std::domain_error("numerator has no limit at (" + std::to_string(t) + ", " +
                            std::to_string(v) + "); regularize first"),
          t_(t), v_(v) {}

    double t() const noexcept { return t_; }
    double v() const noexcept { return v_; }

private:
    double t_;
    double v_;
};

/// Zero pivot met during LU factorization.
class SingularMatrixError : public std::runtime_error {
public:
    explicit SingularMatrixError(int pivot_index)
        : std::runtime_error("singular system matrix: zero pivot at index " +
                             std::to_string(pivot_index)),
          pivot_index_(pivot_index) {}

    int pivot_index() const noexcept { return pivot_index_; }

private:
    int pivot_index_;
};

/// Adaptive quadrature stopped at maximum depth above the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(double achieved_estimate, double requested_tol)
        : std::runtime_error("quadrature did not converge: achieved error estimate " +
                             std::to_string(achieved_estimate) + " > requested " +
                             std::to_string(requested_tol)),
          achieved_estimate_(achieved_estimate), requested_tol_(requested_tol) {}

    double achieved_estimate() const noexcept { return achieved_estimate_; }
    double requested_tol() const noexcept { return requested_tol_; }

private:
    double achieved_estimate_;
    double requested_tol_;
};

} // namespace fredholm
