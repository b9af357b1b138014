#pragma once

#include <string>

#include <Eigen/Dense>

#include "sglab/bcalculus.hpp"

namespace sglab {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Dense complex matrix with spectrum in the open left half-plane: the
// finite-dimensional stand-in for a (possibly non-normal) generator.
class DenseOperator {
public:
    explicit DenseOperator(Matrix entries);

    const Matrix& entries() const { return entries_; }
    Eigen::Index dim() const { return entries_.rows(); }
    double spectral_abscissa() const { return abscissa_; }
    const Vector& eigenvalues() const { return eigenvalues_; }

    // {"dim": n, "entries": [[re, im], ...]} with entries row-major
    std::string to_json() const;
    static DenseOperator from_json(const std::string& text);
    static DenseOperator load(const std::string& path);

private:
    Matrix entries_;
    Vector eigenvalues_;
    double abscissa_ = 0.0;
};

// e^{a t} by scaling-and-squaring with a diagonal Pade core. Throws
// NumericsError when the result degrades to non-finite entries.
Matrix expm(const Matrix& a, double t);
Matrix expm(const DenseOperator& a, double t);

// Cayley transform (I + tau/2 A)(I - tau/2 A)^{-1} by linear solve; the
// residual is checked against 1e-12 per column scale.
Matrix cayley(const DenseOperator& a, double tau);

// Self-adjoint positive P with (A - xi I)* P + P (A - xi I) = -I, via the
// n^2 x n^2 vectorized system. Dimension capped at 200.
Matrix lyapunov_solve(const DenseOperator& a, double xi);

// Quadrature of the defining integral int_0^inf e^{-2 xi t} (e^{At})* e^{At} dt;
// the independent oracle for lyapunov_solve (and the fallback beyond the cap).
Matrix lyapunov_quadrature(const DenseOperator& a, double xi, double rel_tol = 1e-10);

// (-A)^alpha via eigendecomposition with the principal branch. Rejects
// eigenbases with condition number above 1e6.
Matrix frac_power(const DenseOperator& a, double alpha);

// f(B) by the double-integral functional calculus
//   f(B) = f(inf) I - (2/pi) int_0^inf xi int_R (xi - i eta + B)^{-2} f'(xi + i eta) deta dxi.
// Requires -B dissipative (numerical-range check), which certifies a
// contraction semigroup and the truncation bounds of the inner integral.
Matrix bcalc_apply(const FunctionFamily& f, const Matrix& b, double tol = 1e-8);

// sup over a dyadic time grid of ||e^{generator t}||_2; the measured semigroup
// bound K used when checking the calculus norm estimate.
double measured_semigroup_sup(const Matrix& generator, double t_hi = 1e4);

} // namespace sglab
