#include "sglab/matrix_backend.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "sglab/errors.hpp"
#include "sglab/quadrature.hpp"

namespace sglab {

namespace {

using Complex = std::complex<double>;

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

DenseOperator::DenseOperator(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols())
        throw ValidationError("dense operator: matrix must be square and nonempty");
    if (!entries_.allFinite())
        throw ValidationError("dense operator: entries must be finite");
    Eigen::ComplexEigenSolver<Matrix> ces(entries_, /*computeEigenvectors=*/false);
    if (ces.info() != Eigen::Success)
        throw NumericsError("dense operator: eigenvalue computation failed");
    eigenvalues_ = ces.eigenvalues();
    abscissa_ = eigenvalues_.real().maxCoeff();
    if (!(abscissa_ < 0.0))
        throw ValidationError("dense operator: spectral abscissa must be < 0");
}

std::string DenseOperator::to_json() const {
    nlohmann::json j;
    j["dim"] = entries_.rows();
    auto& list = j["entries"] = nlohmann::json::array();
    for (Eigen::Index r = 0; r < entries_.rows(); ++r)
        for (Eigen::Index c = 0; c < entries_.cols(); ++c)
            list.push_back({entries_(r, c).real(), entries_(r, c).imag()});
    return j.dump();
}

DenseOperator DenseOperator::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("dense operator: invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_unsigned())
        throw ValidationError("dense operator: JSON needs an integer \"dim\"");
    const auto n = j["dim"].get<Eigen::Index>();
    if (!j.contains("entries") || !j["entries"].is_array() ||
        j["entries"].size() != static_cast<std::size_t>(n * n))
        throw ValidationError("dense operator: \"entries\" must hold dim^2 [re, im] pairs");
    Matrix m(n, n);
    std::size_t idx = 0;
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c, ++idx) {
            const auto& e = j["entries"][idx];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw ValidationError("dense operator: entry " + std::to_string(idx) +
                                      " is not an [re, im] pair");
            m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
        }
    }
    return DenseOperator(std::move(m));
}

DenseOperator DenseOperator::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("dense operator: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

Matrix expm(const Matrix& a, double t) {
    if (!(t >= 0.0)) throw ValidationError("expm: t must be >= 0");
    Matrix scaled = a * t;
    Matrix result = scaled.exp();
    if (!result.allFinite())
        throw NumericsError("expm: overscaling, result is not finite (t too large for conditioning)");
    return result;
}

Matrix expm(const DenseOperator& a, double t) { return expm(a.entries(), t); }

Matrix cayley(const DenseOperator& a, double tau) {
    if (!(tau > 0.0)) throw ValidationError("cayley: tau must be > 0");
    const Eigen::Index n = a.dim();
    const Matrix id = Matrix::Identity(n, n);
    const Matrix minus = id - 0.5 * tau * a.entries();
    const Matrix plus = id + 0.5 * tau * a.entries();
    Eigen::PartialPivLU<Matrix> lu(minus);
    Matrix x = lu.solve(plus);
    const Matrix residual = minus * x - plus;
    for (Eigen::Index c = 0; c < n; ++c) {
        const double scale = std::max(plus.col(c).norm(), 1.0);
        if (!(residual.col(c).norm() <= 1e-12 * scale))
            throw NumericsError("cayley: singular solve (residual above 1e-12 per column scale)");
    }
    return x;
}

Matrix lyapunov_solve(const DenseOperator& a, double xi) {
    if (!(xi >= 0.0)) throw ValidationError("lyapunov_solve: xi must be >= 0");
    const Eigen::Index n = a.dim();
    if (n > 200) throw ValidationError("lyapunov_solve: dimension cap (200) exceeded; use lyapunov_quadrature");
    if (!(a.spectral_abscissa() - xi < 0.0))
        throw ValidationError("lyapunov_solve: A - xi I must be stable");

    const Matrix m = a.entries() - xi * Matrix::Identity(n, n);
    const Matrix mh = m.adjoint();
    // vec(M* P) + vec(P M) = (I (x) M*) vec(P) + (M^T (x) I) vec(P)
    Matrix big = Matrix::Zero(n * n, n * n);
    for (Eigen::Index j = 0; j < n; ++j)
        big.block(j * n, j * n, n, n) = mh;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index l = 0; l < n; ++l)
                big(j * n + i, l * n + i) += m(l, j);
    Vector rhs = Vector::Zero(n * n);
    for (Eigen::Index i = 0; i < n; ++i) rhs(i * n + i) = -1.0;

    Vector sol = big.partialPivLu().solve(rhs);
    Matrix p(n, n);
    for (Eigen::Index j = 0; j < n; ++j) p.col(j) = sol.segment(j * n, n);
    p = 0.5 * (p + p.adjoint()).eval();

    const Matrix residual = mh * p + p * m + Matrix::Identity(n, n);
    if (!(max_abs(residual) <= 1e-10 * std::max(1.0, max_abs(p))))
        throw NumericsError("lyapunov_solve: residual above 1e-10");
    Eigen::SelfAdjointEigenSolver<Matrix> es(p, Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues().minCoeff() > 0.0))
        throw ValidationError("lyapunov_solve: indefinite P signals a violated precondition");
    return p;
}

Matrix lyapunov_quadrature(const DenseOperator& a, double xi, double rel_tol) {
    if (!(xi >= 0.0)) throw ValidationError("lyapunov_quadrature: xi must be >= 0");
    const double rate = 2.0 * (xi - a.spectral_abscissa());
    auto integrand = [&a, xi](double t) -> Matrix {
        const Matrix e = expm(a, t);
        return std::exp(-2.0 * xi * t) * (e.adjoint() * e);
    };
    auto norm = [](const Matrix& m) { return m.cwiseAbs().maxCoeff(); };

    Matrix total = Matrix::Zero(a.dim(), a.dim());
    double lo = 0.0;
    double len = 1.0 / rate;
    int quiet = 0;
    QuadOptions opts;
    opts.rel_tol = rel_tol * 0.1;
    for (int chunk = 0; chunk < 120; ++chunk) {
        auto piece = integrate_general(integrand, norm, lo, lo + len, opts);
        if (!piece.converged)
            throw QuadratureError("lyapunov_quadrature: chunk did not converge");
        total += piece.value;
        const double cutoff = std::max(1e-14, 0.25 * rel_tol * norm(total));
        quiet = (norm(piece.value) <= cutoff) ? quiet + 1 : 0;
        if (quiet >= 2) return total;
        lo += len;
        len *= 2.0;
    }
    throw QuadratureError("lyapunov_quadrature: integral did not settle");
}

Matrix frac_power(const DenseOperator& a, double alpha) {
    const Eigen::Index n = a.dim();
    Eigen::ComplexEigenSolver<Matrix> ces(a.entries());
    if (ces.info() != Eigen::Success)
        throw NumericsError("frac_power: eigendecomposition failed");
    const Matrix v = ces.eigenvectors();
    Eigen::JacobiSVD<Matrix> svd(v);
    const double cond = svd.singularValues()(0) / svd.singularValues()(n - 1);
    if (!(cond <= 1e6))
        throw ValidationError("frac_power: eigenbasis condition number above 1e6");
    Vector powered(n);
    for (Eigen::Index i = 0; i < n; ++i)
        powered(i) = std::pow(-ces.eigenvalues()(i), Complex(alpha));
    const Matrix vinv = v.partialPivLu().solve(Matrix::Identity(n, n));
    return v * powered.asDiagonal() * vinv;
}

namespace {

// Truncation height H for the inner eta-integral at a given xi: beyond H the
// resolvent obeys ||(xi - i eta + B)^{-2}|| <= 1/(|eta| - w)^2 with w the
// numerical radius bound, and |f'| <= (t + alpha rho)/rho^{alpha+2}. The tail
//   2 int_H^inf 4 (t/eta^{alpha+4} + alpha/eta^{alpha+3}) deta
// is pushed below the per-xi budget.
double truncation_height(const FunctionFamily& f, double w, double budget) {
    double h = std::max(2.0 * w + 2.0, 4.0);
    for (int i = 0; i < 200; ++i) {
        const double tail = 8.0 * (f.t / ((f.alpha + 3.0) * std::pow(h, f.alpha + 3.0)) +
                                   (f.alpha > 0.0
                                        ? f.alpha / ((f.alpha + 2.0) * std::pow(h, f.alpha + 2.0))
                                        : 0.0));
        if (tail <= budget) return h;
        h *= 2.0;
    }
    throw QuadratureError("bcalc_apply: cannot certify the eta truncation");
}

} // namespace

Matrix bcalc_apply(const FunctionFamily& f, const Matrix& b, double tol) {
    if (b.rows() == 0 || b.rows() != b.cols())
        throw ValidationError("bcalc_apply: B must be square and nonempty");
    const Eigen::Index n = b.rows();
    const Matrix id = Matrix::Identity(n, n);

    // numerical-range check: -B dissipative means W(B) lies in Re >= 0, which
    // gives both the contraction bound K = 1 and the resolvent estimates.
    Eigen::SelfAdjointEigenSolver<Matrix> herm(0.5 * (b + b.adjoint()), Eigen::EigenvaluesOnly);
    if (!(herm.eigenvalues().minCoeff() >= -1e-10))
        throw ValidationError(
            "bcalc_apply: -B fails the numerical-range dissipativity check (semigroup not "
            "certified bounded)");
    const double w_radius = b.operatorNorm();

    auto mat_norm = [](const Matrix& m) { return m.cwiseAbs().maxCoeff(); };
    QuadOptions inner_opts;
    inner_opts.rel_tol = 3e-10;
    inner_opts.abs_floor = 1e-16;
    QuadOptions outer_opts;
    outer_opts.rel_tol = 1e-9;
    outer_opts.abs_floor = 1e-15;

    double quad_error = 0.0;

    auto inner_integral = [&](double xi) -> Matrix {
        auto node = [&](double eta) -> Matrix {
            const Matrix shifted = Complex(xi, -eta) * id + b;
            const Matrix r = shifted.partialPivLu().solve(id);
            return (r * r) * f.derivative(Complex(xi, eta));
        };
        const double budget = 0.125 * tol / (1.0 + xi) / (1.0 + xi) / std::max(xi, 1e-8);
        const double h = truncation_height(f, w_radius, budget);
        Matrix acc = Matrix::Zero(n, n);
        // geometric bands keep the adaptive panels near the resolvent scale
        std::vector<double> cuts{0.0, 1.0};
        while (cuts.back() < h) cuts.push_back(std::min(cuts.back() * 2.0, h));
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            auto pos = integrate_general(node, mat_norm, cuts[i], cuts[i + 1], inner_opts);
            auto neg = integrate_general(node, mat_norm, -cuts[i + 1], -cuts[i], inner_opts);
            if (!pos.converged || !neg.converged)
                throw QuadratureError("bcalc_apply: inner eta panel did not converge");
            acc += pos.value + neg.value;
        }
        return acc;
    };

    auto outer_node = [&](double xi) -> Matrix { return xi * inner_integral(xi); };

    const double big = std::max({16.0, 4.0 * f.t, 2.0 * w_radius});
    std::vector<double> cuts{0.0, 1.0};
    while (cuts.back() < big) cuts.push_back(std::min(cuts.back() * 2.0, big));
    Matrix total = Matrix::Zero(n, n);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto piece = integrate_general(outer_node, mat_norm, cuts[i], cuts[i + 1], outer_opts);
        if (!piece.converged) throw QuadratureError("bcalc_apply: outer xi panel did not converge");
        total += piece.value;
        quad_error += piece.error;
    }
    // tail xi > big via xi = 1/v - 1
    auto tail_node = [&](double v) -> Matrix {
        const double xi = 1.0 / v - 1.0;
        return outer_node(xi) * (1.0 / (v * v));
    };
    auto tail = integrate_general(tail_node, mat_norm, 0.0, 1.0 / (big + 1.0), outer_opts);
    if (!tail.converged) throw QuadratureError("bcalc_apply: outer tail did not converge");
    total += tail.value;
    quad_error += tail.error;
    if (!(quad_error < tol))
        throw QuadratureError("bcalc_apply: accumulated quadrature error above the target");

    return f.at_infinity() * id - (2.0 / std::numbers::pi) * total;
}

double measured_semigroup_sup(const Matrix& generator, double t_hi) {
    double sup = 1.0; // t = 0
    for (double t = 1e-3; t <= t_hi; t *= 2.0) {
        const Matrix e = expm(generator, t);
        sup = std::max(sup, e.operatorNorm());
    }
    return sup;
}

} // namespace sglab
