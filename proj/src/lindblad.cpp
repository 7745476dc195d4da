// lindblad.cpp — three-level master-equation reference solver
#include "polab/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace polab {

namespace {

ComplexMatrix transpose(const ComplexMatrix& m) {
    ComplexMatrix t(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

ComplexMatrix conjugate(const ComplexMatrix& m) {
    ComplexMatrix c(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = std::conj(m(i, j));
    return c;
}

// Column-stacked superoperator for rate * (L rho L† - {L†L, rho}/2).
ComplexMatrix dissipator(const ComplexMatrix& jump, double rate) {
    const ComplexMatrix id = ComplexMatrix::identity(jump.rows());
    const ComplexMatrix ldl = jump.adjoint() * jump;
    ComplexMatrix d = kronecker(conjugate(jump), jump);
    d += kronecker(id, ldl).scaled(-0.5);
    d += kronecker(transpose(ldl), id).scaled(-0.5);
    return d.scaled(rate);
}

ComplexMatrix basis_unit(std::size_t i, std::size_t j) {
    ComplexMatrix e(3, 3);
    e(i, j) = 1.0;
    return e;
}

}  // namespace

void ThreeLevelChannels::validate() const {
    const struct {
        const char* name;
        double value;
    } rates[] = {{"gamma_31", gamma_31},
                 {"gamma_32", gamma_32},
                 {"gamma_21", gamma_21},
                 {"gamma_3deph", gamma_3deph},
                 {"gamma_2deph", gamma_2deph}};
    for (const auto& r : rates) {
        if (!std::isfinite(r.value) || r.value < 0.0) {
            std::ostringstream msg;
            msg << "decay channel " << r.name << " must be finite and non-negative, got "
                << r.value;
            throw std::invalid_argument(msg.str());
        }
    }
}

ComplexMatrix build_liouvillian(const ThreeLevelChannels& channels, double Omega_c,
                                double Delta_1, double Delta_2,
                                double probe_amplitude) {
    channels.validate();
    if (!std::isfinite(Omega_c) || Omega_c < 0.0)
        throw std::invalid_argument("control amplitude Omega_c must be finite and non-negative");
    if (!std::isfinite(probe_amplitude) || probe_amplitude < 0.0)
        throw std::invalid_argument("probe amplitude must be finite and non-negative");
    if (!std::isfinite(Delta_1) || !std::isfinite(Delta_2))
        throw std::invalid_argument("detunings must be finite");

    ComplexMatrix h(3, 3);
    h(1, 1) = Delta_1 - Delta_2;
    h(2, 2) = Delta_1;
    h(2, 0) = -0.5 * probe_amplitude;
    h(0, 2) = -0.5 * probe_amplitude;
    h(2, 1) = -0.5 * Omega_c;
    h(1, 2) = -0.5 * Omega_c;

    const ComplexMatrix id = ComplexMatrix::identity(3);
    ComplexMatrix gen = (kronecker(id, h) - kronecker(transpose(h), id)).scaled(cplx{0.0, -1.0});
    gen += dissipator(basis_unit(0, 2), channels.gamma_31);
    gen += dissipator(basis_unit(1, 2), channels.gamma_32);
    gen += dissipator(basis_unit(0, 1), channels.gamma_21);
    gen += dissipator(basis_unit(2, 2), channels.gamma_3deph);
    gen += dissipator(basis_unit(1, 1), channels.gamma_2deph);
    return gen;
}

ComplexMatrix steady_state(const ComplexMatrix& liouvillian) {
    const std::size_t n = liouvillian.rows();
    if (n == 0 || liouvillian.cols() != n)
        throw std::invalid_argument("steady_state: generator must be square");
    const std::size_t dim = static_cast<std::size_t>(std::lround(std::sqrt(double(n))));
    if (dim * dim != n)
        throw std::invalid_argument("steady_state: generator size must be a perfect square");

    // A unique stationary state requires a one-dimensional null space; compare
    // the two smallest singular values.  Eigenvalues of the Gram matrix below
    // the solver's resolution floor are genuine zeros up to rounding, so clamp
    // them before forming the ratio.
    const ComplexMatrix gram_matrix = liouvillian.adjoint() * liouvillian;
    const double zero_floor = 1e-12 * gram_matrix.frobenius_norm();
    Eigensystem gram = hermitian_eigendecompose(gram_matrix);
    const double sv0 = gram.values[0] > zero_floor ? std::sqrt(gram.values[0]) : 0.0;
    const double sv1 = gram.values[1] > zero_floor ? std::sqrt(gram.values[1]) : 0.0;
    if (!(sv1 > 1e6 * sv0) || sv1 == 0.0) {
        std::ostringstream msg;
        msg << "steady_state: stationary state is not unique (two smallest singular values "
            << sv0 << " and " << sv1
            << "); some level is dynamically decoupled from the rest";
        throw std::runtime_error(msg.str());
    }

    ComplexMatrix a = liouvillian;
    for (std::size_t j = 0; j < n; ++j) a(0, j) = 0.0;
    for (std::size_t j = 0; j < dim; ++j) a(0, j * (dim + 1)) = 1.0;
    ComplexVector b(n, cplx{0.0, 0.0});
    b[0] = 1.0;

    ComplexMatrix rho = devectorize_columns(solve_linear(a, b), dim, dim);
    ComplexMatrix herm(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            herm(i, j) = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
    return herm;
}

void validate_density_matrix(const ComplexMatrix& rho, double tol) {
    const std::size_t n = rho.rows();
    if (n == 0 || rho.cols() != n)
        throw std::runtime_error("density matrix must be square and non-empty");

    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            asym = std::max(asym, std::abs(rho(i, j) - std::conj(rho(j, i))));
    if (asym > tol) {
        std::ostringstream msg;
        msg << "density matrix is not Hermitian: max |rho_ij - conj(rho_ji)| = " << asym;
        throw std::runtime_error(msg.str());
    }

    cplx trace{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) trace += rho(i, i);
    if (std::abs(trace - cplx{1.0, 0.0}) > tol) {
        std::ostringstream msg;
        msg << "density matrix trace deviates from one by " << std::abs(trace - cplx{1.0, 0.0});
        throw std::runtime_error(msg.str());
    }

    ComplexMatrix herm(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            herm(i, j) = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
    Eigensystem es = hermitian_eigendecompose(herm);
    if (es.values.front() < -tol) {
        std::ostringstream msg;
        msg << "density matrix has a negative eigenvalue " << es.values.front();
        throw std::runtime_error(msg.str());
    }
}

cplx linear_response_chi(const ThreeLevelChannels& channels, double Omega_c,
                         double Delta_2, double delta, double epsilon) {
    channels.validate();
    if (!std::isfinite(Omega_c) || Omega_c < 0.0)
        throw std::invalid_argument("control amplitude Omega_c must be finite and non-negative");
    if (!std::isfinite(Delta_2) || !std::isfinite(delta))
        throw std::invalid_argument("detunings must be finite");

    const double Gamma_31 = channels.gamma_31 + channels.gamma_32 + channels.gamma_3deph;
    const double bound = 1e-3 * std::max(Gamma_31, Omega_c);
    double eps = epsilon;
    if (eps <= 0.0) eps = bound;
    if (!(eps > 0.0))
        throw std::invalid_argument(
            "linear_response_chi: no probe scale available; all upper-level decay rates and "
            "the control amplitude vanish");
    if (eps > bound * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "probe amplitude " << eps << " exceeds the linear-response bound " << bound
            << " (1e-3 * max(Gamma_31, Omega_c))";
        throw std::invalid_argument(msg.str());
    }

    const auto respond = [&](double amplitude) {
        ComplexMatrix rho = steady_state(
            build_liouvillian(channels, Omega_c, delta + Delta_2, Delta_2, amplitude));
        return 2.0 * rho(2, 0) / amplitude;
    };
    const cplx chi_full = respond(eps);
    const cplx chi_half = respond(0.5 * eps);
    if (std::abs(chi_full - chi_half) > 1e-4 * std::abs(chi_half) + 1e-9) {
        std::ostringstream msg;
        msg << "probe response is nonlinear at amplitude " << eps << ": |chi(eps) - chi(eps/2)| = "
            << std::abs(chi_full - chi_half) << "; reduce the probe amplitude";
        throw std::runtime_error(msg.str());
    }
    return chi_half;
}

}  // namespace polab
