// model.cpp — Hamiltonian construction, dressed doublets, dispersive ladder
#include "polab/model.hpp"

#include <cmath>
#include <stdexcept>

namespace polab {

void SystemParams::validate() const {
    const double fields[] = {omega_q, omega_r, g, omega_d, Omega, gamma_q, gamma_c};
    for (double f : fields)
        if (!std::isfinite(f)) throw std::invalid_argument("SystemParams: non-finite field");
    if (omega_q <= 0.0) throw std::invalid_argument("SystemParams: omega_q must be positive");
    if (g < 0.0) throw std::invalid_argument("SystemParams: g must be non-negative");
    if (Omega < 0.0) throw std::invalid_argument("SystemParams: Omega must be non-negative");
    if (gamma_q < 0.0 || gamma_c < 0.0)
        throw std::invalid_argument("SystemParams: decay rates must be non-negative");
}

double SystemParams::dispersive_shift() const {
    const double delta = detuning();
    if (delta == 0.0)
        throw std::domain_error("SystemParams: dispersive shift undefined at zero detuning");
    return g * g / delta;
}

HilbertSpace::HilbertSpace(int n_max) : n_max_(n_max) {
    if (n_max < 2) throw std::invalid_argument("HilbertSpace: n_max must be at least 2");
}

std::size_t HilbertSpace::index(bool excited, int n) const {
    if (n < 0 || n > n_max_) throw std::out_of_range("HilbertSpace: photon number out of range");
    return 2 * static_cast<std::size_t>(n) + (excited ? 1 : 0);
}

ComplexMatrix build_rotating_hamiltonian(const SystemParams& p, const HilbertSpace& h) {
    p.validate();
    const double tq = p.tilde_omega_q();
    const double tr = p.tilde_omega_r();
    ComplexMatrix m(h.dimension(), h.dimension());
    for (int n = 0; n <= h.n_max(); ++n) {
        const std::size_t ig = h.index(false, n);
        const std::size_t ie = h.index(true, n);
        m(ig, ig) = -tq / 2.0 + tr * (n + 0.5);
        m(ie, ie) = +tq / 2.0 + tr * (n + 0.5);
        m(ig, ie) = p.Omega;
        m(ie, ig) = p.Omega;
    }
    for (int n = 0; n < h.n_max(); ++n) {
        const std::size_t ie = h.index(true, n);
        const std::size_t ig1 = h.index(false, n + 1);
        const double c = p.g * std::sqrt(n + 1.0);
        m(ie, ig1) = c;
        m(ig1, ie) = c;
    }
    return m;
}

ComplexMatrix qubit_lowering(const HilbertSpace& h) {
    ComplexMatrix m(h.dimension(), h.dimension());
    for (int n = 0; n <= h.n_max(); ++n) m(h.index(false, n), h.index(true, n)) = 1.0;
    return m;
}

ComplexMatrix photon_annihilation(const HilbertSpace& h) {
    ComplexMatrix m(h.dimension(), h.dimension());
    for (int n = 1; n <= h.n_max(); ++n) {
        const double amp = std::sqrt(static_cast<double>(n));
        m(h.index(false, n - 1), h.index(false, n)) = amp;
        m(h.index(true, n - 1), h.index(true, n)) = amp;
    }
    return m;
}

double ground_energy(const SystemParams& p) {
    return -p.tilde_omega_q() / 2.0 + p.tilde_omega_r() / 2.0;
}

std::pair<DressedState, DressedState> dressed_states_analytic(const SystemParams& p, int n) {
    p.validate();
    if (n < 0) throw std::invalid_argument("dressed_states_analytic: block index must be non-negative");
    const double delta = p.detuning();
    const double coupling = 2.0 * p.g * std::sqrt(n + 1.0);
    // Branch [0, pi]: continuous through pi/2 at Delta = 0 and satisfying
    // tan(theta_n) = -coupling/Delta.
    const double theta = std::atan2(coupling, -delta);
    const double half_split = 0.5 * std::hypot(delta, coupling);
    const double center = p.tilde_omega_r() * (n + 1.0);
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);

    DressedState minus{-1, n, theta, center - half_split, -s, c};
    DressedState plus{+1, n, theta, center + half_split, c, s};
    return {minus, plus};
}

double dispersive_frequency_g(const SystemParams& p, int n) {
    const double chi = p.dispersive_shift();
    return n * (p.tilde_omega_r() + chi) + p.detuning() / 2.0;
}

double dispersive_frequency_e(const SystemParams& p, int n) {
    const double chi = p.dispersive_shift();
    return p.tilde_omega_q() - chi + n * (p.tilde_omega_r() - chi) + p.detuning() / 2.0;
}

bool dispersive_approximation_ok(const SystemParams& p) {
    const double delta = p.detuning();
    if (delta == 0.0) return false;
    return std::abs(p.g / delta) < 0.3;
}

NestingWindow nesting_boundaries(const SystemParams& p) {
    const double chi = p.dispersive_shift();
    return {p.omega_q - 3.0 * chi, p.omega_q - chi};
}

bool in_nesting_regime(const SystemParams& p) {
    const NestingWindow w = nesting_boundaries(p);
    return w.lower < p.omega_d && p.omega_d < w.upper;
}

}  // namespace polab
