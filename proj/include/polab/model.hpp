// model.hpp — driven qubit-cavity system in the frame rotating at the drive
#pragma once

#include <utility>

#include "polab/numerics.hpp"

namespace polab {

/// Physical parameters. Every frequency-like quantity here, and everywhere
/// downstream, is a nu = omega/2pi value in MHz.
struct SystemParams {
    double omega_q = 5000.0;   ///< qubit transition frequency
    double omega_r = 10000.0;  ///< cavity frequency
    double g = 500.0;          ///< qubit-cavity coupling
    double omega_d = 4900.0;   ///< qubit drive frequency
    double Omega = 0.0;        ///< qubit drive amplitude
    double gamma_q = 1.0;      ///< bare qubit decay rate
    double gamma_c = 20.0;     ///< bare cavity decay rate

    /// Throws std::invalid_argument on non-finite or negative-rate inputs.
    void validate() const;

    double tilde_omega_q() const { return omega_q - omega_d; }
    double tilde_omega_r() const { return omega_r - omega_d; }
    /// Qubit-cavity detuning Delta = omega_r - omega_q; drive-independent.
    double detuning() const { return omega_r - omega_q; }
    /// Dispersive shift chi = g^2 / Delta; throws std::domain_error at Delta = 0.
    double dispersive_shift() const;
};

/// Truncated qubit ⊗ Fock space with interleaved basis ordering
/// |g,0>, |e,0>, |g,1>, |e,1>, ..., |g,n_max>, |e,n_max>.
class HilbertSpace {
public:
    explicit HilbertSpace(int n_max = 4);  // requires n_max >= 2
    int n_max() const { return n_max_; }
    std::size_t dimension() const { return 2 * static_cast<std::size_t>(n_max_ + 1); }
    std::size_t index(bool excited, int n) const;
    int photons(std::size_t idx) const { return static_cast<int>(idx / 2); }
    bool excited(std::size_t idx) const { return idx % 2 != 0; }

private:
    int n_max_;
};

/// Rotating-frame Hamiltonian: diagonal (tilde_omega_q/2)·sigma_z +
/// tilde_omega_r·(n + 1/2); coupling g*sqrt(n+1) between |e,n> and |g,n+1>;
/// drive Omega between |g,n> and |e,n>. Real symmetric by construction.
ComplexMatrix build_rotating_hamiltonian(const SystemParams& p, const HilbertSpace& h);

/// Bare lowering operators on the truncated space: sigma_minus = sum_n |g,n><e,n|
/// and the photon annihilation operator a.
ComplexMatrix qubit_lowering(const HilbertSpace& h);
ComplexMatrix photon_annihilation(const HilbertSpace& h);

/// Energy of the uncoupled ground level |g,0>: -tilde_omega_q/2 + tilde_omega_r/2.
double ground_energy(const SystemParams& p);

/// One dressed doublet from the closed-form diagonalization of the
/// (|e,n>, |g,n+1>) block at Omega = 0:
///   |+,n> =  cos(theta_n/2)|e,n> + sin(theta_n/2)|g,n+1>
///   |-,n> = -sin(theta_n/2)|e,n> + cos(theta_n/2)|g,n+1>
/// with tan(theta_n) = -2g*sqrt(n+1)/Delta on the branch [0, pi]
/// (theta_n = pi/2 exactly at Delta = 0).
struct DressedState {
    int branch;      ///< +1 or -1
    int n;           ///< block index (photon number of the |e,n> component)
    double theta_n;  ///< mixing angle
    double energy;   ///< MHz, on the same absolute scale as the Hamiltonian
    double amp_e_n;      ///< amplitude on |e,n>
    double amp_g_np1;    ///< amplitude on |g,n+1>
};

/// Returns the (minus, plus) pair for block n >= 0.
std::pair<DressedState, DressedState> dressed_states_analytic(const SystemParams& p, int n);

/// First-order dispersive ladder (chi = g^2/Delta), on the same absolute
/// scale as the Hamiltonian:
///   omega_g(n) = n(tilde_omega_r + chi) + Delta/2
///   omega_e(n) = tilde_omega_q - chi + n(tilde_omega_r - chi) + Delta/2
/// Throws std::domain_error at Delta = 0.
double dispersive_frequency_g(const SystemParams& p, int n);
double dispersive_frequency_e(const SystemParams& p, int n);

/// The dispersive ladder is a first-order result; it degrades once
/// |g/Delta| grows. True when |g/Delta| < 0.3.
bool dispersive_approximation_ok(const SystemParams& p);

/// Drive-frequency window omega_q - 3chi < omega_d < omega_q - chi in which
/// the |e,0> and |e,1> levels nest between the photon-ladder levels.
struct NestingWindow {
    double lower;  ///< omega_q - 3chi
    double upper;  ///< omega_q - chi
};
NestingWindow nesting_boundaries(const SystemParams& p);
bool in_nesting_regime(const SystemParams& p);

}  // namespace polab
