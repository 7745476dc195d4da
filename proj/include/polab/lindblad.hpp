// lindblad.hpp — three-level master-equation reference solver for the probe response
#pragma once

#include "polab/numerics.hpp"

namespace polab {

// Decay and dephasing rates for the driven three-level ladder {|1>, |2>, |3>}.
// gamma_31 and gamma_32 drain |3> into |1> and |2>; gamma_21 drains |2> into
// |1>.  The optional pure-dephasing rates act on the level populations without
// transferring any.  All rates are linear frequencies in MHz.
struct ThreeLevelChannels {
    double gamma_31 = 0.0;
    double gamma_32 = 0.0;
    double gamma_21 = 0.0;
    double gamma_3deph = 0.0;
    double gamma_2deph = 0.0;

    // Throws std::invalid_argument if any rate is negative or non-finite.
    void validate() const;
};

// Builds the 9x9 generator of the master equation in column-stacked
// (column-major) vectorisation.  The coherent part uses the doubly rotating
// frame: H = diag(0, Delta_1 - Delta_2, Delta_1)
//            - (probe_amplitude/2)(|3><1| + h.c.) - (Omega_c/2)(|3><2| + h.c.),
// where Delta_1 is the probe detuning from the 3-1 transition and Delta_2 the
// control detuning from the 3-2 transition.  The dissipative part is the
// standard Lindblad form for the channels above.
ComplexMatrix build_liouvillian(const ThreeLevelChannels& channels,
                                double Omega_c, double Delta_1, double Delta_2,
                                double probe_amplitude = 0.0);

// Solves generator * vec(rho) = 0 subject to tr(rho) = 1 by replacing the
// first row with the trace functional.  Before solving, verifies that the
// null space is one-dimensional (second-smallest singular value must exceed
// 1e6 times the smallest); throws std::runtime_error otherwise, which happens
// when some level decouples (e.g. all rates touching |2> vanish with no
// control drive).  The result is Hermitised before returning.
ComplexMatrix steady_state(const ComplexMatrix& liouvillian);

// Throws std::runtime_error unless rho is Hermitian (within tol), has unit
// trace (within tol) and is positive semidefinite (eigenvalues >= -tol).
void validate_density_matrix(const ComplexMatrix& rho, double tol = 1e-9);

// Probe susceptibility extracted from the driven steady state:
// chi = 2 rho_31 / epsilon evaluated at probe detuning delta (so
// Delta_1 = delta + Delta_2).  epsilon <= 0 selects the default probe
// amplitude 1e-3 * max(Gamma_31, Omega_c) with Gamma_31 = gamma_31 +
// gamma_32 + gamma_3deph; explicit values above that bound are rejected with
// std::invalid_argument because the result would leave the linear-response
// regime.  The response is evaluated at epsilon and epsilon/2 and the two
// must agree to 1e-4 relative; a mismatch raises std::runtime_error.  Returns
// the epsilon/2 evaluation.
cplx linear_response_chi(const ThreeLevelChannels& channels, double Omega_c,
                         double Delta_2, double delta, double epsilon = 0.0);

}  // namespace polab
