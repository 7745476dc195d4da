// spectroscopy.hpp — probe-field susceptibility, pole decomposition, and regimes
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "polab/transitions.hpp"

namespace polab {

/// Effective three-level rates driving the probe response.
///   Gamma_31: coherence decay of level 3 (MHz)
///   gamma_21: decay/coherence rate of the 2-1 leg (MHz)
///   Omega_c:  control Rabi frequency (MHz)
///   Delta_2:  control detuning omega_32 - omega_c (MHz)
struct ThreeLevelRates {
    double Gamma_31 = 0.0;
    double gamma_21 = 0.0;
    double Omega_c = 0.0;
    double Delta_2 = 0.0;

    void validate() const;  // throws std::invalid_argument on negative rates
};

/// Rates in the documented dephasing mode: spontaneous 2->1 decay is dropped
/// and pure dephasing of levels 3 and 2 enters instead, giving
/// Gamma_31 = gamma_31 + gamma_32 + gamma_3deph and gamma_21 = gamma_2deph.
ThreeLevelRates rates_with_dephasing(double gamma_31, double gamma_32, double gamma_3deph,
                                     double gamma_2deph, double Omega_c, double Delta_2);

/// Probe susceptibility at two-photon detuning delta (arbitrary units, unit
/// numerator coefficient):
///   chi(delta) = (delta - i gamma_21/2) /
///                [(delta + Delta_2 - i Gamma_31/2)(delta - i gamma_21/2) - Omega_c^2/4]
/// The width Gamma_31 rides with the one-photon detuning delta + Delta_2 and
/// gamma_21 with the two-photon detuning delta, as the master equation gives;
/// at Delta_2 = 0 this is insensitive to the pairing. Throws
/// std::domain_error when the denominator is exactly zero (degenerate point
/// delta = 0 with gamma_21 = Omega_c = 0).
cplx susceptibility(const ThreeLevelRates& r, double delta);

struct SusceptibilitySpectrum {
    std::vector<double> delta;  // MHz
    ComplexVector chi;
};
SusceptibilitySpectrum susceptibility_spectrum(const ThreeLevelRates& r,
                                               const std::vector<double>& delta_grid);

enum class SpectralRegime { EIT, ATS, AT_THRESHOLD };

/// Splitting of chi into two simple poles (resonant control, Delta_2 = 0):
///   delta_pm = i (Gamma_31+gamma_21)/4 +- (1/2) sqrt(Omega_c^2 - (Gamma_31-gamma_21)^2/4)
///   chi_pm   = +-(delta_pm - i gamma_21/2) / (delta_plus - delta_minus)
/// so that chi(delta) = chi_plus/(delta - delta_plus) + chi_minus/(delta - delta_minus).
/// When the two poles coincide within 1e-9 MHz the residues blow up; they are
/// then left zero and `double_pole` is set instead.
struct LorentzianDecomposition {
    cplx delta_plus;
    cplx delta_minus;
    cplx chi_plus;
    cplx chi_minus;
    SpectralRegime regime = SpectralRegime::EIT;
    bool double_pole = false;
};
LorentzianDecomposition pole_decomposition(const ThreeLevelRates& r);

/// Boundary control amplitude |Gamma_31 - gamma_21| / 2 separating the
/// split-pole (ATS) and coincident-center (EIT) regimes.
double eit_ats_threshold(double Gamma_31, double gamma_21);

/// Rabi frequencies seen by the three-level subsystem for bare drive
/// amplitudes applied at the cavity port:
///   Omega_c = A_c * C_32, Omega_p = A_p * C_31.
std::pair<double, double> effective_rabi(double A_c, double A_p, const TransitionTable& t);

/// Transparency-window practicality bound |Omega_c| < gamma_c / 2 (strict).
bool eit_condition_check(double Omega_c, double gamma_c);

/// Full chain from system parameters to a probe spectrum: exact four-level
/// basis -> transition table -> decay rates -> three-level reduction ->
/// susceptibility on the given detuning grid. The control frequency
/// omega_c_rot is in the drive rotating frame (the frame all level energies
/// are quoted in); the lab-frame value omega_c_rot + omega_d is echoed back.
/// gamma_21 is recomputed per parameter point as gamma_q * Q_21^2.
struct SpectrumPipelineResult {
    ThreeLevelRates rates;
    TransitionTable table;           // rates filled
    Classification classification;   // Lambda-type required
    double Omega_p = 0.0;
    double omega_31 = 0.0;           // MHz, rotating frame
    double omega_32 = 0.0;           // MHz, rotating frame
    double omega_c_rotating = 0.0;   // MHz
    double omega_c_lab = 0.0;        // MHz
    SusceptibilitySpectrum spectrum;
    std::optional<LorentzianDecomposition> decomposition;  // when |Delta_2| < 1e-6
    SpectralRegime regime = SpectralRegime::EIT;
};
SpectrumPipelineResult absorption_spectrum_pipeline(const SystemParams& p, const HilbertSpace& h,
                                                    double A_c, double A_p, double omega_c_rot,
                                                    const std::vector<double>& delta_grid);

}  // namespace polab
