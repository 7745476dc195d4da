// spectroscopy.cpp — probe-field susceptibility, pole decomposition, and regimes
#include "polab/spectroscopy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace polab {

void ThreeLevelRates::validate() const {
    if (!(Gamma_31 >= 0.0) || !(gamma_21 >= 0.0) || !(Omega_c >= 0.0) ||
        !std::isfinite(Delta_2)) {
        std::ostringstream msg;
        msg << "ThreeLevelRates: need Gamma_31, gamma_21, Omega_c >= 0 and finite Delta_2, got "
            << "Gamma_31 = " << Gamma_31 << ", gamma_21 = " << gamma_21
            << ", Omega_c = " << Omega_c << ", Delta_2 = " << Delta_2;
        throw std::invalid_argument(msg.str());
    }
}

ThreeLevelRates rates_with_dephasing(double gamma_31, double gamma_32, double gamma_3deph,
                                     double gamma_2deph, double Omega_c, double Delta_2) {
    if (gamma_31 < 0.0 || gamma_32 < 0.0 || gamma_3deph < 0.0 || gamma_2deph < 0.0) {
        throw std::invalid_argument("rates_with_dephasing: rates must be non-negative");
    }
    ThreeLevelRates r;
    r.Gamma_31 = gamma_31 + gamma_32 + gamma_3deph;
    r.gamma_21 = gamma_2deph;
    r.Omega_c = Omega_c;
    r.Delta_2 = Delta_2;
    r.validate();
    return r;
}

cplx susceptibility(const ThreeLevelRates& r, double delta) {
    r.validate();
    const cplx num{delta, -0.5 * r.gamma_21};
    const cplx den = (cplx{delta + r.Delta_2, -0.5 * r.Gamma_31}) * num -
                     0.25 * r.Omega_c * r.Omega_c;
    if (den == cplx{0.0, 0.0}) {
        throw std::domain_error(
            "susceptibility: denominator vanished (delta = 0 with gamma_21 = Omega_c = 0)");
    }
    return num / den;
}

SusceptibilitySpectrum susceptibility_spectrum(const ThreeLevelRates& r,
                                               const std::vector<double>& delta_grid) {
    SusceptibilitySpectrum s;
    s.delta = delta_grid;
    s.chi.reserve(delta_grid.size());
    for (const double d : delta_grid) s.chi.push_back(susceptibility(r, d));
    return s;
}

LorentzianDecomposition pole_decomposition(const ThreeLevelRates& r) {
    r.validate();
    if (std::abs(r.Delta_2) >= 1e-6) {
        std::ostringstream msg;
        msg << "pole_decomposition assumes a resonant control field (Delta_2 = 0); got Delta_2 = "
            << r.Delta_2;
        throw std::invalid_argument(msg.str());
    }
    const double disc = r.Omega_c * r.Omega_c -
                        0.25 * (r.Gamma_31 - r.gamma_21) * (r.Gamma_31 - r.gamma_21);
    const cplx half_imag_center{0.0, 0.25 * (r.Gamma_31 + r.gamma_21)};
    const cplx half_split =
        (disc >= 0.0) ? cplx{0.5 * std::sqrt(disc), 0.0} : cplx{0.0, 0.5 * std::sqrt(-disc)};

    LorentzianDecomposition d;
    d.delta_plus = half_imag_center + half_split;
    d.delta_minus = half_imag_center - half_split;
    d.regime = (disc > 0.0)   ? SpectralRegime::ATS
               : (disc < 0.0) ? SpectralRegime::EIT
                              : SpectralRegime::AT_THRESHOLD;
    d.double_pole = std::abs(d.delta_plus - d.delta_minus) < 1e-9;
    if (!d.double_pole) {
        const cplx gap = d.delta_plus - d.delta_minus;
        d.chi_plus = (d.delta_plus - cplx{0.0, 0.5 * r.gamma_21}) / gap;
        d.chi_minus = -(d.delta_minus - cplx{0.0, 0.5 * r.gamma_21}) / gap;
    }
    return d;
}

double eit_ats_threshold(double Gamma_31, double gamma_21) {
    if (Gamma_31 < 0.0 || gamma_21 < 0.0) {
        throw std::invalid_argument("eit_ats_threshold: rates must be non-negative");
    }
    return 0.5 * std::abs(Gamma_31 - gamma_21);
}

std::pair<double, double> effective_rabi(double A_c, double A_p, const TransitionTable& t) {
    if (A_c < 0.0 || A_p < 0.0) {
        throw std::invalid_argument("effective_rabi: drive amplitudes must be non-negative");
    }
    return {A_c * t.C(3, 2), A_p * t.C(3, 1)};
}

bool eit_condition_check(double Omega_c, double gamma_c) {
    return std::abs(Omega_c) < 0.5 * gamma_c;
}

SpectrumPipelineResult absorption_spectrum_pipeline(const SystemParams& p, const HilbertSpace& h,
                                                    double A_c, double A_p, double omega_c_rot,
                                                    const std::vector<double>& delta_grid) {
    p.validate();
    if (!in_nesting_regime(p)) {
        const NestingWindow w = nesting_boundaries(p);
        std::ostringstream msg;
        msg << "absorption_spectrum_pipeline: drive frequency " << p.omega_d
            << " MHz lies outside the nesting window (" << w.lower << ", " << w.upper
            << ") MHz; move omega_d inside the window for Lambda operation";
        throw std::domain_error(msg.str());
    }
    if (A_c < 0.0 || A_p < 0.0 || !(A_p < A_c)) {
        std::ostringstream msg;
        msg << "absorption_spectrum_pipeline: linear response needs 0 <= A_p < A_c, got A_p = "
            << A_p << ", A_c = " << A_c;
        throw std::invalid_argument(msg.str());
    }

    SpectrumPipelineResult out;
    const PolaritonBasis basis = polariton_basis_exact(p, h);
    out.table = decay_rates(matrix_elements_exact(basis, h), p.gamma_c, p.gamma_q);

    try {
        out.classification = classify_transition_type(out.table);
    } catch (const std::domain_error&) {
        throw std::domain_error(
            "absorption_spectrum_pipeline: transition legs too weak to classify; adjust Omega "
            "or omega_d");
    }
    if (out.classification.primary != TransitionType::Lambda) {
        std::ostringstream msg;
        msg << "absorption_spectrum_pipeline: level scheme is " << out.classification.label()
            << "-type here, not Lambda; increase Omega (opens the 3-1 leg) or keep omega_d "
               "inside the nesting window";
        throw std::domain_error(msg.str());
    }

    out.omega_31 = basis.transition_frequency(3, 1);
    out.omega_32 = basis.transition_frequency(3, 2);
    out.omega_c_rotating = omega_c_rot;
    out.omega_c_lab = omega_c_rot + p.omega_d;

    const auto [omega_c_eff, omega_p_eff] = effective_rabi(A_c, A_p, out.table);
    out.Omega_p = omega_p_eff;
    out.rates.Gamma_31 = out.table.Gamma_31();
    out.rates.gamma_21 = p.gamma_q * out.table.Q(2, 1) * out.table.Q(2, 1);
    out.rates.Omega_c = omega_c_eff;
    out.rates.Delta_2 = out.omega_32 - omega_c_rot;
    out.rates.validate();

    out.spectrum = susceptibility_spectrum(out.rates, delta_grid);

    const double disc =
        out.rates.Omega_c * out.rates.Omega_c -
        0.25 * (out.rates.Gamma_31 - out.rates.gamma_21) * (out.rates.Gamma_31 - out.rates.gamma_21);
    out.regime = (disc > 0.0)   ? SpectralRegime::ATS
                 : (disc < 0.0) ? SpectralRegime::EIT
                                : SpectralRegime::AT_THRESHOLD;
    if (std::abs(out.rates.Delta_2) < 1e-6) {
        ThreeLevelRates resonant = out.rates;
        resonant.Delta_2 = 0.0;
        out.decomposition = pole_decomposition(resonant);
    }
    return out;
}

}  // namespace polab
