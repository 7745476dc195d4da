// transitions.hpp — transition matrix elements, decay rates, and level-scheme typing
#pragma once

#include <array>
#include <string>
#include <utility>

#include "polab/polariton.hpp"

namespace polab {

/// One ordered level pair (i > j, 1-based labels). Q and C are the moduli of
/// the qubit and photon de-excitation elements taken in the emission
/// direction: Q = |<j|sigma_-|i>|, C = |<j|a|i>| with i the upper state
/// (equal to |<i|sigma_+|j>| and |<i|a^dag|j>|).
struct TransitionEntry {
    double Q = 0.0;
    double C = 0.0;
    double omega = 0.0;  // MHz, E_i - E_j
    double gamma = 0.0;  // MHz, filled by decay_rates
};

/// Elements for the six downward pairs among the four lowest levels.
class TransitionTable {
public:
    static constexpr std::array<std::pair<int, int>, 6> pairs = {
        {{2, 1}, {3, 1}, {3, 2}, {4, 1}, {4, 2}, {4, 3}}};

    TransitionEntry& entry(int i, int j);
    const TransitionEntry& entry(int i, int j) const;

    double Q(int i, int j) const { return entry(i, j).Q; }
    double C(int i, int j) const { return entry(i, j).C; }
    double omega(int i, int j) const { return entry(i, j).omega; }
    double gamma(int i, int j) const { return entry(i, j).gamma; }

    /// Total linewidth of level |3>, the sum of its two decay channels.
    double Gamma_31() const { return gamma(3, 1) + gamma(3, 2); }

    bool rates_filled = false;

private:
    std::array<TransitionEntry, 6> entries_{};
};

/// Moduli of the bare de-excitation operators between the four lowest exact
/// levels; fills Q, C, omega (rates left empty).
TransitionTable matrix_elements_exact(const PolaritonBasis& b, const HilbertSpace& h);

/// Closed-form elements from the doublet mixing angles:
///   C_32 = |cos((theta_u+theta_l)/2)|   C_31 = |sin((theta_u+theta_l)/2)|
///   C_41 = C_32                         C_42 = C_31
///   Q_21 = cos^2(theta_l/2)             Q_43 = sin^2(theta_u/2)
/// and Q_31 = Q_32 = C_21 = Q_41 = Q_42 = C_43 = 0. Frequencies are not
/// provided by the closed forms and stay 0.
TransitionTable matrix_elements_analytic(const MixingAngles& angles);

/// gamma_ij = gamma_c C_ij^2 + gamma_q Q_ij^2 for every pair.
TransitionTable decay_rates(TransitionTable t, double gamma_c, double gamma_q);

/// Drive amplitude where the two decay channels of |3> balance
/// (gamma_31 = gamma_32), found by bisection over [omega_lo, omega_hi].
/// Requires the drive frequency inside the nesting window; throws
/// std::runtime_error when gamma_31 - gamma_32 has equal signs at both ends.
double impedance_match_drive(const SystemParams& p, const HilbertSpace& h, double omega_lo,
                             double omega_hi, double tol = 1e-3);

enum class TransitionType { Xi, Lambda, V, Delta };

/// Which of the three legs among levels 1,2,3 are usable, and the resulting
/// level-scheme type. `label()` prints the conventional Greek name; the
/// combined cavity-Lambda plus qubit-loop case prints as a dual label.
struct Classification {
    bool leg_c31 = false;  // cavity-coupled 3-1
    bool leg_c32 = false;  // cavity-coupled 3-2
    bool leg_q21 = false;  // qubit-coupled 2-1
    TransitionType primary = TransitionType::Xi;
    std::string label() const;
};

/// Threshold classification of the {1,2,3} subsystem:
///   both cavity legs          -> Lambda ("Λ"; "Λ,Δ" when the qubit leg is
///                                also usable, closing a loop)
///   C_32 and Q_21 only        -> Xi (ladder)
///   C_31 and Q_21 only        -> V
/// Throws std::domain_error when fewer than two legs are usable.
Classification classify_transition_type(const TransitionTable& t, double threshold = 0.15);

}  // namespace polab
