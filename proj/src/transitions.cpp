// transitions.cpp — transition matrix elements, decay rates, and level-scheme typing
#include "polab/transitions.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace polab {

namespace {

std::size_t pair_slot(int i, int j) {
    for (std::size_t s = 0; s < TransitionTable::pairs.size(); ++s) {
        if (TransitionTable::pairs[s].first == i && TransitionTable::pairs[s].second == j) {
            return s;
        }
    }
    std::ostringstream msg;
    msg << "no transition entry for level pair (" << i << ", " << j
        << "); valid pairs are (2,1),(3,1),(3,2),(4,1),(4,2),(4,3)";
    throw std::invalid_argument(msg.str());
}

}  // namespace

TransitionEntry& TransitionTable::entry(int i, int j) { return entries_[pair_slot(i, j)]; }

const TransitionEntry& TransitionTable::entry(int i, int j) const {
    return entries_[pair_slot(i, j)];
}

TransitionTable matrix_elements_exact(const PolaritonBasis& b, const HilbertSpace& h) {
    if (b.provenance != BasisProvenance::exact) {
        throw std::invalid_argument("matrix_elements_exact requires an exact-provenance basis");
    }
    if (b.states[0].size() != h.dimension()) {
        throw std::invalid_argument("matrix_elements_exact: basis does not live on this space");
    }
    const ComplexMatrix sm = qubit_lowering(h);
    const ComplexMatrix an = photon_annihilation(h);

    TransitionTable t;
    for (const auto& [i, j] : TransitionTable::pairs) {
        const ComplexVector& upper = b.states[static_cast<std::size_t>(i - 1)];
        const ComplexVector& lower = b.states[static_cast<std::size_t>(j - 1)];
        TransitionEntry& e = t.entry(i, j);
        e.Q = std::abs(inner(lower, sm * upper));
        e.C = std::abs(inner(lower, an * upper));
        e.omega = b.transition_frequency(i, j);
    }
    return t;
}

TransitionTable matrix_elements_analytic(const MixingAngles& angles) {
    const double half_sum = 0.5 * (angles.theta_u + angles.theta_l);
    const double c_sum = std::abs(std::cos(half_sum));
    const double s_sum = std::abs(std::sin(half_sum));
    const double cl2 = std::cos(0.5 * angles.theta_l);
    const double su2 = std::sin(0.5 * angles.theta_u);

    TransitionTable t;
    t.entry(2, 1).Q = cl2 * cl2;
    t.entry(3, 1).C = s_sum;
    t.entry(3, 2).C = c_sum;
    t.entry(4, 1).C = c_sum;
    t.entry(4, 2).C = s_sum;
    t.entry(4, 3).Q = su2 * su2;
    return t;
}

TransitionTable decay_rates(TransitionTable t, double gamma_c, double gamma_q) {
    if (gamma_c < 0.0 || gamma_q < 0.0) {
        throw std::invalid_argument("decay_rates: rates must be non-negative");
    }
    for (const auto& [i, j] : TransitionTable::pairs) {
        TransitionEntry& e = t.entry(i, j);
        e.gamma = gamma_c * e.C * e.C + gamma_q * e.Q * e.Q;
    }
    t.rates_filled = true;
    return t;
}

double impedance_match_drive(const SystemParams& p, const HilbertSpace& h, double omega_lo,
                             double omega_hi, double tol) {
    if (!in_nesting_regime(p)) {
        throw std::domain_error(
            "impedance_match_drive: drive frequency must lie inside the nesting window");
    }
    if (!(omega_lo < omega_hi) || omega_lo < 0.0) {
        throw std::invalid_argument("impedance_match_drive: need 0 <= omega_lo < omega_hi");
    }
    const auto imbalance = [&](double drive) {
        SystemParams q = p;
        q.Omega = drive;
        const TransitionTable t = decay_rates(
            matrix_elements_exact(polariton_basis_exact(q, h), h), p.gamma_c, p.gamma_q);
        return t.gamma(3, 1) - t.gamma(3, 2);
    };

    double lo = omega_lo, hi = omega_hi;
    double f_lo = imbalance(lo), f_hi = imbalance(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        std::ostringstream msg;
        msg << "impedance_match_drive: gamma_31 - gamma_32 does not change sign on ["
            << omega_lo << ", " << omega_hi << "]: f(lo) = " << f_lo << ", f(hi) = " << f_hi;
        throw std::runtime_error(msg.str());
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = imbalance(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::string Classification::label() const {
    if (leg_c31 && leg_c32) return leg_q21 ? "Λ,Δ" : "Λ";
    if (leg_c32 && leg_q21) return "Ξ";
    if (leg_c31 && leg_q21) return "V";
    return "?";
}

Classification classify_transition_type(const TransitionTable& t, double threshold) {
    Classification c;
    c.leg_c31 = t.C(3, 1) > threshold;
    c.leg_c32 = t.C(3, 2) > threshold;
    c.leg_q21 = t.Q(2, 1) > threshold;

    if (c.leg_c31 && c.leg_c32) {
        // Cavity-coupled Lambda scheme; a usable qubit leg additionally closes
        // the 1-2-3 loop.
        c.primary = TransitionType::Lambda;
        return c;
    }
    if (c.leg_c32 && c.leg_q21) {
        c.primary = TransitionType::Xi;
        return c;
    }
    if (c.leg_c31 && c.leg_q21) {
        c.primary = TransitionType::V;
        return c;
    }
    std::ostringstream msg;
    msg << "classify_transition_type: fewer than two usable legs at threshold " << threshold
        << " (C_31 = " << t.C(3, 1) << ", C_32 = " << t.C(3, 2) << ", Q_21 = " << t.Q(2, 1)
        << ")";
    throw std::domain_error(msg.str());
}

}  // namespace polab
