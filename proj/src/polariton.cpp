// polariton.cpp — four lowest levels of the driven system, labels and frequencies
#include "polab/polariton.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace polab {

MixingAngles mixing_angles(const SystemParams& p) {
    p.validate();
    const double chi = p.dispersive_shift();
    const double tq = p.tilde_omega_q();
    return MixingAngles{
        std::atan2(2.0 * p.Omega, tq - chi),
        std::atan2(2.0 * p.Omega, 3.0 * chi - tq),
    };
}

double PolaritonBasis::transition_frequency(int i, int j) const {
    if (i < 1 || i > 4 || j < 1 || j > 4 || i <= j) {
        std::ostringstream msg;
        msg << "transition_frequency needs 1-based labels with i > j, got (" << i << ", " << j
            << ")";
        throw std::invalid_argument(msg.str());
    }
    return energies[static_cast<std::size_t>(i - 1)] - energies[static_cast<std::size_t>(j - 1)];
}

PolaritonBasis polariton_basis_exact(const SystemParams& p, const HilbertSpace& h) {
    const ComplexMatrix hmat = build_rotating_hamiltonian(p, h);
    const Eigensystem es = hermitian_eigendecompose(hmat);

    PolaritonBasis basis;
    basis.provenance = BasisProvenance::exact;
    basis.n_max = h.n_max();
    for (int k = 0; k < 4; ++k) {
        basis.energies[static_cast<std::size_t>(k)] = es.values[static_cast<std::size_t>(k)];
        basis.states[static_cast<std::size_t>(k)] =
            es.vectors.column(static_cast<std::size_t>(k));
    }
    return basis;
}

PolaritonBasis polariton_basis_analytic(const SystemParams& p, const HilbertSpace& h) {
    const MixingAngles ang = mixing_angles(p);
    const double cl = std::cos(0.5 * ang.theta_l);
    const double sl = std::sin(0.5 * ang.theta_l);
    const double cu = std::cos(0.5 * ang.theta_u);
    const double su = std::sin(0.5 * ang.theta_u);

    // Doublet midpoints from the dispersive ladder; splittings in closed form.
    const double mid_l =
        0.5 * (dispersive_frequency_g(p, 0) + dispersive_frequency_e(p, 0));
    const double mid_u =
        0.5 * (dispersive_frequency_g(p, 1) + dispersive_frequency_e(p, 1));
    const double w21 = splitting_lower_analytic(p);
    const double w43 = splitting_upper_analytic(p);

    const std::size_t dim = h.dimension();
    const std::size_t g0 = h.index(false, 0);
    const std::size_t e0 = h.index(true, 0);
    const std::size_t g1 = h.index(false, 1);
    const std::size_t e1 = h.index(true, 1);

    PolaritonBasis basis;
    basis.provenance = BasisProvenance::analytic;
    basis.n_max = h.n_max();
    basis.energies = {mid_l - 0.5 * w21, mid_l + 0.5 * w21, mid_u - 0.5 * w43,
                      mid_u + 0.5 * w43};
    for (auto& state : basis.states) state.assign(dim, cplx{0.0, 0.0});
    basis.states[0][g0] = cl;
    basis.states[0][e0] = -sl;
    basis.states[1][g0] = sl;
    basis.states[1][e0] = cl;
    basis.states[2][g1] = -su;
    basis.states[2][e1] = cu;
    basis.states[3][g1] = cu;
    basis.states[3][e1] = su;
    return basis;
}

double splitting_lower_analytic(const SystemParams& p) {
    return std::hypot(p.tilde_omega_q() - p.dispersive_shift(), 2.0 * p.Omega);
}

double splitting_upper_analytic(const SystemParams& p) {
    return std::hypot(p.tilde_omega_q() - 3.0 * p.dispersive_shift(), 2.0 * p.Omega);
}

double omega_31_doublet_reference(const SystemParams& p) {
    return p.tilde_omega_r() -
           0.5 * (splitting_upper_analytic(p) + splitting_lower_analytic(p));
}

TrackedBasis track_labels_across_sweep(const PolaritonBasis& prev, const PolaritonBasis& curr) {
    for (int k = 0; k < 4; ++k) {
        if (prev.states[static_cast<std::size_t>(k)].size() !=
            curr.states[static_cast<std::size_t>(k)].size()) {
            throw std::invalid_argument(
                "track_labels_across_sweep: bases live on different spaces");
        }
    }

    std::array<std::array<double, 4>, 4> overlap{};
    for (std::size_t k = 0; k < 4; ++k) {
        for (std::size_t j = 0; j < 4; ++j) {
            overlap[k][j] = std::abs(inner(prev.states[k], curr.states[j]));
        }
    }

    TrackedBasis out;
    std::array<int, 4> assignment{-1, -1, -1, -1};
    std::array<bool, 4> row_done{}, col_done{};
    bool fell_back = false;
    for (int step = 0; step < 4; ++step) {
        double best = -1.0;
        std::size_t bk = 0, bj = 0;
        for (std::size_t k = 0; k < 4; ++k) {
            if (row_done[k]) continue;
            for (std::size_t j = 0; j < 4; ++j) {
                if (col_done[j]) continue;
                if (overlap[k][j] > best) {
                    best = overlap[k][j];
                    bk = k;
                    bj = j;
                }
            }
        }
        if (best < 0.5) {
            fell_back = true;
            break;
        }
        assignment[bk] = static_cast<int>(bj);
        row_done[bk] = true;
        col_done[bj] = true;
    }

    if (fell_back) {
        assignment = {0, 1, 2, 3};
    }
    out.permutation = assignment;
    out.fell_back = fell_back;
    out.basis.provenance = curr.provenance;
    out.basis.n_max = curr.n_max;
    for (std::size_t k = 0; k < 4; ++k) {
        const auto src = static_cast<std::size_t>(assignment[k]);
        out.basis.energies[k] = curr.energies[src];
        out.basis.states[k] = curr.states[src];
    }
    return out;
}

}  // namespace polab
