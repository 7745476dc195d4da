// runner.cpp — task execution over the simulation library
#include "polab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "polab/lindblad.hpp"
#include "polab/spectroscopy.hpp"

namespace polab {

namespace {

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    body(i);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

void stamp(Dataset& d, const RunConfig& c) {
    d.add_meta("version", kToolVersion);
    d.add_meta("task", c.task);
    d.add_meta("n_max", std::to_string(c.n_max));
    // The echo describes the computation, not the destination: stripping the
    // output section keeps the bytes identical wherever the dataset is written.
    RunConfig echo = c;
    echo.output = OutputConfig{};
    d.add_meta("config", config_to_json(echo));
}

void set_param(SystemParams& p, const std::string& name, double value) {
    if (name == "omega_q") p.omega_q = value;
    else if (name == "omega_r") p.omega_r = value;
    else if (name == "g") p.g = value;
    else if (name == "omega_d") p.omega_d = value;
    else if (name == "Omega") p.Omega = value;
    else if (name == "gamma_q") p.gamma_q = value;
    else if (name == "gamma_c") p.gamma_c = value;
    else throw ConfigError("unknown sweep parameter '" + name + "'");
}

const char* regime_label(SpectralRegime r) {
    switch (r) {
        case SpectralRegime::EIT: return "EIT";
        case SpectralRegime::ATS: return "ATS";
        case SpectralRegime::AT_THRESHOLD: return "AT_THRESHOLD";
    }
    return "?";
}

SpectralRegime regime_from_rates(const ThreeLevelRates& r) {
    const double gap = 0.5 * (r.Gamma_31 - r.gamma_21);
    const double disc = r.Omega_c * r.Omega_c - gap * gap;
    if (disc > 0.0) return SpectralRegime::ATS;
    if (disc < 0.0) return SpectralRegime::EIT;
    return SpectralRegime::AT_THRESHOLD;
}

std::string permutation_text(const std::array<int, 4>& perm) {
    std::string s;
    for (int k : perm) s += static_cast<char>('1' + k);
    return s;
}

const char* kGamma21Note =
    "gamma_21 is recomputed at every parameter point as gamma_q * Q_21^2";

/// The six downward level pairs in fixed column order.
constexpr std::array<std::pair<int, int>, 6> kPairs = {
    {{2, 1}, {3, 1}, {3, 2}, {4, 1}, {4, 2}, {4, 3}}};

std::string classify_or_dash(const TransitionTable& t) {
    try {
        return classify_transition_type(t).label();
    } catch (const std::domain_error&) {
        return "-";  // fewer than two usable legs at this point
    }
}

}  // namespace

int worker_count() {
    if (const char* env = std::getenv("POLARITON_LAB_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 1024)
            return static_cast<int>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

Dataset run_eigen(const RunConfig& c) {
    const SweepAxis axis =
        c.axes.empty() ? SweepAxis{"Delta", -5000.0, 5000.0, 201} : c.axes[0];
    const std::vector<double> grid = axis.grid();
    const HilbertSpace space(c.n_max);

    Dataset d;
    stamp(d, c);
    d.add_meta("note", "columns are referenced to the ground level; drive amplitude forced to 0");
    d.columns = {"Delta", "E_g0"};
    for (int n = 0; n < c.n_max; ++n) {
        d.columns.push_back("E_minus_" + std::to_string(n));
        d.columns.push_back("E_plus_" + std::to_string(n));
    }

    std::vector<std::vector<double>> energies(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        SystemParams p = c.params;
        p.Omega = 0.0;    // undriven ladder
        p.omega_d = 0.0;  // absolute (lab) frame
        p.omega_r = p.omega_q + grid[i];

        const Eigensystem es =
            hermitian_eigendecompose(build_rotating_hamiltonian(p, space));

        std::vector<double> expected;
        expected.push_back(ground_energy(p));
        for (int n = 0; n < c.n_max; ++n) {
            const auto [minus, plus] = dressed_states_analytic(p, n);
            expected.push_back(minus.energy);
            expected.push_back(plus.energy);
        }

        std::vector<double>& row = energies[i];
        row.reserve(expected.size());
        for (double target : expected) {
            double best = es.values[0];
            for (double v : es.values)
                if (std::abs(v - target) < std::abs(best - target)) best = v;
            if (std::abs(best - target) > 1e-6 * std::max(1.0, std::abs(target))) {
                std::ostringstream msg;
                msg << "eigenvalue " << best << " strays from its closed-form level " << target
                    << " at Delta = " << grid[i];
                throw std::runtime_error(msg.str());
            }
            row.push_back(best);
        }
    });

    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<Cell>& row = d.add_row();
        row.push_back(Cell::num(grid[i]));
        const double reference = energies[i][0];
        for (double e : energies[i]) row.push_back(Cell::num(e - reference));
    }
    return d;
}

Dataset run_sweep(const RunConfig& c) {
    // With two axes the first is the outer loop; label tracking runs along the
    // innermost axis and restarts on every outer step.  A single axis is its
    // own inner (tracked) axis.
    const std::optional<SweepAxis> outer =
        c.axes.size() > 1 ? std::optional<SweepAxis>(c.axes[0]) : std::nullopt;
    const SweepAxis inner = c.axes.back();
    const std::vector<double> outer_grid =
        outer ? outer->grid() : std::vector<double>{0.0};
    const std::vector<double> inner_grid = inner.grid();
    const std::size_t stride = inner_grid.size();
    const std::size_t total = outer_grid.size() * stride;
    const HilbertSpace space(c.n_max);

    struct Point {
        SystemParams params;
        PolaritonBasis basis;
    };
    std::vector<Point> points(total);
    parallel_for(total, [&](std::size_t i) {
        SystemParams p = c.params;
        if (outer) set_param(p, outer->param, outer_grid[i / stride]);
        set_param(p, inner.param, inner_grid[i % stride]);
        points[i] = {p, polariton_basis_exact(p, space)};
    });

    Dataset d;
    stamp(d, c);
    d.add_meta("note", kGamma21Note);
    if (outer) d.columns.push_back(outer->param);
    d.columns.push_back(inner.param);
    for (const char* f : {"omega_21", "omega_31", "omega_32", "omega_43"})
        d.columns.push_back(f);
    for (const auto& [i, j] : kPairs)
        d.columns.push_back("Q_" + std::to_string(i) + std::to_string(j));
    for (const auto& [i, j] : kPairs)
        d.columns.push_back("C_" + std::to_string(i) + std::to_string(j));
    for (const auto& [i, j] : kPairs)
        d.columns.push_back("gamma_" + std::to_string(i) + std::to_string(j));
    d.columns.push_back("Gamma_31");
    d.columns.push_back("type");
    d.columns.push_back("relabel_permutation");
    d.columns.push_back("relabel_fallback");

    for (std::size_t oi = 0; oi < outer_grid.size(); ++oi) {
        std::optional<PolaritonBasis> previous;
        for (std::size_t ii = 0; ii < stride; ++ii) {
            const Point& point = points[oi * stride + ii];
            PolaritonBasis labeled = point.basis;
            std::array<int, 4> perm = {0, 1, 2, 3};
            bool fell_back = false;
            if (previous) {
                TrackedBasis tracked = track_labels_across_sweep(*previous, point.basis);
                labeled = tracked.basis;
                perm = tracked.permutation;
                fell_back = tracked.fell_back;
            }
            previous = labeled;

            const TransitionTable table =
                decay_rates(matrix_elements_exact(labeled, space),
                            point.params.gamma_c, point.params.gamma_q);

            std::vector<Cell>& row = d.add_row();
            if (outer) row.push_back(Cell::num(outer_grid[oi]));
            row.push_back(Cell::num(inner_grid[ii]));
            row.push_back(Cell::num(table.omega(2, 1)));
            row.push_back(Cell::num(table.omega(3, 1)));
            row.push_back(Cell::num(table.omega(3, 2)));
            row.push_back(Cell::num(table.omega(4, 3)));
            for (const auto& [i, j] : kPairs) row.push_back(Cell::num(table.Q(i, j)));
            for (const auto& [i, j] : kPairs) row.push_back(Cell::num(table.C(i, j)));
            for (const auto& [i, j] : kPairs) row.push_back(Cell::num(table.gamma(i, j)));
            row.push_back(Cell::num(table.Gamma_31()));
            row.push_back(Cell::text(classify_or_dash(table)));
            row.push_back(Cell::text(permutation_text(perm)));
            row.push_back(Cell::num(fell_back ? 1.0 : 0.0));
        }
    }
    return d;
}

Dataset run_table1(const RunConfig& c) {
    const HilbertSpace space(c.n_max);
    Dataset d;
    stamp(d, c);
    d.columns = {"Omega", "C_31", "C_32", "Q_21", "Q_31", "Q_32",
                 "C_21", "omega_21", "omega_32", "type"};
    for (double drive : {0.0, 10.0, 20.0, 30.0, 40.0}) {
        SystemParams p = c.params;
        p.Omega = drive;
        const PolaritonBasis basis = polariton_basis_exact(p, space);
        const TransitionTable table = matrix_elements_exact(basis, space);

        std::vector<Cell>& row = d.add_row();
        row.push_back(Cell::num(drive));
        row.push_back(Cell::num(table.C(3, 1)));
        row.push_back(Cell::num(table.C(3, 2)));
        row.push_back(Cell::num(table.Q(2, 1)));
        row.push_back(Cell::num(table.Q(3, 1)));
        row.push_back(Cell::num(table.Q(3, 2)));
        row.push_back(Cell::num(table.C(2, 1)));
        row.push_back(Cell::num(table.omega(2, 1)));
        row.push_back(Cell::num(table.omega(3, 2)));
        row.push_back(Cell::text(classify_or_dash(table)));
    }
    return d;
}

Dataset run_spectrum(const RunConfig& c) {
    const HilbertSpace space(c.n_max);
    const double omega_c_rot = c.spectrum.omega_c_rotating(c.params.omega_d);
    const std::vector<double> grid = c.spectrum.delta_grid();
    const bool sweep_drive = !c.spectrum.Omega_values.empty();
    const std::vector<double> drives =
        sweep_drive ? c.spectrum.Omega_values : std::vector<double>{c.params.Omega};

    Dataset d;
    stamp(d, c);
    d.add_meta("note", kGamma21Note);
    d.add_meta("omega_c_rotating", format_number(omega_c_rot));
    d.add_meta("omega_c_lab", format_number(omega_c_rot + c.params.omega_d));
    if (sweep_drive) d.columns.push_back("Omega");
    for (const char* f : {"delta", "im_chi", "re_chi", "im_chi_plus", "im_chi_minus",
                          "regime", "Omega_c", "threshold", "Delta_2"})
        d.columns.push_back(f);

    for (double drive : drives) {
        SystemParams p = c.params;
        p.Omega = drive;
        const SpectrumPipelineResult result =
            absorption_spectrum_pipeline(p, space, c.spectrum.A_c, c.spectrum.A_p,
                                         omega_c_rot, grid);
        const double threshold =
            eit_ats_threshold(result.rates.Gamma_31, result.rates.gamma_21);
        const bool branches =
            result.decomposition.has_value() && !result.decomposition->double_pole;

        for (std::size_t k = 0; k < grid.size(); ++k) {
            std::vector<Cell>& row = d.add_row();
            if (sweep_drive) row.push_back(Cell::num(drive));
            const double delta = result.spectrum.delta[k];
            const cplx chi = result.spectrum.chi[k];
            row.push_back(Cell::num(delta));
            row.push_back(Cell::num(chi.imag()));
            row.push_back(Cell::num(chi.real()));
            if (branches) {
                const LorentzianDecomposition& lz = *result.decomposition;
                row.push_back(Cell::num((lz.chi_plus / (delta - lz.delta_plus)).imag()));
                row.push_back(Cell::num((lz.chi_minus / (delta - lz.delta_minus)).imag()));
            } else {
                row.push_back(Cell::none());
                row.push_back(Cell::none());
            }
            row.push_back(Cell::text(regime_label(result.regime)));
            row.push_back(Cell::num(result.rates.Omega_c));
            row.push_back(Cell::num(threshold));
            row.push_back(Cell::num(result.rates.Delta_2));
        }
    }
    return d;
}

Dataset run_classify(const RunConfig& c) {
    const HilbertSpace space(c.n_max);
    const SystemParams& p = c.params;
    const PolaritonBasis basis = polariton_basis_exact(p, space);
    const TransitionTable table =
        decay_rates(matrix_elements_exact(basis, space), p.gamma_c, p.gamma_q);
    const MixingAngles angles = mixing_angles(p);
    const NestingWindow window = nesting_boundaries(p);
    const double omega_c_rot = c.spectrum.omega_c_rotating(p.omega_d);

    ThreeLevelRates rates;
    rates.Gamma_31 = table.Gamma_31();
    rates.gamma_21 = p.gamma_q * table.Q(2, 1) * table.Q(2, 1);
    const auto [Omega_c, Omega_p] = effective_rabi(c.spectrum.A_c, c.spectrum.A_p, table);
    rates.Omega_c = Omega_c;
    rates.Delta_2 = table.omega(3, 2) - omega_c_rot;

    constexpr double kLegThreshold = 0.15;
    const bool leg_c31 = table.C(3, 1) > kLegThreshold;
    const bool leg_c32 = table.C(3, 2) > kLegThreshold;
    const bool leg_q21 = table.Q(2, 1) > kLegThreshold;

    Dataset d;
    stamp(d, c);
    d.add_meta("note", kGamma21Note);
    d.columns = {"omega_q", "omega_r", "g", "omega_d", "Omega", "gamma_c", "gamma_q",
                 "nesting_lower", "nesting_upper", "in_nesting", "theta_l", "theta_u",
                 "E_1", "E_2", "E_3", "E_4"};
    for (const char* f : {"omega_21", "omega_31", "omega_32", "omega_41", "omega_42",
                          "omega_43", "omega_31_doublet_reference"})
        d.columns.push_back(f);
    for (const auto& [i, j] : kPairs)
        d.columns.push_back("Q_" + std::to_string(i) + std::to_string(j));
    for (const auto& [i, j] : kPairs)
        d.columns.push_back("C_" + std::to_string(i) + std::to_string(j));
    for (const auto& [i, j] : kPairs)
        d.columns.push_back("gamma_" + std::to_string(i) + std::to_string(j));
    for (const char* f :
         {"Gamma_31", "leg_C31", "leg_C32", "leg_Q21", "type", "Omega_c", "Omega_p",
          "threshold", "regime", "Delta_2", "omega_c_rotating", "omega_c_lab",
          "eit_practical", "impedance_match_Omega"})
        d.columns.push_back(f);

    std::vector<Cell>& row = d.add_row();
    for (double v : {p.omega_q, p.omega_r, p.g, p.omega_d, p.Omega, p.gamma_c, p.gamma_q})
        row.push_back(Cell::num(v));
    row.push_back(Cell::num(window.lower));
    row.push_back(Cell::num(window.upper));
    row.push_back(Cell::num(in_nesting_regime(p) ? 1.0 : 0.0));
    row.push_back(Cell::num(angles.theta_l));
    row.push_back(Cell::num(angles.theta_u));
    for (double e : basis.energies) row.push_back(Cell::num(e));
    row.push_back(Cell::num(table.omega(2, 1)));
    row.push_back(Cell::num(table.omega(3, 1)));
    row.push_back(Cell::num(table.omega(3, 2)));
    row.push_back(Cell::num(table.omega(4, 1)));
    row.push_back(Cell::num(table.omega(4, 2)));
    row.push_back(Cell::num(table.omega(4, 3)));
    row.push_back(Cell::num(omega_31_doublet_reference(p)));
    for (const auto& [i, j] : kPairs) row.push_back(Cell::num(table.Q(i, j)));
    for (const auto& [i, j] : kPairs) row.push_back(Cell::num(table.C(i, j)));
    for (const auto& [i, j] : kPairs) row.push_back(Cell::num(table.gamma(i, j)));
    row.push_back(Cell::num(table.Gamma_31()));
    row.push_back(Cell::num(leg_c31 ? 1.0 : 0.0));
    row.push_back(Cell::num(leg_c32 ? 1.0 : 0.0));
    row.push_back(Cell::num(leg_q21 ? 1.0 : 0.0));
    row.push_back(Cell::text(classify_or_dash(table)));
    row.push_back(Cell::num(rates.Omega_c));
    row.push_back(Cell::num(Omega_p));
    row.push_back(Cell::num(eit_ats_threshold(rates.Gamma_31, rates.gamma_21)));
    row.push_back(Cell::text(regime_label(regime_from_rates(rates))));
    row.push_back(Cell::num(rates.Delta_2));
    row.push_back(Cell::num(omega_c_rot));
    row.push_back(Cell::num(omega_c_rot + p.omega_d));
    row.push_back(Cell::num(eit_condition_check(rates.Omega_c, p.gamma_c) ? 1.0 : 0.0));
    if (in_nesting_regime(p)) {
        try {
            row.push_back(Cell::num(impedance_match_drive(p, space, 0.0, 60.0)));
        } catch (const std::runtime_error&) {
            row.push_back(Cell::none());  // channels never balance on this range
        }
    } else {
        row.push_back(Cell::none());
    }
    return d;
}

Dataset run_oracle_check(const RunConfig& c) {
    const HilbertSpace space(c.n_max);
    const double omega_c_rot = c.spectrum.omega_c_rotating(c.params.omega_d);
    const std::vector<double> grid = c.spectrum.delta_grid();
    const bool sweep_drive = !c.spectrum.Omega_values.empty();
    const std::vector<double> drives =
        sweep_drive ? c.spectrum.Omega_values : std::vector<double>{c.params.Omega};

    Dataset d;
    stamp(d, c);
    d.add_meta("note", kGamma21Note);
    if (sweep_drive) d.columns.push_back("Omega");
    for (const char* f : {"delta", "re_chi_analytic", "im_chi_analytic", "re_chi_numeric",
                          "im_chi_numeric", "abs_residual", "rel_residual", "eps_stability"})
        d.columns.push_back(f);

    double global_max_residual = 0.0;
    for (double drive : drives) {
        SystemParams p = c.params;
        p.Omega = drive;
        const SpectrumPipelineResult result = absorption_spectrum_pipeline(
            p, space, c.spectrum.A_c, c.spectrum.A_p, omega_c_rot, grid);

        ThreeLevelChannels channels;
        channels.gamma_31 = result.table.gamma(3, 1);
        channels.gamma_32 = result.table.gamma(3, 2);
        channels.gamma_21 = result.rates.gamma_21;
        const double eps =
            1e-3 * std::max(result.rates.Gamma_31, result.rates.Omega_c);

        std::vector<cplx> numeric(grid.size());
        std::vector<double> stability(grid.size());
        parallel_for(grid.size(), [&](std::size_t k) {
            const cplx full = linear_response_chi(channels, result.rates.Omega_c,
                                                  result.rates.Delta_2, grid[k], eps);
            const cplx half = linear_response_chi(channels, result.rates.Omega_c,
                                                  result.rates.Delta_2, grid[k], 0.5 * eps);
            numeric[k] = full;
            stability[k] = std::abs(full - half) / std::max(std::abs(half), 1e-300);
        });

        double scale = 0.0;
        for (const cplx& chi : result.spectrum.chi) scale = std::max(scale, std::abs(chi));
        double max_residual = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const cplx analytic = result.spectrum.chi[k];
            const double abs_residual = std::abs(numeric[k] - analytic);
            const double rel_residual = abs_residual / scale;
            max_residual = std::max(max_residual, rel_residual);

            std::vector<Cell>& row = d.add_row();
            if (sweep_drive) row.push_back(Cell::num(drive));
            row.push_back(Cell::num(grid[k]));
            row.push_back(Cell::num(analytic.real()));
            row.push_back(Cell::num(analytic.imag()));
            row.push_back(Cell::num(numeric[k].real()));
            row.push_back(Cell::num(numeric[k].imag()));
            row.push_back(Cell::num(abs_residual));
            row.push_back(Cell::num(rel_residual));
            row.push_back(Cell::num(stability[k]));
        }
        global_max_residual = std::max(global_max_residual, max_residual);
        d.add_meta("max_residual_Omega_" + format_number(drive), format_number(max_residual));
    }
    d.add_meta("max_residual", format_number(global_max_residual));
    return d;
}

Dataset run_task(const RunConfig& c) {
    if (c.task == "eigen") return run_eigen(c);
    if (c.task == "sweep") return run_sweep(c);
    if (c.task == "table1") return run_table1(c);
    if (c.task == "spectrum") return run_spectrum(c);
    if (c.task == "classify") return run_classify(c);
    if (c.task == "oracle-check") return run_oracle_check(c);
    throw ConfigError("unknown task '" + c.task + "'");
}

}  // namespace polab
