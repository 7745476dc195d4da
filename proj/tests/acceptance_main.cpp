// acceptance_main.cpp — release gate: one pass/fail line per shipping criterion
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "polab/config.hpp"
#include "polab/dataset.hpp"
#include "polab/lindblad.hpp"
#include "polab/model.hpp"
#include "polab/numerics.hpp"
#include "polab/polariton.hpp"
#include "polab/runner.hpp"
#include "polab/spectroscopy.hpp"
#include "polab/transitions.hpp"

using namespace polab;

namespace {

std::string fmt(double v, int precision = 3) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*f", precision, v);
    return buffer;
}

/// Collects every violated requirement of one criterion into a detail string.
struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& message) {
        if (ok) return;
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += message;
    }
};

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> grid(count);
    for (int k = 0; k < count; ++k)
        grid[k] = lo + (hi - lo) * double(k) / double(count - 1);
    return grid;
}

// 1. Reference-table regression: the exact pipeline at the standard operating
//    point against the recorded five-drive table (elements within 0.02, level
//    gaps within 2 MHz, type labels exact).
Verdict criterion1() {
    Verdict v;
    struct Row {
        double drive, C31, C32, Q21, Q31, Q32, C21, w21, w32;
        const char* type;
    };
    constexpr std::array<Row, 5> reference = {{
        {0.0, 0.00, 1.00, 1.00, 0.0, 0.1, 0.10, 54.0, 5050.0, "Ξ"},
        {10.0, 0.37, 0.93, 0.96, 0.0, 0.1, 0.10, 59.0, 5047.0, "Λ,Δ"},
        {20.0, 0.62, 0.77, 0.89, 0.0, 0.1, 0.09, 66.0, 5037.0, "Λ,Δ"},
        {30.0, 0.77, 0.64, 0.82, 0.0, 0.1, 0.08, 78.0, 5023.0, "Λ,Δ"},
        {40.0, 0.85, 0.53, 0.76, 0.0, 0.1, 0.08, 89.0, 5007.0, "Λ,Δ"},
    }};
    const HilbertSpace space(4);
    SystemParams p;
    for (const Row& row : reference) {
        p.Omega = row.drive;
        const TransitionTable t =
            matrix_elements_exact(polariton_basis_exact(p, space), space);
        const std::string at = " at drive " + fmt(row.drive, 0);
        const auto cell = [&](const char* name, double got, double want, double tol) {
            v.require(std::abs(got - want) <= tol, std::string(name) + at + ": got " +
                                                       fmt(got) + " want " + fmt(want, 1) +
                                                       " (tol " + fmt(tol, 2) + ")");
        };
        cell("C_31", t.C(3, 1), row.C31, 0.02);
        cell("C_32", t.C(3, 2), row.C32, 0.02);
        cell("Q_21", t.Q(2, 1), row.Q21, 0.02);
        cell("Q_31", t.Q(3, 1), row.Q31, 0.02);
        cell("Q_32", t.Q(3, 2), row.Q32, 0.02);
        cell("C_21", t.C(2, 1), row.C21, 0.02);
        cell("omega_21", t.omega(2, 1), row.w21, 2.0);
        cell("omega_32", t.omega(3, 2), row.w32, 2.0);
        const std::string type = classify_transition_type(t).label();
        v.require(type == row.type, "type" + at + ": got " + type + " want " + row.type);
    }
    return v;
}

// 2. Window boundaries: on a 201-point drive-frequency sweep at zero drive
//    amplitude, the lower gap is smallest at 4950 ± 2 MHz and the upper gap at
//    4850 ± 2 MHz.
Verdict criterion2() {
    Verdict v;
    const HilbertSpace space(4);
    SystemParams p;
    p.Omega = 0.0;
    double best21 = 1e300, best43 = 1e300, at21 = 0.0, at43 = 0.0;
    for (int k = 0; k < 201; ++k) {
        p.omega_d = 4800.0 + 1.0 * k;
        const PolaritonBasis b = polariton_basis_exact(p, space);
        if (b.transition_frequency(2, 1) < best21) {
            best21 = b.transition_frequency(2, 1);
            at21 = p.omega_d;
        }
        if (b.transition_frequency(4, 3) < best43) {
            best43 = b.transition_frequency(4, 3);
            at43 = p.omega_d;
        }
    }
    v.require(std::abs(at21 - 4950.0) <= 2.0,
              "lower-gap minimum at " + fmt(at21, 0) + " want 4950 +- 2");
    v.require(std::abs(at43 - 4850.0) <= 2.0,
              "upper-gap minimum at " + fmt(at43, 0) + " want 4850 +- 2");
    return v;
}

// 3. Decay-rate structure: total linewidth of level 3 stays within [18, 22] MHz
//    across the window, and the two decay channels balance at a drive amplitude
//    of 25 ± 3 MHz for the centered drive frequency.
Verdict criterion3() {
    Verdict v;
    const HilbertSpace space(4);
    SystemParams p;
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i <= 24; ++i) {
        for (int j = 0; j <= 8; ++j) {
            p.omega_d = 4852.0 + 4.0 * i;
            p.Omega = 5.0 * j;
            const TransitionTable t = decay_rates(
                matrix_elements_exact(polariton_basis_exact(p, space), space),
                p.gamma_c, p.gamma_q);
            lo = std::min(lo, t.Gamma_31());
            hi = std::max(hi, t.Gamma_31());
        }
    }
    v.require(lo >= 18.0 && hi <= 22.0, "upper-level linewidth spans [" + fmt(lo) +
                                            ", " + fmt(hi) + "] want inside [18, 22]");
    p.omega_d = 4900.0;
    p.Omega = 0.0;
    const double balance = impedance_match_drive(p, space, 0.0, 60.0);
    v.require(std::abs(balance - 25.0) <= 3.0,
              "channel-balance drive " + fmt(balance) + " want 25 +- 3");
    return v;
}

// 4. Regime classification: a 30 MHz control amplitude splits the line (ATS)
//    and a 5 MHz amplitude keeps a transparency dip (EIT) at every drive
//    amplitude in {10, 20, 30, 40}, with the threshold built from pipeline
//    rates.
Verdict criterion4() {
    Verdict v;
    const HilbertSpace space(4);
    SystemParams p;
    for (double drive : {10.0, 20.0, 30.0, 40.0}) {
        p.Omega = drive;
        const TransitionTable t = decay_rates(
            matrix_elements_exact(polariton_basis_exact(p, space), space), p.gamma_c,
            p.gamma_q);
        ThreeLevelRates rates;
        rates.Gamma_31 = t.Gamma_31();
        rates.gamma_21 = p.gamma_q * t.Q(2, 1) * t.Q(2, 1);
        rates.Delta_2 = 0.0;
        const double threshold = eit_ats_threshold(rates.Gamma_31, rates.gamma_21);
        for (double A_c : {30.0, 5.0}) {
            rates.Omega_c = A_c * t.C(3, 2);
            const SpectralRegime regime = pole_decomposition(rates).regime;
            const SpectralRegime want =
                A_c > 5.0 ? SpectralRegime::ATS : SpectralRegime::EIT;
            v.require(regime == want, "control " + fmt(A_c, 0) + " at drive " +
                                          fmt(drive, 0) + ": regime " +
                                          (regime == SpectralRegime::ATS ? "ATS" : "EIT") +
                                          " want " +
                                          (want == SpectralRegime::ATS ? "ATS" : "EIT"));
            v.require((rates.Omega_c > threshold) == (want == SpectralRegime::ATS),
                      "control " + fmt(A_c, 0) + " at drive " + fmt(drive, 0) +
                          ": Rabi " + fmt(rates.Omega_c) + " vs threshold " +
                          fmt(threshold) + " on the wrong side");
        }
    }
    return v;
}

// 5. Spectral identity: the two-pole decomposition rebuilds the resonant
//    susceptibility to 1e-10 relative accuracy on a 2001-point grid for 100
//    random rate sets.
Verdict criterion5() {
    Verdict v;
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> big(1.0, 40.0);
    std::uniform_real_distribution<double> small(0.0, 5.0);
    std::uniform_real_distribution<double> control(0.5, 50.0);
    const std::vector<double> grid = linspace(-60.0, 60.0, 2001);
    double worst = 0.0;
    int evaluated = 0;
    for (int set = 0; set < 100; ++set) {
        ThreeLevelRates r;
        r.Gamma_31 = big(rng);
        r.gamma_21 = small(rng);
        r.Omega_c = control(rng);
        r.Delta_2 = 0.0;
        const LorentzianDecomposition d = pole_decomposition(r);
        if (d.double_pole) continue;  // residues undefined at the exact boundary
        ++evaluated;
        double err = 0.0, mag = 0.0;
        for (double delta : grid) {
            const cplx direct = susceptibility(r, delta);
            const cplx rebuilt = d.chi_plus / (delta - d.delta_plus) +
                                 d.chi_minus / (delta - d.delta_minus);
            err = std::max(err, std::abs(rebuilt - direct));
            mag = std::max(mag, std::abs(direct));
        }
        worst = std::max(worst, err / mag);
    }
    v.require(evaluated >= 99, "only " + std::to_string(evaluated) + " rate sets usable");
    v.require(worst <= 1e-10,
              "worst relative reconstruction error " + fmt(worst * 1e12, 3) + "e-12");
    return v;
}

// 6. Steady-state equivalence: the master-equation linear response matches the
//    closed-form susceptibility to 1e-2 relative max-residual on both
//    control-amplitude grids; the steady state stays ground-dominated; with the
//    2-1 channel closed the match at zero detuning tightens to 1e-6.
Verdict criterion6() {
    Verdict v;
    const HilbertSpace space(4);
    const std::vector<double> grid = linspace(-30.0, 30.0, 101);
    SystemParams p;
    double worst = 0.0, lowest_ground = 1.0;
    for (double A_c : {30.0, 5.0}) {
        for (double drive : {10.0, 20.0, 30.0, 40.0}) {
            p.Omega = drive;
            const SpectrumPipelineResult pipe =
                absorption_spectrum_pipeline(p, space, A_c, 0.05, 5037.425710, grid);
            ThreeLevelChannels ch;
            ch.gamma_31 = pipe.table.gamma(3, 1);
            ch.gamma_32 = pipe.table.gamma(3, 2);
            ch.gamma_21 = pipe.rates.gamma_21;
            double mag = 0.0;
            for (const cplx& value : pipe.spectrum.chi)
                mag = std::max(mag, std::abs(value));
            double err = 0.0;
            for (std::size_t k = 0; k < grid.size(); ++k) {
                const cplx numeric = linear_response_chi(ch, pipe.rates.Omega_c,
                                                         pipe.rates.Delta_2, grid[k]);
                err = std::max(err, std::abs(numeric - pipe.spectrum.chi[k]));
            }
            worst = std::max(worst, err / mag);
            const double eps =
                1e-3 * std::max(pipe.rates.Gamma_31, pipe.rates.Omega_c);
            const ComplexMatrix rho = steady_state(
                build_liouvillian(ch, pipe.rates.Omega_c, pipe.rates.Delta_2,
                                  pipe.rates.Delta_2, eps));
            lowest_ground = std::min(lowest_ground, rho(0, 0).real());
        }
    }
    v.require(worst <= 1e-2, "relative max-residual " + fmt(worst * 1e6, 2) + "e-6");
    v.require(lowest_ground > 0.95,
              "ground population dropped to " + fmt(lowest_ground, 4));

    ThreeLevelChannels closed;
    closed.gamma_31 = 12.0;
    closed.gamma_32 = 8.0;
    closed.gamma_21 = 0.0;
    ThreeLevelRates ideal;
    ideal.Gamma_31 = 20.0;
    ideal.gamma_21 = 0.0;
    ideal.Omega_c = 5.0;
    ideal.Delta_2 = 0.0;
    double scale = 0.0;
    for (double delta : grid) scale = std::max(scale, std::abs(susceptibility(ideal, delta)));
    const double dark =
        std::abs(linear_response_chi(closed, 5.0, 0.0, 0.0) - susceptibility(ideal, 0.0));
    v.require(dark <= 1e-6 * scale, "closed-channel residual at zero detuning " +
                                        fmt(dark / scale * 1e9, 3) + "e-9 relative");
    return v;
}

// 7. Structural properties: eigensystem orthonormality and reconstruction,
//    generator trace preservation, density-matrix positivity, the
//    weak-element bound and closure identity over the full surface grid, and
//    closed-form-versus-exact state overlaps at the table points.
Verdict criterion7() {
    Verdict v;
    const HilbertSpace space(4);

    SystemParams p;
    for (const auto& [drive, freq] :
         std::array<std::pair<double, double>, 4>{
             {{0.0, 4900.0}, {20.0, 4900.0}, {40.0, 4860.0}, {30.0, 4940.0}}}) {
        p.Omega = drive;
        p.omega_d = freq;
        const ComplexMatrix h = build_rotating_hamiltonian(p, space);
        const Eigensystem es = hermitian_eigendecompose(h);
        const std::size_t dim = h.rows();
        ComplexMatrix gram = es.vectors.adjoint() * es.vectors;
        double ortho = 0.0;
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                ortho = std::max(ortho,
                                 std::abs(gram(i, j) - (i == j ? cplx{1.0} : cplx{0.0})));
        v.require(ortho <= 1e-9, "orthonormality defect " + fmt(ortho * 1e12, 2) + "e-12");
        ComplexMatrix rebuilt(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) {
                cplx sum = 0.0;
                for (std::size_t k = 0; k < dim; ++k)
                    sum += es.vectors(i, k) * es.values[k] * std::conj(es.vectors(j, k));
                rebuilt(i, j) = sum;
            }
        const double scale = std::max(1.0, h.max_abs());
        v.require((rebuilt - h).max_abs() <= 1e-9 * scale,
                  "reconstruction defect " + fmt((rebuilt - h).max_abs() / scale * 1e12, 2) +
                      "e-12 relative");
    }

    ThreeLevelChannels ch;
    ch.gamma_31 = 7.899653;
    ch.gamma_32 = 12.258498;
    ch.gamma_21 = 0.789088;
    const ComplexMatrix gen = build_liouvillian(ch, 3.912945, 0.0, 0.0, 0.01);
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int draw = 0; draw < 10; ++draw) {
        ComplexMatrix m(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) m(i, j) = cplx{u(rng), u(rng)};
        ComplexMatrix rho = m * m.adjoint();
        cplx tr = 0.0;
        for (std::size_t i = 0; i < 3; ++i) tr += rho(i, i);
        rho = rho.scaled(1.0 / tr);
        const ComplexMatrix flow = devectorize_columns(gen * vectorize_columns(rho), 3, 3);
        cplx leak = 0.0;
        for (std::size_t i = 0; i < 3; ++i) leak += flow(i, i);
        v.require(std::abs(leak) <= 1e-10 * std::max(1.0, flow.max_abs()),
                  "trace leak " + fmt(std::abs(leak) * 1e12, 2) + "e-12");
    }

    for (double control : {3.912945, 23.477665}) {
        const ComplexMatrix rho =
            steady_state(build_liouvillian(ch, control, 0.0, 0.0, 0.02));
        try {
            validate_density_matrix(rho, 1e-9);
        } catch (const std::exception& ex) {
            v.require(false, std::string("steady state rejected: ") + ex.what());
        }
    }

    double weak = 0.0, closure_lo = 1e300, closure_hi = -1e300;
    for (int i = 0; i <= 40; ++i) {
        for (int j = 0; j <= 40; ++j) {
            p.omega_d = 4800.0 + 5.0 * i;
            p.Omega = 1.0 * j;
            const TransitionTable t =
                matrix_elements_exact(polariton_basis_exact(p, space), space);
            weak = std::max({weak, t.Q(3, 1), t.Q(3, 2), t.C(2, 1)});
            const double closure = t.C(3, 1) * t.C(3, 1) + t.C(3, 2) * t.C(3, 2);
            closure_lo = std::min(closure_lo, closure);
            closure_hi = std::max(closure_hi, closure);
        }
    }
    v.require(weak <= 0.12, "weak-element bound exceeded: " + fmt(weak, 4));
    v.require(closure_lo >= 0.97 && closure_hi <= 1.03,
              "closure identity spans [" + fmt(closure_lo, 4) + ", " + fmt(closure_hi, 4) +
                  "] want within [0.97, 1.03]");

    p.omega_d = 4900.0;
    for (double drive : {0.0, 10.0, 20.0, 30.0, 40.0}) {
        p.Omega = drive;
        const PolaritonBasis exact = polariton_basis_exact(p, space);
        const PolaritonBasis closed = polariton_basis_analytic(p, space);
        for (int level = 0; level < 4; ++level) {
            const double overlap =
                std::abs(inner(closed.states[level], exact.states[level]));
            v.require(overlap > 0.99, "overlap of level " + std::to_string(level + 1) +
                                          " at drive " + fmt(drive, 0) + " is " +
                                          fmt(overlap, 4));
        }
    }
    return v;
}

// 8. Surface sweep: the 41x41 drive-frequency-by-amplitude dataset emits as CSV
//    without error inside the time budget, and the element monotonicity holds
//    along the centered drive-frequency slice.
Verdict criterion8() {
    Verdict v;
    RunConfig c;
    c.task = "sweep";
    c.axes = {{"omega_d", 4800.0, 5000.0, 41}, {"Omega", 0.0, 40.0, 41}};
    const Dataset d = run_sweep(c);
    const std::string csv = to_csv(d);
    v.require(d.rows.size() == 41u * 41u,
              "expected 1681 rows, got " + std::to_string(d.rows.size()));
    v.require(csv.size() > 100000, "CSV output suspiciously small");

    const auto column = [&](const std::string& name) {
        for (std::size_t k = 0; k < d.columns.size(); ++k)
            if (d.columns[k] == name) return k;
        v.require(false, "missing column " + name);
        return std::size_t{0};
    };
    const std::size_t c31 = column("C_31"), c32 = column("C_32");
    const std::size_t base = 20u * 41u;  // drive-frequency slice at 4900
    bool rising = true, falling = true;
    for (std::size_t k = 1; k < 41; ++k) {
        rising = rising && d.rows[base + k][c31].value > d.rows[base + k - 1][c31].value;
        falling = falling && d.rows[base + k][c32].value < d.rows[base + k - 1][c32].value;
    }
    v.require(rising, "C_31 not strictly increasing along the drive-amplitude slice");
    v.require(falling, "C_32 not strictly decreasing along the drive-amplitude slice");
    return v;
}

}  // namespace

int main() {
    struct Entry {
        const char* title;
        Verdict (*run)();
        double budget_s;  // 0 = no enforced runtime budget
    };
    const std::array<Entry, 8> criteria = {{
        {"five-drive reference table (elements +-0.02, gaps +-2 MHz, types exact), < 1 s",
         criterion1, 1.0},
        {"window boundaries from 201-point gap minima (4950 / 4850 +- 2 MHz)", criterion2,
         10.0},
        {"upper-level linewidth in [18, 22] MHz and channel balance at 25 +- 3 MHz",
         criterion3, 0.0},
        {"strong control splits (ATS), weak control stays transparent (EIT) at four drives",
         criterion4, 0.0},
        {"two-pole reconstruction to 1e-10 over 100 random rate sets, < 1 s", criterion5,
         1.0},
        {"steady-state response matches closed form to 1e-2 (1e-6 with closed 2-1 leg), < 10 s",
         criterion6, 10.0},
        {"structural properties: orthonormality, trace flow, positivity, bounds, overlaps",
         criterion7, 0.0},
        {"41x41 surface sweep emits CSV with monotone element slice, < 60 s", criterion8,
         60.0},
    }};

    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto start = std::chrono::steady_clock::now();
        Verdict verdict;
        try {
            verdict = criteria[k].run();
        } catch (const std::exception& ex) {
            verdict.pass = false;
            verdict.detail = std::string("exception: ") + ex.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (criteria[k].budget_s > 0.0 && elapsed > criteria[k].budget_s)
            verdict.require(false, "runtime " + fmt(elapsed, 2) + " s over the " +
                                       fmt(criteria[k].budget_s, 0) + " s budget");
        std::cout << "ACCEPTANCE " << k + 1 << ": " << (verdict.pass ? "PASS" : "FAIL")
                  << " — " << criteria[k].title;
        if (!verdict.pass) std::cout << " (" << verdict.detail << ")";
        std::cout << " [" << fmt(elapsed, 2) << " s]" << std::endl;
        if (!verdict.pass) ++failures;
    }
    std::cout << "ACCEPTANCE SUMMARY: " << criteria.size() - failures << "/"
              << criteria.size() << " criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
