// runner.hpp — task execution: grids, sweeps, spectra, reports
#pragma once

#include "polab/config.hpp"
#include "polab/dataset.hpp"

namespace polab {

/// Worker count for grid evaluation.  POLARITON_LAB_THREADS caps it
/// (unparsable or non-positive values are ignored); the default is the
/// hardware concurrency.  Results are emitted in grid order regardless of
/// the worker count, so output bytes never depend on scheduling.
int worker_count();

/// Undriven spectrum versus qubit-cavity detuning: eigenvalues of the full
/// truncated Hamiltonian matched to their closed-form doublet labels,
/// referenced to the ground level.
Dataset run_eigen(const RunConfig& c);

/// Transition frequencies, matrix elements, decay rates, and level-scheme
/// type over one or two parameter axes, with level labels tracked for
/// continuity along the innermost axis.
Dataset run_sweep(const RunConfig& c);

/// The five standard drive amplitudes (0..40 MHz) at the configured
/// operating point: elements, frequencies, and type per row.
Dataset run_table1(const RunConfig& c);

/// Probe susceptibility spectrum (plus the two-Lorentzian branch columns at
/// resonant control) for one drive amplitude or a list of them.
Dataset run_spectrum(const RunConfig& c);

/// Single-point report: level energies, angles, elements, rates,
/// classification, effective Rabi rates, regime, and the impedance-matching
/// drive when it exists.
Dataset run_classify(const RunConfig& c);

/// Analytic susceptibility versus the master-equation solver on the same
/// detuning grid, with residual and probe-stability columns and a
/// max-residual summary in the metadata.
Dataset run_oracle_check(const RunConfig& c);

/// Dispatches on c.task.
Dataset run_task(const RunConfig& c);

}  // namespace polab
