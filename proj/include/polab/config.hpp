// config.hpp — run configuration: JSON schema, validation, dotted-path overrides
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "polab/model.hpp"

namespace polab {

/// Configuration problems (parse errors, unknown fields, invalid values).
/// The CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One linear sweep grid over a named parameter.
struct SweepAxis {
    std::string param;
    double start = 0.0;
    double stop = 0.0;
    int count = 0;

    std::vector<double> grid() const;
};

/// Probe/control settings for the spectrum and oracle-check tasks.  omega_c is
/// interpreted per `frame`: "rotating" (default) takes it in the qubit-drive
/// rotating frame that all level energies are quoted in; "lab" subtracts the
/// drive frequency omega_d first.
struct SpectrumConfig {
    double A_c = 5.0;
    double A_p = 0.05;
    double omega_c = 5037.425710;
    std::string frame = "rotating";
    double delta_start = -30.0;
    double delta_stop = 30.0;
    int delta_count = 101;
    std::vector<double> Omega_values;  // optional drive-amplitude sweep

    double omega_c_rotating(double omega_d) const;
    std::vector<double> delta_grid() const;
};

struct OutputConfig {
    std::string path;    // empty: write to stdout
    std::string format;  // "csv" | "json"; empty: per-task default
};

struct RunConfig {
    std::string task;  // eigen | sweep | table1 | spectrum | classify | oracle-check
    SystemParams params;
    int n_max = 4;
    std::vector<SweepAxis> axes;
    SpectrumConfig spectrum;
    OutputConfig output;
    unsigned seed = 1;

    /// Output format after applying the per-task default ("json" for the
    /// single-point classify report, "csv" otherwise).
    std::string effective_format() const;

    /// Cross-field checks; throws ConfigError naming the offending field.
    void validate() const;
};

/// Parses and validates a JSON config document.  Unknown fields are rejected
/// with the enclosing section named.
RunConfig parse_config(const std::string& json_text);

/// Reads the file and forwards to parse_config; file-system problems become
/// ConfigError.
RunConfig load_config_file(const std::string& path);

/// Applies one "dotted.path=value" override (e.g. "params.Omega=20",
/// "sweep.axes.0.count=101") onto a JSON config document and returns the
/// modified document text.  Values parse as JSON scalars when possible and
/// fall back to strings.
std::string apply_override(const std::string& json_text, const std::string& assignment);

/// Canonical single-line JSON echo of a config; parse_config round-trips it.
std::string config_to_json(const RunConfig& c);

}  // namespace polab
