#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tracks/perturbation.hpp"

namespace tracks {

inline constexpr const char* artifact_name = "alpha-tracks";
inline constexpr const char* artifact_version = "0.1.0";

enum class OutputFormat { csv, json };

/// One experiment run. Angles in degrees; lengths in bohr.
struct ExperimentConfig
{
    double alpha_mass = 10.0;
    double k = 10.0;
    double a1 = 50.0;  // |a1|
    double a2 = 100.0; // |a2|
    std::vector<double> angles_deg{0, 1, 2, 3, 4, 5, 6, 8, 10, 12, 15, 20, 25, 30, 45, 60, 75, 90};
    std::vector<double> planewave_angles_deg{-90, -45, -30, -20, -10, -6, -4, -3, -2, -1, 0,
                                             1,   2,   3,   4,   6,   10, 20, 30, 45, 90};
    std::vector<double> k_values{5, 10, 20};
    double cone_extent_deg = 30.0;
    int j1 = 1;
    int j2 = 1;
    double rel_tol = 1e-4;
    int grid_order = 2;
    Strategy strategy = Strategy::factorized;
    std::size_t threads = 1;
    double validation_k = 5.0;  // source wavenumber of the wave-level validation checks
    std::string out_path;
    OutputFormat format = OutputFormat::csv;
    std::uint64_t seed = 20240611;
    bool corrupt_potential = false;

    /// Parses a JSON document; unknown keys and out-of-range values are ConfigErrors.
    static ExperimentConfig from_json(const std::string& text);
    static ExperimentConfig from_file(const std::string& path);
    std::string to_json() const;

    /// Range checks and channel openness at every wavenumber the run will use.
    void validate() const;

    /// FNV-1a over the physics-relevant fields; output path, format and threads excluded.
    std::string hash() const;

    Model model(double k_override = 0.0) const;
};

/// Table of samples sorted by the first column, with a provenance header.
struct ScanResult
{
    std::string experiment;
    std::string config_hash;
    Strategy strategy = Strategy::factorized;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    /// Derived scalars (contrast, half width, exponent). Empty optional reads as null.
    std::vector<std::pair<std::string, std::optional<double>>> summary;

    std::optional<double> summary_value(const std::string& key) const;
    std::string header_json() const;
    std::string to_csv() const;
    std::string to_json() const;
};

/// a1 on the z axis, a2 at polar angle theta_deg from it, both about the origin.
Geometry collinearity_geometry(const ExperimentConfig& cfg, double theta_deg);

/// P2(theta) / P2(0) over cfg.angles_deg.
ScanResult run_collinearity_scan(const ExperimentConfig& cfg);

/// |I(theta)|^2 about a1 up to cfg.cone_extent_deg, with the half width in the summary.
ScanResult run_cone_profile(const ExperimentConfig& cfg);

/// Cone half width for each of cfg.k_values and the fitted exponent of width ~ k^alpha.
ScanResult run_k_scaling(const ExperimentConfig& cfg);

/// Plane-wave P2 against the angle between the momentum and a2 - a1.
ScanResult run_planewave_scan(const ExperimentConfig& cfg);

struct ValidationCheck
{
    std::string name;
    double value;      // measured discrepancy
    double tolerance;
    bool passed;
};

struct ValidationReport
{
    std::string config_hash;
    std::vector<ValidationCheck> checks;

    bool passed() const;
    std::string to_csv() const;
    std::string to_json() const;
};

/// Oracle suite: orthonormality, Coulomb-Fourier identity, Helmholtz residuals, first-order
/// zero, factorized against direct far amplitude.
ValidationReport run_validation(const ExperimentConfig& cfg);

/// Least-squares slope of log y against log x.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace tracks
