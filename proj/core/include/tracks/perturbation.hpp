#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tracks/atomic.hpp"
#include "tracks/interpolation.hpp"
#include "tracks/oscillatory.hpp"
#include "tracks/waves.hpp"

namespace tracks {

enum class Strategy { direct, factorized };

std::string to_string(Strategy s);
/// "direct" or "factorized"; anything else is a ConfigError.
Strategy parse_strategy(const std::string& name);

/// Knobs of the direct-quadrature path.
struct DirectOptions
{
    double ball_radius = 15.0;        // bohr around each atom
    double rel_tol = 1e-4;
    /// Absolute error floor as a fraction of the integrand's unsigned mass, for amplitudes
    /// far below their peak.
    double abs_fraction = 1e-5;
    std::size_t max_cells = 2'000'000;
    double theta_step_deg = 0.5;      // spacing of tabulated far amplitudes
    std::size_t polar = 8;            // rings of the cap grid for the second-order far field
    std::size_t azimuths = 8;
};

/// Everything a perturbative evaluation needs besides the atom positions.
struct Model
{
    Kinematics kin;
    Source src;
    PotentialSet potentials;
    DirectOptions direct;
    int grid_order = 2;
    std::size_t threads = 1;

    /// Potentials for the ground state and the given excited labels.
    static Model build(const Kinematics& kin, const Source& src, const std::vector<int>& labels);
};

/// Coefficient field f^{(n)}_{j1 j2}(R) of the projectile in one channel.
class ChannelField
{
public:
    using Fn = std::function<Complex(const Vec3&)>;

    ChannelField(int order, int j1, int j2, Strategy strategy, Fn fn);

    /// The identically vanishing field; the first-order double-excitation channel.
    static ChannelField zero(int order, int j1, int j2);

    int order() const noexcept { return order_; }
    int j1() const noexcept { return j1_; }
    int j2() const noexcept { return j2_; }
    Strategy strategy() const noexcept { return strategy_; }
    bool is_zero() const noexcept { return !fn_; }

    Complex operator()(const Vec3& R) const { return fn_ ? fn_(R) : Complex{}; }

private:
    int order_;
    int j1_;
    int j2_;
    Strategy strategy_;
    Fn fn_;
};

/// Position and incidence of the atom that a first-order wave scatters from.
struct Scatterer
{
    Vec3 position;
    Vec3 incidence;  // unit propagation direction of the source wave at the atom
    int label;       // excited label
    double k_in;
    double k_out;
};

/// First-order scattering data for atom `atom` excited to `label` by the source.
Scatterer scatterer_for(const Geometry& g, const Model& m, Atom atom, int label);

/// f^{(1)} for atom `atom` excited to `label` (> 0). Direct: the full Green convolution over
/// a ball around the atom. Factorized: the far-field form I(u) e^{ik'r}/r.
ChannelField first_order_field(int label, Atom atom, const Geometry& g, const Model& m, Strategy strategy);

/// f^{(1)}_{j1 j2}: the zero field when both labels are excited, otherwise the single
/// excitation of the matching atom. The elastic channel is not modelled.
ChannelField first_order_channel(int j1, int j2, const Geometry& g, const Model& m, Strategy strategy);

/// Far amplitudes I(u) on a direction grid.
struct AngularField
{
    DirectionGrid grid;
    std::vector<Complex> amplitude;
    std::vector<double> error;  // per-direction quadrature or table error
    double wavenumber = 0.0;

    double power() const;
    /// Azimuthal average of |A|^2 on each ring of the grid.
    std::vector<double> ring_power() const;
    std::size_t argmax() const;
};

/// I(u) for one direction; `error` receives the quadrature error estimate.
Complex far_amplitude(const Scatterer& s, const Model& m, const Vec3& u, Strategy strategy,
                      double* error = nullptr);

/// I(u) over a grid; throws ConfigError unless |a| >= 10 x the potential's support radius.
AngularField first_order_far_amplitude(int label, Atom atom, const Geometry& g, const Model& m,
                                       const DirectionGrid& grid, Strategy strategy);

/// Direct far amplitude tabulated against the polar angle from the incidence direction,
/// on which it depends alone.
class AxialAmplitude
{
public:
    AxialAmplitude(const Scatterer& s, const Model& m, double theta_lo, double theta_hi);

    Complex operator()(double theta) const;
    double max_error() const noexcept { return max_error_; }
    double max_abs() const noexcept { return max_abs_; }
    /// Largest node error relative to the largest node amplitude.
    double relative_error() const noexcept { return max_abs_ > 0.0 ? max_error_ / max_abs_ : 0.0; }

private:
    UniformCubic re_;
    UniformCubic im_;
    double max_error_ = 0.0;
    double max_abs_ = 0.0;
};

/// Smallest angle at which the ring power drops to half its peak, interpolated linearly
/// between rings; empty when the power never halves (no cone).
std::optional<double> cone_half_width(const AngularField& af);

struct SecondOrderSource
{
    Complex value;
    Complex first_term;   // f^{(1)}_{j1 0}(R) V_{0 j2}(R - a2)
    Complex second_term;  // f^{(1)}_{0 j2}(R) V_{j1 0}(R - a1)
};

/// K_2(R) from factorized first-order fields; each term is skipped where its potential
/// lies past the cutoff radius.
SecondOrderSource second_order_source(int j1, int j2, const Geometry& g, const Model& m, const Vec3& R);

struct Probability
{
    double value = 0.0;
    double error = 0.0;        // absolute
    double first_term = 0.0;   // power of the atom-1-then-atom-2 amplitude alone
    double second_term = 0.0;  // power of the reverse-order amplitude alone
};

/// Far-field angular power of the double-excitation channel. Factorized spherical source:
/// the dominant first term only. Plane source: both orderings. Direct: full coherent sum.
Probability double_excitation_probability(int j1, int j2, const Geometry& g, const Model& m, Strategy strategy);

/// Same pipeline with the model's source replaced by a plane wave along `direction`.
Probability plane_wave_double_excitation(int j1, int j2, const Geometry& g, const Model& m, const Vec3& direction,
                                         Strategy strategy);

} // namespace tracks
