#pragma once

#include <map>
#include <utility>
#include <vector>

#include "tracks/interpolation.hpp"

namespace tracks {

/// Highest principal quantum number modelled (s-states only).
inline constexpr int max_principal_number = 3;

/// sum_m c_m r^m exp(-decay r), the common shape of hydrogen s-states and their products.
struct ExpPolynomial
{
    std::vector<double> coeffs;
    double decay = 1.0;

    double operator()(double r) const;

    /// \int_0^\infty r^power f(r) dr
    double moment(int power) const;
    /// \int_r^\infty s^power f(s) ds
    double tail_moment(int power, double r) const;
    /// \int_0^r s^power f(s) ds
    double head_moment(int power, double r) const;

    friend ExpPolynomial operator*(const ExpPolynomial& a, const ExpPolynomial& b);
};

/// Bound hydrogen ns state in atomic units. The label is n - 1 (0 = ground state).
class AtomState
{
public:
    int n() const noexcept { return n_; }
    int label() const noexcept { return n_ - 1; }
    double energy() const noexcept { return energy_; }

    /// psi_n(r) in bohr^-3/2; the full 3D wavefunction, angular factor included.
    double operator()(double r) const { return wavefunction_(r); }
    const ExpPolynomial& wavefunction() const noexcept { return wavefunction_; }

private:
    friend AtomState eigenstate(int n);
    AtomState(int n, ExpPolynomial psi);

    int n_;
    double energy_;
    ExpPolynomial wavefunction_;
};

/// The n-s hydrogen eigenstate, 1 <= n <= max_principal_number.
AtomState eigenstate(int n);

/// State selected by channel label (0 = 1s, 1 = 2s, 2 = 3s).
inline AtomState state_for_label(int label) { return eigenstate(label + 1); }

/// Closed-form 3D Fourier transform of a spherically symmetric density.
double density_fourier(const ExpPolynomial& density, double q);

/// Projectile-atom transition potential V_ij(r) for a charge-2 projectile, with
/// tabulated real-space and momentum-space representations.
class RadialPotential
{
public:
    static constexpr double table_r_min = 1e-4;
    static constexpr double table_r_max = 40.0;
    static constexpr std::size_t table_r_nodes = 6000;
    static constexpr double table_q_min = 1e-3;
    static constexpr double table_q_max = 100.0;
    static constexpr std::size_t table_q_nodes = 1200;

    int bra() const noexcept { return bra_; }
    int ket() const noexcept { return ket_; }
    bool diagonal() const noexcept { return bra_ == ket_; }

    /// Asymptotic value of -r V(r): 2 for diagonal pairs, 0 otherwise.
    double coulomb_tail() const noexcept { return diagonal() ? 2.0 : 0.0; }

    /// Tabulated V(r) in hartree; closed form outside the table. Throws on r < 0.
    double value(double r) const;

    /// Shell-theorem closed form, bypassing the table.
    double exact_value(double r) const;
    double exact_derivative(double r) const;
    /// V(r) + tail / r without cancellation at large r.
    double screened_value(double r) const;

    /// Relative accuracy of fourier() that the table construction is verified to.
    static constexpr double fourier_rel_accuracy = 1e-6;

    /// \int V(x) exp(-i q.x) d^3x in hartree bohr^3. Diagonal pairs reject q = 0.
    double fourier(double q) const;

    /// Overlap density psi_i psi_j.
    const ExpPolynomial& density() const noexcept { return density_; }

    /// Mean radius of |psi_i psi_j|, the length used in far-field preconditions.
    double support_radius() const noexcept { return support_radius_; }

    /// Radius beyond which r^2 |V(r) + tail/r| is below 1e-18; integration cutoff.
    double cutoff_radius() const noexcept { return cutoff_radius_; }

    const LogHermiteTable& value_table() const noexcept { return value_table_; }

    /// Copy whose real-space table is multiplied by `factor` on [r_lo, r_hi], with the
    /// momentum-space table rebuilt from the corrupted values. Used for fault injection.
    RadialPotential with_corrupted_table(double factor, double r_lo, double r_hi) const;

private:
    friend RadialPotential transition_potential(const AtomState& i, const AtomState& j);
    RadialPotential(int bra, int ket, ExpPolynomial density);

    /// Transform from the closed form, or from the (possibly corrupted) value table.
    void build_fourier_table(bool from_table);

    int bra_;
    int ket_;
    ExpPolynomial density_;
    double v0_ = 0.0;                // V(0)
    double support_radius_ = 0.0;
    double cutoff_radius_ = 0.0;
    LogHermiteTable value_table_;
    LogHermiteTable fourier_table_;  // V~(q), Coulomb term included
    double fourier_zero_ = 0.0;      // regular part at q = 0
};

/// V_ij(r) = -(8 pi / r) [ \int_0^r s^2 psi_i psi_j ds + r \int_r^\infty s psi_i psi_j ds ].
RadialPotential transition_potential(const AtomState& i, const AtomState& j);

/// Continuous evaluation of a transition potential; analytic limit at r = 0.
double evaluate_potential(const RadialPotential& p, double r);

/// Immutable collection of transition potentials keyed by unordered label pair.
class PotentialSet
{
public:
    PotentialSet() = default;
    explicit PotentialSet(const std::vector<std::pair<int, int>>& pairs);

    /// Potentials linking the ground state to each label in `labels` (and the labels themselves).
    static PotentialSet for_excitations(const std::vector<int>& labels);

    const RadialPotential& get(int i, int j) const;
    bool contains(int i, int j) const;

    /// Copy with one pair replaced.
    PotentialSet with(RadialPotential p) const;

private:
    std::map<std::pair<int, int>, RadialPotential> table_;
};

} // namespace tracks
