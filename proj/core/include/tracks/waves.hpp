#pragma once

#include <array>
#include <complex>

#include "tracks/vec3.hpp"

namespace tracks {

using Complex = std::complex<double>;

/// Alpha-particle mass in electron masses.
inline constexpr double physical_alpha_mass = 7294.3;

/// Number of channel labels tracked per atom (1s, 2s, 3s).
inline constexpr int channel_labels = 3;

/// Projectile wavenumber in a given excitation channel, or a closed-channel flag.
struct ChannelWavenumber
{
    bool open = false;
    double value = 0.0;      // bohr^-1, zero when closed
    double radicand = 0.0;   // k^2 - 2 M dE
    double threshold = 0.0;  // smallest source k that opens the channel
    double source_k = 0.0;

    /// (k - k') / k; meaningful for open channels only.
    double elasticity() const { return (source_k - value) / source_k; }

    /// The wavenumber; throws ClosedChannelError when closed.
    double get() const;
};

/// Mass, source wavenumber and the derived channel wavenumbers, atomic units.
class Kinematics
{
public:
    Kinematics(double alpha_mass, double k);

    double alpha_mass() const noexcept { return mass_; }
    double k() const noexcept { return k_; }

    /// Energy deposited in the atoms: E_{j1} + E_{j2} - 2 E_0.
    static double excitation_energy(int j1, int j2);

    const ChannelWavenumber& channel(int j1, int j2) const;

private:
    double mass_;
    double k_;
    std::array<std::array<ChannelWavenumber, channel_labels>, channel_labels> table_{};
};

ChannelWavenumber channel_wavenumber(const Kinematics& kin, int j1, int j2);

/// Atom nuclei at a1 and a2 with |a1| < |a2|, source at the origin.
class Geometry
{
public:
    Geometry(const Vec3& a1, const Vec3& a2);

    const Vec3& a1() const noexcept { return a1_; }
    const Vec3& a2() const noexcept { return a2_; }
    double separation() const { return norm(a2_ - a1_); }
    /// (a2 - a1) / |a2 - a1|
    Vec3 axis_21() const { return normalized(a2_ - a1_); }

    /// Both positions rotated about the origin.
    Geometry rotated(const Vec3& axis, double angle) const;

    /// Atoms exchanged; bypasses the ordering rule for plane-wave symmetry scans.
    Geometry swapped() const;

private:
    Geometry(const Vec3& a1, const Vec3& a2, bool unchecked);

    Vec3 a1_;
    Vec3 a2_;
};

/// The zeroth-order projectile wave.
class Source
{
public:
    enum class Kind { spherical, plane };

    static Source spherical(const Kinematics& kin);
    static Source plane(const Kinematics& kin, const Vec3& direction);

    Kind kind() const noexcept { return kind_; }
    double k() const noexcept { return k_; }
    const Vec3& direction() const noexcept { return direction_; }

    /// Spherical: e^{ik|R|}/|R| (throws at the origin). Plane: e^{ik p.R}.
    Complex operator()(const Vec3& R) const;

private:
    Source(Kind kind, double k, const Vec3& direction) : kind_(kind), k_(k), direction_(direction) {}

    Kind kind_;
    double k_;
    Vec3 direction_;
};

Complex source_value(const Source& s, const Vec3& R);

/// e^{+i kc |R - Rp|} / |R - Rp|; throws when the points coincide.
Complex outgoing_green(const Vec3& R, const Vec3& Rp, double kc);

/// e^{-i kc |R - Rp|} / |R - Rp|, kept for sign-convention checks.
Complex ingoing_green(const Vec3& R, const Vec3& Rp, double kc);

/// e^{i k r} / r without argument checks, for inner loops.
inline Complex spherical_wave(double k, double r)
{
    return std::polar(1.0 / r, k * r);
}

} // namespace tracks
