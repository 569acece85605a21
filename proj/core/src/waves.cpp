#include "tracks/waves.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tracks/errors.hpp"

namespace tracks {

double ChannelWavenumber::get() const
{
    if (!open)
    {
        std::ostringstream msg;
        msg << "closed channel: source wavenumber " << source_k << " is below the threshold k_min = " << threshold;
        throw ClosedChannelError(msg.str(), threshold);
    }
    return value;
}

Kinematics::Kinematics(double alpha_mass, double k) : mass_(alpha_mass), k_(k)
{
    if (!(alpha_mass > 0.0) || !std::isfinite(alpha_mass))
        throw ConfigError("alpha mass must be positive");
    if (!(k > 0.0) || !std::isfinite(k))
        throw ConfigError("source wavenumber must be positive");
    for (int j1 = 0; j1 < channel_labels; ++j1)
    {
        for (int j2 = 0; j2 < channel_labels; ++j2)
        {
            ChannelWavenumber& c = table_[j1][j2];
            const double de = excitation_energy(j1, j2);
            c.source_k = k;
            c.radicand = k * k - 2.0 * mass_ * de;
            c.threshold = std::sqrt(2.0 * mass_ * de);
            if (j1 == 0 && j2 == 0)
            {
                c.open = true;
                c.value = k;  // exact, no round trip through the square root
            }
            else if (c.radicand > 0.0)
            {
                c.open = true;
                c.value = std::sqrt(c.radicand);
            }
        }
    }
}

double Kinematics::excitation_energy(int j1, int j2)
{
    auto energy = [](int j) {
        if (j < 0 || j >= channel_labels)
            throw ConfigError("channel label " + std::to_string(j) + " not supported");
        const double n = j + 1;
        return -0.5 / (n * n);
    };
    return energy(j1) + energy(j2) - 2.0 * energy(0);
}

const ChannelWavenumber& Kinematics::channel(int j1, int j2) const
{
    if (j1 < 0 || j1 >= channel_labels || j2 < 0 || j2 >= channel_labels)
        throw ConfigError("channel label out of range");
    return table_[j1][j2];
}

ChannelWavenumber channel_wavenumber(const Kinematics& kin, int j1, int j2)
{
    return kin.channel(j1, j2);
}

Geometry::Geometry(const Vec3& a1, const Vec3& a2) : a1_(a1), a2_(a2)
{
    const double r1 = norm(a1);
    const double r2 = norm(a2);
    if (r1 == 0.0 || r2 == 0.0)
        throw ConfigError("atom positions must be nonzero");
    if (!(r1 < r2))
        throw ConfigError("geometry requires |a1| < |a2|");
}

Geometry::Geometry(const Vec3& a1, const Vec3& a2, bool) : a1_(a1), a2_(a2)
{
    if (norm(a1) == 0.0 || norm(a2) == 0.0 || a1 == a2)
        throw ConfigError("atom positions must be nonzero and distinct");
}

Geometry Geometry::rotated(const Vec3& axis, double angle) const
{
    return Geometry(rotate(a1_, axis, angle), rotate(a2_, axis, angle), true);
}

Geometry Geometry::swapped() const
{
    return Geometry(a2_, a1_, true);
}

Source Source::spherical(const Kinematics& kin)
{
    return Source(Kind::spherical, kin.k(), Vec3{0, 0, 1});
}

Source Source::plane(const Kinematics& kin, const Vec3& direction)
{
    const double n = norm(direction);
    if (!(n > 0.0))
        throw ConfigError("plane-wave direction must be nonzero");
    return Source(Kind::plane, kin.k(), direction / n);
}

Complex Source::operator()(const Vec3& R) const
{
    if (kind_ == Kind::plane)
        return std::polar(1.0, k_ * dot(direction_, R));
    const double r = norm(R);
    if (r == 0.0)
        throw std::domain_error("spherical source evaluated at its singular point");
    return spherical_wave(k_, r);
}

Complex source_value(const Source& s, const Vec3& R)
{
    return s(R);
}

Complex outgoing_green(const Vec3& R, const Vec3& Rp, double kc)
{
    const double d = norm(R - Rp);
    if (d == 0.0)
        throw std::domain_error("outgoing_green: coincident points");
    return spherical_wave(kc, d);
}

Complex ingoing_green(const Vec3& R, const Vec3& Rp, double kc)
{
    const double d = norm(R - Rp);
    if (d == 0.0)
        throw std::domain_error("ingoing_green: coincident points");
    return spherical_wave(-kc, d);
}

} // namespace tracks
