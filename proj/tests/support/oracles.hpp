#pragma once

// Test-only reference computations. Nothing here calls into the library's quadrature
// or interpolation code, so each oracle is an independent route to the checked value.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "tracks/vec3.hpp"

namespace oracle {

constexpr double pi = std::numbers::pi;
using Complex = std::complex<double>;

/// Textbook hydrogen ns wavefunctions, n = 1..3.
inline double hydrogen_s(int n, double r)
{
    switch (n)
    {
    case 1: return std::exp(-r) / std::sqrt(pi);
    case 2: return (2.0 - r) * std::exp(-r / 2.0) / (4.0 * std::sqrt(2.0 * pi));
    case 3: return (27.0 - 18.0 * r + 2.0 * r * r) * std::exp(-r / 3.0) / (81.0 * std::sqrt(3.0 * pi));
    default: return 0.0;
    }
}

/// Composite Simpson on [a, b] with an even number of intervals.
template <typename F>
double simpson(F&& f, double a, double b, int intervals)
{
    if (intervals % 2)
        ++intervals;
    const double h = (b - a) / intervals;
    double s = f(a) + f(b);
    for (int i = 1; i < intervals; ++i)
        s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

/// Shell-theorem potential of a charge-2 projectile in the overlap density, by Simpson.
inline double shell_potential(const std::function<double(double)>& rho, double r, double upper = 80.0)
{
    const int n = 40000;
    const double inner = r > 0 ? simpson([&](double s) { return s * s * rho(s); }, 0.0, r, n) : 0.0;
    const double outer = simpson([&](double s) { return s * rho(s); }, r, upper, n);
    return r > 0 ? -8.0 * pi * (inner / r + outer) : -8.0 * pi * outer;
}

/// 3D Fourier transform of a spherically symmetric density by radial Simpson.
inline double density_transform(const std::function<double(double)>& rho, double q, double upper = 80.0)
{
    const int n = std::max(40000, static_cast<int>(upper * q * 400.0));
    return 4.0 * pi * simpson([&](double r) {
        const double x = q * r;
        const double sinc = std::abs(x) < 1e-8 ? 1.0 : std::sin(x) / x;
        return r * r * rho(r) * sinc;
    }, 0.0, upper, n);
}

/// Monte-Carlo estimate of -\int 2 rho(y) / |x - y| d^3y, sampling y from |rho|.
inline double monte_carlo_potential(const std::function<double(double)>& rho, double r, std::size_t samples,
                                    std::uint64_t seed)
{
    // inverse-CDF table of the radial density r^2 |rho(r)|
    const int nodes = 200000;
    const double upper = 60.0;
    std::vector<double> cdf(nodes + 1, 0.0);
    const double h = upper / nodes;
    for (int i = 1; i <= nodes; ++i)
    {
        const double a = (i - 1) * h;
        const double b = i * h;
        const double m = 0.5 * (a + b);
        cdf[i] = cdf[i - 1] + h * (a * a * std::abs(rho(a)) + 4.0 * m * m * std::abs(rho(m)) + b * b * std::abs(rho(b))) / 6.0;
    }
    const double mass = 4.0 * pi * cdf.back();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const tracks::Vec3 x{0.0, 0.0, r};
    double acc = 0.0;
    for (std::size_t k = 0; k < samples; ++k)
    {
        const double target = uni(rng) * cdf.back();
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), target);
        const auto i = std::max<std::ptrdiff_t>(1, it - cdf.begin());
        const double frac = (target - cdf[i - 1]) / std::max(cdf[i] - cdf[i - 1], 1e-300);
        const double s = (i - 1 + frac) * h;
        const double mu = 2.0 * uni(rng) - 1.0;
        const double phi = 2.0 * pi * uni(rng);
        const double st = std::sqrt(1.0 - mu * mu);
        const tracks::Vec3 y{s * st * std::cos(phi), s * st * std::sin(phi), s * mu};
        const double sign = rho(s) >= 0.0 ? 1.0 : -1.0;
        acc += sign / norm(x - y);
    }
    return -2.0 * mass * acc / static_cast<double>(samples);
}

/// Gauss-Legendre nodes and weights on [-1, 1] via Newton on the three-term recurrence.
inline std::pair<std::vector<double>, std::vector<double>> legendre_rule(int n)
{
    std::vector<double> x(n), w(n);
    for (int i = 0; i < n; ++i)
    {
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 60; ++it)
        {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k)
            {
                const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-15)
                break;
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return {x, w};
}

/// Randomised 3D transform \int V(|x|) e^{-i q.x} d^3x: the wavevector gets a random
/// orientation and the full angular integral is done numerically in the fixed frame, with
/// Gauss-Legendre panels in r and cos(theta) and a trapezoid rule in phi.
inline Complex randomized_fourier_3d(const std::function<double(double)>& v, double q, double upper,
                                     std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double mu_q = 2.0 * uni(rng) - 1.0;
    const double phi_q = 2.0 * pi * uni(rng);
    const double st_q = std::sqrt(1.0 - mu_q * mu_q);
    const tracks::Vec3 qv{q * st_q * std::cos(phi_q), q * st_q * std::sin(phi_q), q * mu_q};
    const double phase0 = 2.0 * pi * uni(rng);

    const auto [gx, gw] = legendre_rule(16);
    auto panels_for = [](double span) { return static_cast<int>(std::ceil(span)) + 2; };
    const int nr_panels = panels_for(upper * std::max(q, 1.0) / (2.0 * pi));
    const double hr = upper / nr_panels;
    Complex total{};
    for (int pr = 0; pr < nr_panels; ++pr)
    {
        for (std::size_t ir = 0; ir < gx.size(); ++ir)
        {
            const double r = hr * (pr + 0.5 + 0.5 * gx[ir]);
            const double wr = 0.5 * hr * gw[ir] * r * r * v(r);
            const double phase_span = q * r;
            const int nmu_panels = panels_for(phase_span / pi);
            const double hm = 2.0 / nmu_panels;
            Complex ang{};
            for (int pm = 0; pm < nmu_panels; ++pm)
            {
                for (std::size_t im = 0; im < gx.size(); ++im)
                {
                    const double mu = -1.0 + hm * (pm + 0.5 + 0.5 * gx[im]);
                    const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
                    const int nphi = static_cast<int>(std::ceil(1.25 * phase_span * st)) + 40;
                    Complex ring{};
                    for (int ip = 0; ip < nphi; ++ip)
                    {
                        const double phi = phase0 + 2.0 * pi * ip / nphi;
                        const tracks::Vec3 x{r * st * std::cos(phi), r * st * std::sin(phi), r * mu};
                        ring += std::polar(1.0, -dot(qv, x));
                    }
                    ang += ring * (0.5 * hm * gw[im] * 2.0 * pi / nphi);
                }
            }
            total += ang * wr;
        }
    }
    return total;
}

/// Seven-point finite-difference Laplacian.
template <typename F>
auto laplacian(F&& f, const tracks::Vec3& R, double h)
{
    const auto c = f(R);
    auto s = f(R + tracks::Vec3{h, 0, 0}) + f(R - tracks::Vec3{h, 0, 0});
    s += f(R + tracks::Vec3{0, h, 0}) + f(R - tracks::Vec3{0, h, 0});
    s += f(R + tracks::Vec3{0, 0, h}) + f(R - tracks::Vec3{0, 0, h});
    return (s - 6.0 * c) / (h * h);
}

} // namespace oracle
