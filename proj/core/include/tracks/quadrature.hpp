#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

namespace tracks {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule
{
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }
};

GaussRule gauss_legendre(std::size_t n);

/// Applies a rule on [a, b] and accumulates f(x) * w.
template <typename F>
auto integrate_interval(const GaussRule& rule, double a, double b, F&& f)
{
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    decltype(f(mid)) sum{};
    for (std::size_t i = 0; i < rule.size(); ++i)
        sum += f(mid + half * rule.nodes[i]) * rule.weights[i];
    return sum * half;
}

/// Composite Gauss-Legendre over [a, b] split into `panels` equal pieces.
template <typename F>
auto integrate_composite(const GaussRule& rule, double a, double b, std::size_t panels, F&& f)
{
    const double w = (b - a) / static_cast<double>(panels);
    decltype(f(a)) sum{};
    for (std::size_t p = 0; p < panels; ++p)
        sum += integrate_interval(rule, a + w * static_cast<double>(p), a + w * static_cast<double>(p + 1), f);
    return sum;
}

/// sin(x)/x with the removable singularity filled in.
inline double sinc(double x)
{
    if (std::abs(x) < 1e-4)
    {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

/// d/dx sinc(x).
inline double sinc_derivative(double x)
{
    if (std::abs(x) < 1e-3)
    {
        const double x2 = x * x;
        return x * (-1.0 / 3.0 + x2 / 30.0 - x2 * x2 / 840.0);
    }
    return (x * std::cos(x) - std::sin(x)) / (x * x);
}

/// Value and q-derivative of the 3D Fourier transform of a spherically symmetric function.
struct RadialTransform
{
    double value = 0.0;
    double derivative = 0.0;
};

/// 4 pi \int_0^L r^2 g(r) sinc(q r) dr by composite Gauss-Legendre, the panel width
/// capped at one wavelength 2 pi / q. `r2g` must return r^2 g(r) so that integrable
/// 1/r behaviour at the origin is absorbed by the caller.
template <typename F>
RadialTransform radial_sine_transform(F&& r2g, double q, double upper, const GaussRule& rule)
{
    const double max_width = q > 0.0 ? std::min(1.0, 2.0 * std::numbers::pi / q) : 1.0;
    const auto panels = static_cast<std::size_t>(std::ceil(upper / max_width));
    const double w = upper / static_cast<double>(panels);
    RadialTransform out;
    for (std::size_t p = 0; p < panels; ++p)
    {
        const double a = w * static_cast<double>(p);
        const double half = 0.5 * w;
        const double mid = a + half;
        double sv = 0.0;
        double sd = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i)
        {
            const double r = mid + half * rule.nodes[i];
            const double h = r2g(r) * rule.weights[i];
            sv += h * sinc(q * r);
            sd += h * r * sinc_derivative(q * r);
        }
        out.value += sv * half;
        out.derivative += sd * half;
    }
    constexpr double four_pi = 4.0 * std::numbers::pi;
    out.value *= four_pi;
    out.derivative *= four_pi;
    return out;
}

/// r^2 g(r) sampled once on nested composite Gauss-Legendre grids (panel widths halving
/// from one bohr), so transforms at many wavenumbers share the integrand evaluations.
class RadialSampler
{
public:
    RadialSampler() = default;

    template <typename F>
    RadialSampler(F&& r2g, double upper, const GaussRule& rule, std::size_t levels) : upper_(upper)
    {
        const auto base = static_cast<std::size_t>(std::ceil(upper));
        for (std::size_t l = 0; l < levels; ++l)
        {
            Level lv;
            const std::size_t panels = base << l;
            lv.width = upper / static_cast<double>(panels);
            const double half = 0.5 * lv.width;
            for (std::size_t p = 0; p < panels; ++p)
            {
                const double mid = lv.width * static_cast<double>(p) + half;
                for (std::size_t i = 0; i < rule.size(); ++i)
                {
                    const double r = mid + half * rule.nodes[i];
                    lv.radii.push_back(r);
                    lv.weighted.push_back(r2g(r) * rule.weights[i] * half);
                }
            }
            levels_.push_back(std::move(lv));
        }
    }

    double upper() const noexcept { return upper_; }

    /// Same contract as radial_sine_transform, on the coarsest level whose panels fit a wavelength.
    RadialTransform transform(double q) const;

private:
    struct Level
    {
        double width = 0.0;
        std::vector<double> radii;
        std::vector<double> weighted;
    };
    double upper_ = 0.0;
    std::vector<Level> levels_;
};

} // namespace tracks
