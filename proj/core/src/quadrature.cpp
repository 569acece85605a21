#include "tracks/quadrature.hpp"

#include <stdexcept>

namespace tracks {

GaussRule gauss_legendre(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("gauss_legendre: n must be positive");

    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i)
    {
        // Tricomi initial guess, then Newton on P_n
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k)
            {
                const double p2 = ((2.0 * static_cast<double>(k) - 1.0) * x * p1 - (static_cast<double>(k) - 1.0) * p0)
                                  / static_cast<double>(k);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        // final derivative at the converged node
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t k = 2; k <= n; ++k)
        {
            const double p2 = ((2.0 * static_cast<double>(k) - 1.0) * x * p1 - (static_cast<double>(k) - 1.0) * p0)
                              / static_cast<double>(k);
            p0 = p1;
            p1 = p2;
        }
        dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1)
        rule.nodes[n / 2] = 0.0;
    return rule;
}

RadialTransform RadialSampler::transform(double q) const
{
    if (levels_.empty())
        throw std::logic_error("RadialSampler: no samples");
    const double max_width = q > 0.0 ? std::min(1.0, 2.0 * std::numbers::pi / q) : 1.0;
    std::size_t l = 0;
    while (l + 1 < levels_.size() && levels_[l].width > max_width)
        ++l;
    const Level& lv = levels_[l];
    RadialTransform out;
    for (std::size_t i = 0; i < lv.radii.size(); ++i)
    {
        const double r = lv.radii[i];
        out.value += lv.weighted[i] * sinc(q * r);
        out.derivative += lv.weighted[i] * r * sinc_derivative(q * r);
    }
    constexpr double four_pi = 4.0 * std::numbers::pi;
    out.value *= four_pi;
    out.derivative *= four_pi;
    return out;
}

} // namespace tracks
