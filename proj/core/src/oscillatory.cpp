#include "tracks/oscillatory.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

#include "tracks/quadrature.hpp"

namespace tracks {

namespace {

constexpr double pi = std::numbers::pi;

std::size_t cells_across(double extent, double max_extent, std::size_t minimum)
{
    if (!(max_extent > 0.0) || !std::isfinite(max_extent))
        return minimum;
    const double n = std::ceil(extent / max_extent);
    return std::max(minimum, static_cast<std::size_t>(std::min(n, 1e6)));
}

} // namespace

void CubatureSpec::validate() const
{
    if (!(radius > 0.0))
        throw std::invalid_argument("CubatureSpec: radius must be positive");
    if (!(rel_tol > 0.0 && rel_tol <= 0.1))
        throw std::invalid_argument("CubatureSpec: relative tolerance must lie in (0, 0.1]");
    if (abs_tol < 0.0)
        throw std::invalid_argument("CubatureSpec: absolute tolerance must be nonnegative");
    if (max_cells < 16 || max_cells > 50'000'000)
        throw std::invalid_argument("CubatureSpec: cell budget out of range");
    if (wavenumber_hint < 0.0)
        throw std::invalid_argument("CubatureSpec: wavenumber hint must be nonnegative");
}

namespace detail {

BallChart make_chart(const CubatureSpec& spec)
{
    Vec3 origin = spec.center;
    if (spec.singular_point && norm(*spec.singular_point - spec.center) < spec.radius)
        origin = *spec.singular_point;
    return BallChart{origin, origin - spec.center, spec.radius * spec.radius};
}

std::vector<CubatureCell> initial_cells(const CubatureSpec& spec, const BallChart& chart)
{
    // cells no wider than one wavelength; the rule has seven distinct abscissae per axis
    const double max_extent = spec.wavenumber_hint > 0.0 ? 2.0 * pi / spec.wavenumber_hint : 0.0;
    const double reach = spec.radius + norm(chart.offset);

    std::vector<CubatureCell> cells;
    const std::size_t shells = cells_across(reach, max_extent, 2);
    for (std::size_t i = 0; i < shells; ++i)
    {
        const double s_lo = static_cast<double>(i) / static_cast<double>(shells);
        const double s_hi = static_cast<double>(i + 1) / static_cast<double>(shells);
        const double outer = s_hi * reach;
        const std::size_t bands = cells_across(pi * outer, max_extent, 2);
        for (std::size_t b = 0; b < bands; ++b)
        {
            const double th_lo = pi * static_cast<double>(b) / static_cast<double>(bands);
            const double th_hi = pi * static_cast<double>(b + 1) / static_cast<double>(bands);
            const double sin_max = th_lo <= 0.5 * pi && th_hi >= 0.5 * pi
                                       ? 1.0
                                       : std::max(std::sin(th_lo), std::sin(th_hi));
            const std::size_t sectors = cells_across(2.0 * pi * outer * sin_max, max_extent, 3);
            for (std::size_t a = 0; a < sectors; ++a)
            {
                CubatureCell c;
                c.lo = {s_lo, std::cos(th_hi), 2.0 * pi * static_cast<double>(a) / static_cast<double>(sectors)};
                c.hi = {s_hi, std::cos(th_lo), 2.0 * pi * static_cast<double>(a + 1) / static_cast<double>(sectors)};
                cells.push_back(c);
            }
        }
    }
    return cells;
}

} // namespace detail

DirectionGrid DirectionGrid::product(std::size_t polar, std::size_t azimuths, const Vec3& axis)
{
    if (polar == 0 || azimuths == 0)
        throw std::invalid_argument("DirectionGrid: empty grid requested");
    DirectionGrid grid;
    grid.frame_ = Frame::about(axis);
    const GaussRule rule = gauss_legendre(polar);
    // descending mu so rings come out in increasing theta
    for (std::size_t i = polar; i-- > 0;)
        grid.add_ring(rule.nodes[i], rule.weights[i], azimuths);
    return grid;
}

DirectionGrid DirectionGrid::cap(const Vec3& axis, double cap_deg, std::size_t polar, std::size_t azimuths)
{
    if (polar == 0 || azimuths == 0 || !(cap_deg > 0.0) || cap_deg > 180.0)
        throw std::invalid_argument("DirectionGrid: malformed cap grid");
    DirectionGrid grid;
    grid.frame_ = Frame::about(axis);
    const GaussRule rule = gauss_legendre(polar);
    const double mu_lo = std::cos(cap_deg * pi / 180.0);
    const double half = 0.5 * (1.0 - mu_lo);
    const double mid = 0.5 * (1.0 + mu_lo);
    for (std::size_t i = polar; i-- > 0;)
        grid.add_ring(mid + half * rule.nodes[i], half * rule.weights[i], azimuths);
    return grid;
}

DirectionGrid::Graded DirectionGrid::layout_for_order(int order)
{
    if (order < 1)
        throw std::invalid_argument("DirectionGrid: grid order must be at least 1");
    Graded g;
    g.points_per_panel = 2 + 2 * static_cast<std::size_t>(order);
    g.azimuths = 8 * static_cast<std::size_t>(order + 1);
    return g;
}

DirectionGrid DirectionGrid::graded(const Vec3& axis, const Graded& layout)
{
    if (layout.points_per_panel == 0 || layout.azimuths == 0 || !(layout.fine_panel_deg > 0.0)
        || !(layout.coarse_panel_deg > 0.0) || !(layout.fine_cap_deg > 0.0) || layout.fine_cap_deg >= 90.0
        || !(layout.extent_deg > 0.0) || layout.extent_deg > 180.0)
        throw std::invalid_argument("DirectionGrid: malformed graded layout");

    constexpr double deg = pi / 180.0;
    std::vector<double> edges{0.0};
    auto append_panels = [&](double from, double to, double width) {
        const auto n = static_cast<std::size_t>(std::ceil((to - from) / width - 1e-9));
        for (std::size_t i = 1; i <= n; ++i)
            edges.push_back(from + (to - from) * static_cast<double>(i) / static_cast<double>(n));
    };
    const double cap = layout.fine_cap_deg;
    if (layout.both_poles)
    {
        append_panels(0.0, cap, layout.fine_panel_deg);
        append_panels(cap, 180.0 - cap, layout.coarse_panel_deg);
        append_panels(180.0 - cap, 180.0, layout.fine_panel_deg);
    }
    else
    {
        const double end = layout.extent_deg;
        append_panels(0.0, std::min(cap, end), layout.fine_panel_deg);
        if (end > cap)
            append_panels(cap, end, layout.coarse_panel_deg);
    }

    DirectionGrid grid;
    grid.frame_ = Frame::about(axis);
    const GaussRule rule = gauss_legendre(layout.points_per_panel);
    for (std::size_t p = 0; p + 1 < edges.size(); ++p)
    {
        const double mu_hi = std::cos(edges[p] * deg);
        const double mu_lo = std::cos(edges[p + 1] * deg);
        const double half = 0.5 * (mu_hi - mu_lo);
        const double mid = 0.5 * (mu_hi + mu_lo);
        for (std::size_t i = rule.size(); i-- > 0;)
            grid.add_ring(mid + half * rule.nodes[i], half * rule.weights[i], layout.azimuths);
    }
    return grid;
}

void DirectionGrid::add_ring(double mu, double mu_weight, std::size_t azimuths)
{
    const double theta = std::acos(std::clamp(mu, -1.0, 1.0));
    rings_.push_back(Ring{theta, directions_.size(), azimuths});
    const double w = mu_weight * 2.0 * pi / static_cast<double>(azimuths);
    for (std::size_t j = 0; j < azimuths; ++j)
    {
        const double phi = 2.0 * pi * static_cast<double>(j) / static_cast<double>(azimuths);
        directions_.push_back(frame_.direction(theta, phi));
        weights_.push_back(w);
        azimuths_.push_back(phi);
    }
}

double DirectionGrid::weight_sum() const
{
    double s = 0.0;
    for (double w : weights_)
        s += w;
    return s;
}

double radial_fourier(const RadialPotential& p, double q)
{
    if (q < 0.0)
        throw std::domain_error("radial_fourier: negative wavenumber");
    const double tail = p.coulomb_tail();
    if (q == 0.0 && tail != 0.0)
        throw std::domain_error("radial_fourier: diagonal pair has a divergent transform at q = 0");
    const GaussRule rule = gauss_legendre(20);
    auto r2w = [&](double r) { return r * r * p.screened_value(r); };
    const double regular = radial_sine_transform(r2w, q, p.cutoff_radius(), rule).value;
    return q == 0.0 ? regular : regular - 4.0 * pi * tail / (q * q);
}

Vec3 stationary_direction(const Geometry& g, Atom atom)
{
    return normalized(atom == Atom::first ? g.a1() : g.a2());
}

} // namespace tracks
