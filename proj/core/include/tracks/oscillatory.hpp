#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <queue>
#include <vector>

#include "tracks/atomic.hpp"
#include "tracks/vec3.hpp"
#include "tracks/waves.hpp"

namespace tracks {

/// Adaptive cubature request over a ball.
struct CubatureSpec
{
    Vec3 center;
    double radius = 1.0;
    double rel_tol = 1e-6;
    /// Absolute floor on the error target; zero means purely relative.
    double abs_tol = 0.0;
    std::size_t max_cells = 400000;
    /// Largest local wavenumber of the integrand's oscillation (bohr^-1); sizes the initial cells.
    double wavenumber_hint = 0.0;
    /// Point with an integrable 1/|x - x0| singularity; spherical coordinates are centred on it.
    std::optional<Vec3> singular_point;

    /// Throws std::invalid_argument when the request is malformed.
    void validate() const;
};

struct CubatureResult
{
    Complex value;
    double error = 0.0;
    bool converged = false;
    std::size_t evaluations = 0;
    std::size_t cells = 0;
};

namespace detail {

/// Box in (s, mu, phi) with s = r / t_exit(u) in [0, 1], mu = cos(theta).
struct CubatureCell
{
    std::array<double, 3> lo;
    std::array<double, 3> hi;
    Complex value;
    double error = 0.0;
    int split_dim = 0;
};

/// Ray-ball exit distance from an interior origin.
struct BallChart
{
    Vec3 origin;
    Vec3 offset;  // origin - center
    double radius2;

    double exit(const Vec3& u) const
    {
        const double b = dot(offset, u);
        const double c = dot(offset, offset) - radius2;
        return -b + std::sqrt(std::max(b * b - c, 0.0));
    }
};

/// Spherical chart for the spec: origin at the declared singularity when it lies inside.
BallChart make_chart(const CubatureSpec& spec);

/// Deterministic initial partition keyed to the wavelength hint.
std::vector<CubatureCell> initial_cells(const CubatureSpec& spec, const BallChart& chart);

// Genz-Malik degree 7 rule with embedded degree 5, three dimensions.
struct GenzMalik3
{
    static constexpr double l2 = 0.35856858280031809;   // sqrt(9/70)
    static constexpr double l4 = 0.94868329805051377;   // sqrt(9/10)
    static constexpr double l5 = 0.68824720161168529;   // sqrt(9/19)
    static constexpr double w1 = -10936.0 / 19683.0;
    static constexpr double w2 = 980.0 / 6561.0;
    static constexpr double w3 = 620.0 / 19683.0;
    static constexpr double w4 = 200.0 / 19683.0;
    static constexpr double w5 = 6859.0 / 19683.0 / 8.0;
    static constexpr double e1 = -1671.0 / 729.0;
    static constexpr double e2 = 245.0 / 486.0;
    static constexpr double e3 = -35.0 / 1458.0;
    static constexpr double e4 = 25.0 / 729.0;
    static constexpr std::size_t points = 33;
};

inline double cmag(const Complex& z) { return std::abs(z.real()) + std::abs(z.imag()); }

template <typename G>
void evaluate_cell(CubatureCell& cell, G& g)
{
    using R = GenzMalik3;
    std::array<double, 3> c;
    std::array<double, 3> h;
    for (int d = 0; d < 3; ++d)
    {
        c[d] = 0.5 * (cell.lo[d] + cell.hi[d]);
        h[d] = 0.5 * (cell.hi[d] - cell.lo[d]);
    }
    const double volume = 8.0 * h[0] * h[1] * h[2];
    const Complex f0 = g(c);

    Complex sum2{}, sum3{}, sum4{}, sum5{};
    double best_diff = -1.0;
    int best_dim = 0;
    for (int d = 0; d < 3; ++d)
    {
        auto p = c;
        p[d] = c[d] + R::l2 * h[d];
        const Complex a = g(p);
        p[d] = c[d] - R::l2 * h[d];
        const Complex b = g(p);
        p[d] = c[d] + R::l4 * h[d];
        const Complex a4 = g(p);
        p[d] = c[d] - R::l4 * h[d];
        const Complex b4 = g(p);
        sum2 += a + b;
        sum3 += a4 + b4;
        // fourth divided difference picks the split axis; ties go to the lower axis
        const double diff = cmag(a + b - 2.0 * f0 - (a4 + b4 - 2.0 * f0) / 7.0);
        if (diff > best_diff)
        {
            best_diff = diff;
            best_dim = d;
        }
    }
    for (int d = 0; d < 3; ++d)
        for (int e = d + 1; e < 3; ++e)
            for (double sd : {-1.0, 1.0})
                for (double se : {-1.0, 1.0})
                {
                    auto p = c;
                    p[d] += sd * R::l4 * h[d];
                    p[e] += se * R::l4 * h[e];
                    sum4 += g(p);
                }
    for (double s0 : {-1.0, 1.0})
        for (double s1 : {-1.0, 1.0})
            for (double s2 : {-1.0, 1.0})
            {
                const std::array<double, 3> p{c[0] + s0 * R::l5 * h[0], c[1] + s1 * R::l5 * h[1],
                                              c[2] + s2 * R::l5 * h[2]};
                sum5 += g(p);
            }
    const Complex i7 = volume * (R::w1 * f0 + R::w2 * sum2 + R::w3 * sum3 + R::w4 * sum4 + R::w5 * sum5);
    const Complex i5 = volume * (R::e1 * f0 + R::e2 * sum2 + R::e3 * sum3 + R::e4 * sum4);
    cell.value = i7;
    cell.error = std::abs(i7 - i5);
    cell.split_dim = best_dim;
}

} // namespace detail

/// Adaptive cubature of a complex field over a ball, in spherical coordinates about the
/// ball centre or the declared singular point. Deterministic: the same spec and integrand
/// always produce bit-identical output. A result with converged == false carries the best
/// estimate reached within the cell budget.
template <typename F>
CubatureResult integrate_ball(F&& f, const CubatureSpec& spec)
{
    spec.validate();
    const detail::BallChart chart = detail::make_chart(spec);
    std::size_t evaluations = 0;

    auto g = [&](const std::array<double, 3>& p) -> Complex {
        ++evaluations;
        const double mu = p[1];
        const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        const Vec3 u{st * std::cos(p[2]), st * std::sin(p[2]), mu};
        const double t = chart.exit(u);
        const double r = p[0] * t;
        return f(chart.origin + u * r) * (r * r * t);
    };

    std::vector<detail::CubatureCell> cells = detail::initial_cells(spec, chart);
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry> heap;
    Complex total{};
    double total_error = 0.0;
    for (std::size_t i = 0; i < cells.size(); ++i)
    {
        detail::evaluate_cell(cells[i], g);
        total += cells[i].value;
        total_error += cells[i].error;
        heap.emplace(cells[i].error, i);
    }

    auto target = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
    std::size_t since_resum = 0;
    while (total_error > target() && cells.size() < spec.max_cells)
    {
        const std::size_t idx = heap.top().second;
        heap.pop();
        detail::CubatureCell parent = cells[idx];
        const int d = parent.split_dim;
        const double mid = 0.5 * (parent.lo[d] + parent.hi[d]);
        detail::CubatureCell left = parent;
        detail::CubatureCell right = parent;
        left.hi[d] = mid;
        right.lo[d] = mid;
        detail::evaluate_cell(left, g);
        detail::evaluate_cell(right, g);
        total += left.value + right.value - parent.value;
        total_error += left.error + right.error - parent.error;
        cells[idx] = left;
        cells.push_back(right);
        heap.emplace(left.error, idx);
        heap.emplace(right.error, cells.size() - 1);
        if (++since_resum == 512)
        {
            // refresh running sums so cancellation drift cannot stall the loop
            since_resum = 0;
            total = {};
            total_error = 0.0;
            for (const auto& c : cells)
            {
                total += c.value;
                total_error += c.error;
            }
        }
    }

    CubatureResult out;
    for (const auto& c : cells)
    {
        out.value += c.value;
        out.error += c.error;
    }
    out.converged = out.error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value));
    out.evaluations = evaluations;
    out.cells = cells.size();
    return out;
}

/// Positive-weight quadrature on the unit sphere organised in rings of constant polar
/// angle about an axis.
class DirectionGrid
{
public:
    struct Ring
    {
        double theta;  // polar angle from the grid axis, radians
        std::size_t begin;
        std::size_t count;
    };

    /// Panel layout for ring-graded grids; angles in degrees.
    struct Graded
    {
        double fine_cap_deg = 20.0;
        double fine_panel_deg = 0.25;
        double coarse_panel_deg = 5.0;
        std::size_t points_per_panel = 4;
        std::size_t azimuths = 16;
        bool both_poles = false;
        /// Largest polar angle covered; below 180 the grid is a cap. Ignored with both_poles.
        double extent_deg = 180.0;
    };

    /// Gauss-Legendre in cos(theta) times uniform azimuths.
    static DirectionGrid product(std::size_t polar, std::size_t azimuths, const Vec3& axis = {0, 0, 1});

    /// Gauss-Legendre rings covering only the polar cap theta <= cap_deg; weights sum to
    /// the cap's solid angle 2 pi (1 - cos cap).
    static DirectionGrid cap(const Vec3& axis, double cap_deg, std::size_t polar, std::size_t azimuths);

    /// Rings clustered near the axis (and the antipole when requested).
    static DirectionGrid graded(const Vec3& axis, const Graded& layout);

    /// Graded layout scaled by an integer order knob (order >= 1).
    static Graded layout_for_order(int order);

    const Vec3& axis() const noexcept { return frame_.e3; }
    const Frame& frame() const noexcept { return frame_; }
    const std::vector<Vec3>& directions() const noexcept { return directions_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    const std::vector<double>& azimuths() const noexcept { return azimuths_; }
    const std::vector<Ring>& rings() const noexcept { return rings_; }
    std::size_t size() const noexcept { return directions_.size(); }
    double weight_sum() const;

private:
    DirectionGrid() = default;
    void add_ring(double mu, double mu_weight, std::size_t azimuths);

    Frame frame_;
    std::vector<Vec3> directions_;
    std::vector<double> weights_;
    std::vector<double> azimuths_;
    std::vector<Ring> rings_;
};

/// (4 pi / q) \int_0^\infty r sin(q r) V(r) dr by direct quadrature of the closed-form
/// potential, the Coulomb tail of diagonal pairs transformed analytically. Diagonal pairs
/// reject q = 0. Slower than RadialPotential::fourier, which interpolates the same values.
double radial_fourier(const RadialPotential& p, double q);

enum class Atom { first, second };

/// Predicted cone axis a / |a| for the selected atom.
Vec3 stationary_direction(const Geometry& g, Atom atom);

} // namespace tracks
