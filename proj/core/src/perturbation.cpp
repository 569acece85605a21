#include "tracks/perturbation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "tracks/errors.hpp"
#include "tracks/parallel.hpp"
#include "tracks/quadrature.hpp"

namespace tracks {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double deg = pi / 180.0;

double green_prefactor(const Model& m)
{
    return -m.kin.alpha_mass() / (2.0 * pi);
}

void require_far_field(double distance, const RadialPotential& p, const char* what)
{
    const double need = 10.0 * p.support_radius();
    if (distance < need)
    {
        std::ostringstream msg;
        msg << what << ": distance " << distance << " bohr is inside the far zone limit " << need
            << " bohr (10 x atom support radius)";
        throw ConfigError(msg.str());
    }
}

CubatureResult checked(const CubatureResult& r, const char* what)
{
    if (!r.converged)
    {
        std::ostringstream msg;
        msg << what << ": cubature did not converge (estimate " << std::abs(r.value) << ", error " << r.error
            << ", " << r.cells << " cells)";
        throw AccuracyError(msg.str(), std::abs(r.value), r.error);
    }
    return r;
}

CubatureSpec ball_spec(const Model& m, const Vec3& center, double hint)
{
    CubatureSpec spec;
    spec.center = center;
    spec.radius = m.direct.ball_radius;
    spec.rel_tol = m.direct.rel_tol;
    spec.max_cells = m.direct.max_cells;
    spec.wavenumber_hint = hint;
    return spec;
}

// \int |V| d^3y, the scale of a non-oscillating integrand
double potential_mass(const RadialPotential& p)
{
    const GaussRule rule = gauss_legendre(16);
    const double upper = p.cutoff_radius();
    const auto panels = static_cast<std::size_t>(std::ceil(upper)) * 2;
    return 4.0 * pi * integrate_composite(rule, 0.0, upper, panels, [&](double r) { return r * r * std::abs(p.value(r)); });
}

// |V~(|k_out u - k_in a|)|^2 integrated over the sphere, depending only on the wavenumbers
struct AngularIntegral
{
    double value;
    double error;
};

AngularIntegral angular_integral(const RadialPotential& p, double k_in, double k_out, int order)
{
    auto at_order = [&](int o) {
        const DirectionGrid grid = DirectionGrid::graded({0, 0, 1}, DirectionGrid::layout_for_order(o));
        double sum = 0.0;
        const Vec3 axis{0, 0, 1};
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            const double v = p.fourier(norm(grid.directions()[i] * k_out - axis * k_in));
            sum += grid.weights()[i] * v * v;
        }
        return sum;
    };
    const double a = at_order(order);
    const double b = at_order(order + 1);
    return {b, std::abs(b - a)};
}

// Polar angle past which the factorized angular profile is negligible
double cap_angle(const RadialPotential& p, double k_in, double k_out)
{
    const double peak = p.fourier(std::abs(k_out - k_in));
    for (double t = 1.0; t < 90.0; t += 0.25)
    {
        const double q = std::sqrt(k_in * k_in + k_out * k_out - 2.0 * k_in * k_out * std::cos(t * deg));
        const double v = p.fourier(q);
        if (v * v < 1e-6 * peak * peak)
            return std::max(t, 2.0);
    }
    return 90.0;
}

} // namespace

std::string to_string(Strategy s)
{
    return s == Strategy::direct ? "direct" : "factorized";
}

Strategy parse_strategy(const std::string& name)
{
    if (name == "direct")
        return Strategy::direct;
    if (name == "factorized")
        return Strategy::factorized;
    throw ConfigError("unknown strategy '" + name + "' (expected direct or factorized)");
}

Model Model::build(const Kinematics& kin, const Source& src, const std::vector<int>& labels)
{
    return Model{kin, src, PotentialSet::for_excitations(labels), {}, 2, 1};
}

ChannelField::ChannelField(int order, int j1, int j2, Strategy strategy, Fn fn)
    : order_(order), j1_(j1), j2_(j2), strategy_(strategy), fn_(std::move(fn))
{
    if (order < 0 || order > 2)
        throw std::invalid_argument("ChannelField: order must be 0, 1 or 2");
}

ChannelField ChannelField::zero(int order, int j1, int j2)
{
    return ChannelField(order, j1, j2, Strategy::factorized, nullptr);
}

Scatterer scatterer_for(const Geometry& g, const Model& m, Atom atom, int label)
{
    if (label <= 0 || label >= channel_labels)
        throw ConfigError("excited label must be 1 or 2");
    const Vec3 a = atom == Atom::first ? g.a1() : g.a2();
    Scatterer s;
    s.position = a;
    s.incidence = m.src.kind() == Source::Kind::spherical ? normalized(a) : m.src.direction();
    s.label = label;
    s.k_in = m.kin.k();
    s.k_out = m.kin.channel(label, 0).get();
    return s;
}

Complex far_amplitude(const Scatterer& s, const Model& m, const Vec3& u, Strategy strategy, double* error)
{
    const RadialPotential& v = m.potentials.get(0, s.label);
    if (m.src.kind() == Source::Kind::spherical)
        require_far_field(norm(s.position), v, "far amplitude");
    const Vec3 q = u * s.k_out - s.incidence * s.k_in;
    const Complex pref = green_prefactor(m) * m.src(s.position);
    if (strategy == Strategy::factorized)
    {
        const Complex a = pref * v.fourier(norm(q));
        if (error)
            *error = RadialPotential::fourier_rel_accuracy * std::abs(a);
        return a;
    }

    // phase gradient of src(a + y) e^{-i k' u.y} is bounded by |q| plus the wavefront curvature
    double hint = norm(q) + 0.5;
    if (m.src.kind() == Source::Kind::spherical)
        hint += s.k_in * m.direct.ball_radius / norm(s.position);
    const Vec3 kout_u = u * s.k_out;
    CubatureSpec spec = ball_spec(m, {0, 0, 0}, hint);
    spec.abs_tol = m.direct.abs_fraction * potential_mass(v) * std::abs(m.src(s.position));
    auto integrand = [&](const Vec3& y) {
        return v.value(norm(y)) * m.src(s.position + y) * std::polar(1.0, -dot(kout_u, y));
    };
    const CubatureResult r = checked(integrate_ball(integrand, spec), "far amplitude");
    const double scale = std::abs(green_prefactor(m));
    if (error)
        *error = scale * r.error;
    return green_prefactor(m) * r.value;
}

namespace {

Complex far_wave(const Scatterer& s, const Model& m, const Vec3& R)
{
    const Vec3 d = R - s.position;
    const double r = norm(d);
    if (r == 0.0)
        throw std::domain_error("far-field first-order wave evaluated at its atom");
    return far_amplitude(s, m, d / r, Strategy::factorized) * spherical_wave(s.k_out, r);
}

} // namespace

ChannelField first_order_field(int label, Atom atom, const Geometry& g, const Model& m, Strategy strategy)
{
    const Scatterer s = scatterer_for(g, m, atom, label);
    const int j1 = atom == Atom::first ? label : 0;
    const int j2 = atom == Atom::first ? 0 : label;
    // the field owns a copy of the model so it may outlive the caller's
    const auto model = std::make_shared<const Model>(m);
    if (strategy == Strategy::factorized)
        return ChannelField(1, j1, j2, strategy, [s, model](const Vec3& R) { return far_wave(s, *model, R); });
    // absolute floor from the unsigned integrand mass, for points where the field is tiny
    const double floor = m.direct.abs_fraction * potential_mass(m.potentials.get(0, s.label)) * std::abs(m.src(s.position));
    return ChannelField(1, j1, j2, strategy, [s, model, floor](const Vec3& R) {
        const Model& m = *model;
        const RadialPotential& v = m.potentials.get(0, s.label);
        CubatureSpec spec = ball_spec(m, {0, 0, 0}, s.k_in + s.k_out);
        spec.singular_point = R - s.position;
        const Vec3 rel = R - s.position;
        spec.abs_tol = floor / std::max(norm(rel), 1.0);
        auto integrand = [&](const Vec3& y) {
            const double d = norm(rel - y);
            if (d == 0.0)
                return Complex{};
            return v.value(norm(y)) * m.src(s.position + y) * spherical_wave(s.k_out, d);
        };
        return green_prefactor(m) * checked(integrate_ball(integrand, spec), "first-order field").value;
    });
}

ChannelField first_order_channel(int j1, int j2, const Geometry& g, const Model& m, Strategy strategy)
{
    if (j1 != 0 && j2 != 0)
        return ChannelField::zero(1, j1, j2);
    if (j1 == 0 && j2 == 0)
        throw std::invalid_argument("first_order_channel: the elastic channel is not modelled");
    return j1 != 0 ? first_order_field(j1, Atom::first, g, m, strategy)
                   : first_order_field(j2, Atom::second, g, m, strategy);
}

double AngularField::power() const
{
    double s = 0.0;
    for (std::size_t i = 0; i < amplitude.size(); ++i)
        s += grid.weights()[i] * std::norm(amplitude[i]);
    return s;
}

std::vector<double> AngularField::ring_power() const
{
    std::vector<double> out;
    out.reserve(grid.rings().size());
    for (const auto& ring : grid.rings())
    {
        double s = 0.0;
        for (std::size_t i = ring.begin; i < ring.begin + ring.count; ++i)
            s += std::norm(amplitude[i]);
        out.push_back(s / static_cast<double>(ring.count));
    }
    return out;
}

std::size_t AngularField::argmax() const
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < amplitude.size(); ++i)
        if (std::abs(amplitude[i]) > std::abs(amplitude[best]))
            best = i;
    return best;
}

AngularField first_order_far_amplitude(int label, Atom atom, const Geometry& g, const Model& m,
                                       const DirectionGrid& grid, Strategy strategy)
{
    const Scatterer s = scatterer_for(g, m, atom, label);
    require_far_field(norm(s.position), m.potentials.get(0, label), "first-order far amplitude");
    struct Sample
    {
        Complex a;
        double e;
    };
    const auto samples = parallel_map(grid.size(), m.threads, [&](std::size_t i) {
        Sample out{};
        out.a = far_amplitude(s, m, grid.directions()[i], strategy, &out.e);
        return out;
    });
    AngularField af{grid, {}, {}, s.k_out};
    for (const auto& x : samples)
    {
        af.amplitude.push_back(x.a);
        af.error.push_back(x.e);
    }
    return af;
}

AxialAmplitude::AxialAmplitude(const Scatterer& s, const Model& m, double theta_lo, double theta_hi)
{
    if (!(theta_hi > theta_lo))
        throw std::invalid_argument("AxialAmplitude: empty angle window");
    const double step = m.direct.theta_step_deg * deg;
    const auto n = std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil((theta_hi - theta_lo) / step)) + 1);
    const Frame frame = Frame::about(s.incidence);
    struct Sample
    {
        Complex a;
        double e;
    };
    const auto samples = parallel_map(n, m.threads, [&](std::size_t i) {
        const double t = theta_lo + (theta_hi - theta_lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        Sample out{};
        out.a = far_amplitude(s, m, frame.direction(t, 0.0), Strategy::direct, &out.e);
        return out;
    });
    std::vector<double> re;
    std::vector<double> im;
    for (const auto& x : samples)
    {
        re.push_back(x.a.real());
        im.push_back(x.a.imag());
        max_error_ = std::max(max_error_, x.e);
        max_abs_ = std::max(max_abs_, std::abs(x.a));
    }
    re_ = UniformCubic(theta_lo, theta_hi, re);
    im_ = UniformCubic(theta_lo, theta_hi, im);
}

Complex AxialAmplitude::operator()(double theta) const
{
    return {re_(theta), im_(theta)};
}

std::optional<double> cone_half_width(const AngularField& af)
{
    const std::vector<double> rp = af.ring_power();
    if (rp.empty())
        return std::nullopt;
    const auto& rings = af.grid.rings();
    std::size_t peak = 0;
    for (std::size_t i = 1; i < rp.size(); ++i)
        if (rp[i] > rp[peak])
            peak = i;
    if (!(rp[peak] > 0.0))
        return std::nullopt;
    const double half = 0.5 * rp[peak];
    for (std::size_t i = peak + 1; i < rp.size(); ++i)
    {
        if (rp[i] <= half)
        {
            const double t0 = rings[i - 1].theta;
            const double t1 = rings[i].theta;
            const double f = (rp[i - 1] - half) / (rp[i - 1] - rp[i]);
            return t0 + f * (t1 - t0);
        }
    }
    return std::nullopt;
}

SecondOrderSource second_order_source(int j1, int j2, const Geometry& g, const Model& m, const Vec3& R)
{
    if (j1 == 0 || j2 == 0)
        throw std::invalid_argument("second_order_source: both labels must be excited");
    const RadialPotential& v1 = m.potentials.get(j1, 0);
    const RadialPotential& v2 = m.potentials.get(0, j2);
    SecondOrderSource out;
    const double r2 = norm(R - g.a2());
    if (r2 <= v2.cutoff_radius())
        out.first_term = far_wave(scatterer_for(g, m, Atom::first, j1), m, R) * v2.value(r2);
    const double r1 = norm(R - g.a1());
    if (r1 <= v1.cutoff_radius())
        out.second_term = far_wave(scatterer_for(g, m, Atom::second, j2), m, R) * v1.value(r1);
    out.value = out.first_term + out.second_term;
    return out;
}

namespace {

// One ordering of the double excitation: `first` is excited by the source, `second` by its wave
struct Ordering
{
    Scatterer first;
    Vec3 second_position;
    int second_label;
    double k_final;
};

Ordering ordering(const Geometry& g, const Model& m, Atom first, int j_first, int j_second, double k_final)
{
    Ordering o{scatterer_for(g, m, first, j_first), first == Atom::first ? g.a2() : g.a1(), j_second, k_final};
    return o;
}

double factorized_power(const Ordering& o, const Model& m, double* angular_error)
{
    const RadialPotential& v2 = m.potentials.get(0, o.second_label);
    const Vec3 sep = o.second_position - o.first.position;
    const double d = norm(sep);
    require_far_field(d, v2, "double excitation");
    const Complex i1 = far_amplitude(o.first, m, sep / d, Strategy::factorized);
    const AngularIntegral ang = angular_integral(v2, o.first.k_out, o.k_final, m.grid_order);
    const double pref = green_prefactor(m) * green_prefactor(m) * std::norm(i1) / (d * d);
    if (angular_error)
        *angular_error = pref * ang.error;
    return pref * ang.value;
}

// The full second-order far field, summed coherently over the orderings that matter. An
// ordering whose factorized power is below 1e-8 of the leading one is left out and bounded
// in the error through Cauchy-Schwarz on its cross term.
Probability direct_probability(const std::array<Ordering, 2>& orderings, const Model& m)
{
    std::array<double, 2> estimate{};
    for (std::size_t i = 0; i < 2; ++i)
        estimate[i] = factorized_power(orderings[i], m, nullptr);
    const double lead = std::max(estimate[0], estimate[1]);
    std::vector<std::size_t> active;
    double skipped = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
    {
        if (estimate[i] >= 1e-8 * lead)
            active.push_back(i);
        else
            skipped += estimate[i];
    }

    const double rb = m.direct.ball_radius;
    struct Prepared
    {
        const Ordering* o;
        const RadialPotential* v;
        double d;
        AxialAmplitude table;
        double cap;
    };
    std::vector<Prepared> prep;
    for (std::size_t i : active)
    {
        const Ordering& o = orderings[i];
        const RadialPotential& v = m.potentials.get(0, o.second_label);
        const Vec3 sep = o.second_position - o.first.position;
        const double d = norm(sep);
        require_far_field(d, v, "double excitation");
        const double window = std::asin(std::min(1.0, rb / d)) + 2.0 * m.direct.theta_step_deg * deg;
        const double tc = angle_between(sep, o.first.incidence);
        prep.push_back({&o, &v, d,
                        AxialAmplitude(o.first, m, std::max(0.0, tc - window), std::min(pi, tc + window)),
                        cap_angle(v, o.first.k_out, o.k_final)});
    }

    // second-order far amplitude of one ordering towards u
    auto term = [&](const Prepared& p, const Vec3& u, double* err) {
        const Ordering& o = *p.o;
        const Vec3 centre = o.second_position;
        const Vec3 axis = normalized(centre - o.first.position);
        const double hint = norm(axis * o.first.k_out - u * o.k_final) + o.first.k_out * rb / p.d + 0.5;
        const Vec3 kf = u * o.k_final;
        CubatureSpec spec = ball_spec(m, {0, 0, 0}, hint);
        spec.abs_tol = m.direct.abs_fraction * potential_mass(*p.v) * p.table.max_abs() / p.d;
        auto integrand = [&](const Vec3& y) {
            const Vec3 R = centre + y;
            const Vec3 rel = R - o.first.position;
            const Complex wave = p.table(angle_between(rel, o.first.incidence)) * spherical_wave(o.first.k_out, norm(rel));
            return p.v->value(norm(y)) * wave * std::polar(1.0, -dot(kf, R));
        };
        const CubatureResult r = checked(integrate_ball(integrand, spec), "second-order far field");
        *err = std::abs(green_prefactor(m)) * r.error;
        return green_prefactor(m) * r.value;
    };

    Probability p;
    double err = 0.0;
    double table_err = 0.0;
    double grid_err = 0.0;
    for (const Prepared& c : prep)
    {
        table_err += c.table.relative_error();
        const Vec3 axis = normalized(c.o->second_position - c.o->first.position);
        const DirectionGrid grid = DirectionGrid::cap(axis, c.cap, m.direct.polar, m.direct.azimuths);
        // the cap grid applied to the factorized profile, against its accurate full-sphere
        // power, measures both the angular discretization and the power outside the cap
        double on_grid = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            const double v = c.v->fourier(norm(grid.directions()[i] * c.o->k_final - axis * c.o->first.k_out));
            on_grid += grid.weights()[i] * v * v;
        }
        const AngularIntegral full = angular_integral(*c.v, c.o->first.k_out, c.o->k_final, m.grid_order);
        grid_err = std::max(grid_err, std::abs(on_grid - full.value) / full.value);
        struct Sample
        {
            std::array<Complex, 2> t;
            double e;
        };
        const auto samples = parallel_map(grid.size(), m.threads, [&](std::size_t i) {
            Sample s{};
            for (std::size_t j = 0; j < prep.size(); ++j)
            {
                double e = 0.0;
                s.t[j] = term(prep[j], grid.directions()[i], &e);
                s.e += e;
            }
            return s;
        });
        for (std::size_t i = 0; i < samples.size(); ++i)
        {
            const double w = grid.weights()[i];
            Complex total{};
            for (std::size_t j = 0; j < prep.size(); ++j)
            {
                total += samples[i].t[j];
                const double power = w * std::norm(samples[i].t[j]);
                (prep[j].o == &orderings[0] ? p.first_term : p.second_term) += power;
            }
            p.value += w * std::norm(total);
            err += w * 2.0 * std::abs(total) * samples[i].e;
        }
    }
    // cubature, propagated table error, angular grid error and the bound on any ordering left out
    p.error = err + 2.0 * table_err * p.value + grid_err * p.value + skipped + 2.0 * std::sqrt(skipped * p.value);
    return p;
}

} // namespace

Probability double_excitation_probability(int j1, int j2, const Geometry& g, const Model& m, Strategy strategy)
{
    if (j1 == 0 || j2 == 0)
        throw std::invalid_argument("double_excitation_probability: both labels must be excited");
    const double k_final = m.kin.channel(j1, j2).get();
    const Ordering o12 = ordering(g, m, Atom::first, j1, j2, k_final);
    const Ordering o21 = ordering(g, m, Atom::second, j2, j1, k_final);

    if (strategy == Strategy::direct)
        return direct_probability({o12, o21}, m);

    Probability p;
    double e12 = 0.0;
    double e21 = 0.0;
    p.first_term = factorized_power(o12, m, &e12);
    p.second_term = factorized_power(o21, m, &e21);
    if (m.src.kind() == Source::Kind::spherical)
    {
        p.value = p.first_term;
        p.error = e12;
    }
    else
    {
        // the orderings peak in opposite directions, so their cross term averages out
        p.value = p.first_term + p.second_term;
        p.error = e12 + e21;
    }
    return p;
}

Probability plane_wave_double_excitation(int j1, int j2, const Geometry& g, const Model& m, const Vec3& direction,
                                         Strategy strategy)
{
    Model plane = m;
    plane.src = Source::plane(m.kin, direction);
    return double_excitation_probability(j1, j2, g, plane, strategy);
}

} // namespace tracks
