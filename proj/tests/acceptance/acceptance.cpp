// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "tracks/experiments.hpp"
#include "oracles.hpp"

using namespace tracks;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double deg = pi / 180.0;

int failures = 0;

void report(int id, const char* title, bool pass, const std::string& detail, double seconds)
{
    std::printf("[%s] criterion %d: %s  (%s; %.1f s)\n", pass ? "PASS" : "FAIL", id, title, detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass)
        ++failures;
}

std::string fmt(const char* f, double a)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

std::string fmt(const char* f, double a, double b, double c)
{
    char buf[200];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

template <typename F>
void criterion(int id, const char* title, F&& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try
    {
        detail = body(pass);
    }
    catch (const std::exception& e)
    {
        pass = false;
        detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(id, title, pass, detail, s);
}

Model desk(double k, const std::vector<int>& labels = {1})
{
    const Kinematics kin(10.0, k);
    return Model::build(kin, Source::spherical(kin), labels);
}

Vec3 random_direction(std::mt19937_64& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    return normalized(Vec3{n(rng), n(rng), n(rng)});
}

// |(Delta + k^2) f| / (k^2 |f|) by the seven-point stencil
template <typename F>
double helmholtz_residual(F&& f, const Vec3& R, double k, double h)
{
    const Complex lap = oracle::laplacian(f, R, h);
    return std::abs(lap + k * k * f(R)) / (k * k * std::abs(f(R)));
}

} // namespace

int main()
{
    std::printf("acceptance run\n");

    criterion(1, "first-order double excitation is the zero field", [](bool& pass) {
        const Model m = desk(10.0, {1, 2});
        const Geometry g({0, 0, 50}, {0, 0, 100});
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> u(-150.0, 150.0);
        int checked = 0;
        pass = true;
        for (int j1 : {1, 2})
            for (int j2 : {1, 2})
                for (Strategy s : {Strategy::factorized, Strategy::direct})
                {
                    const ChannelField f = first_order_channel(j1, j2, g, m, s);
                    pass = pass && f.is_zero();
                    for (int t = 0; t < 25; ++t, ++checked)
                        pass = pass && f({u(rng), u(rng), u(rng)}) == Complex{};
                    for (const Vec3& R : {g.a1(), g.a2()})
                        pass = pass && f(R) == Complex{};
                }
        return fmt("%g channel/strategy pairs, %g probe values exactly zero", 8.0, checked + 16.0);
    });

    criterion(2, "Helmholtz residual of the Green function and the source wave", [](bool& pass) {
        const Model m = desk(10.0);
        const double kc = m.kin.channel(1, 0).get();
        std::mt19937_64 rng(2);
        std::uniform_real_distribution<double> len(3.0, 20.0);
        const Vec3 origin{1.0, -2.0, 0.5};
        double worst_green = 0.0;
        double worst_source = 0.0;
        for (int t = 0; t < 10; ++t)
        {
            const Vec3 R = origin + random_direction(rng) * 5.0;
            worst_green = std::max(worst_green, helmholtz_residual([&](const Vec3& x) { return outgoing_green(x, origin, kc); }, R, kc, 0.01));
            const Vec3 S = random_direction(rng) * len(rng);
            worst_source = std::max(worst_source, helmholtz_residual(m.src, S, m.kin.k(), 0.01));
        }
        pass = worst_green <= 1e-3 && worst_source <= 1e-3;
        return fmt("k=10, h=0.01, 10 probes: max |(D+k^2)f|/(k^2|f|) green %.2e, source %.2e, tol 1e-3", worst_green,
                   worst_source);
    });

    criterion(3, "potential oracle and Coulomb-Fourier identity", [](bool& pass) {
        const RadialPotential g = transition_potential(eigenstate(1), eigenstate(1));
        const auto rho_g = [](double r) { return std::pow(oracle::hydrogen_s(1, r), 2); };
        double worst_v = 0.0;
        for (int i = 0; i < 20; ++i)
        {
            const double r = 0.05 + 0.75 * i;
            const double closed = -2.0 * (1.0 - std::exp(-2.0 * r) * (1.0 + r)) / r;
            const double quad = oracle::shell_potential(rho_g, r);
            worst_v = std::max({worst_v, std::abs(closed - quad) / std::abs(quad), std::abs(g.value(r) - quad) / std::abs(quad)});
        }
        const RadialPotential e = transition_potential(eigenstate(1), eigenstate(2));
        double worst_f = 0.0;
        for (double q : {1.0, 5.0, 20.0})
        {
            const Complex mc = oracle::randomized_fourier_3d([&](double r) { return e.value(r); }, q, 22.0, 1000 + static_cast<int>(q));
            const double identity = -8.0 * pi * density_fourier(e.density(), q) / (q * q);
            worst_f = std::max({worst_f, std::abs(mc.real() - identity) / std::abs(identity),
                                std::abs(e.fourier(q) - mc.real()) / std::abs(mc.real())});
        }
        pass = worst_v <= 1e-6 && worst_f <= 1e-2;
        return fmt("V_1s1s vs shell quadrature max rel %.2e (tol 1e-6); identity vs randomized 3D cubature at q=1,5,20 max rel %.2e (tol 1e-2)",
                   worst_v, worst_f);
    });

    criterion(4, "first-order field solves its Helmholtz equation", [](bool& pass) {
        Model m = desk(5.0);
        m.direct.rel_tol = 1e-5;
        const Geometry g({0, 0, 50}, {0, 0, 100});
        const ChannelField f = first_order_field(1, Atom::first, g, m, Strategy::direct);
        const RadialPotential& v = m.potentials.get(1, 0);
        const double kc = m.kin.channel(1, 0).get();
        std::mt19937_64 rng(4);
        std::uniform_real_distribution<double> len(0.5, 2.5);
        double worst = 0.0;
        for (int t = 0; t < 5; ++t)
        {
            const Vec3 R = g.a1() + random_direction(rng) * len(rng);
            const Complex lhs = oracle::laplacian(f, R, 0.02) + kc * kc * f(R);
            const Complex rhs = 2.0 * m.kin.alpha_mass() * v.value(norm(R - g.a1())) * m.src(R);
            worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
        }
        pass = worst <= 0.05;
        return fmt("M=10, k=5, direct quadrature, h=0.02, 5 probes 0.5-2.5 bohr from a1: max rel residual %.2e (tol 5e-2)", worst);
    });

    criterion(5, "cone alignment and factorized vs direct peak", [](bool& pass) {
        // grid axis tilted away from a1 so the peak is not pinned to a grid pole
        const Vec3 a1{0, 0, 50};
        const Vec3 tilt = rotate(a1, {1, 1, 0}, 1.3 * deg);
        double worst_angle = 0.0;
        for (double k : {5.0, 10.0, 20.0})
        {
            const Model m = desk(k);
            const AngularField af = first_order_far_amplitude(1, Atom::first, Geometry(a1, {0, 0, 100}), m,
                                                              DirectionGrid::cap(tilt, 10.0, 80, 64), Strategy::factorized);
            worst_angle = std::max(worst_angle, angle_between(af.grid.directions()[af.argmax()], a1));
        }
        const Model m = desk(5.0);
        const AngularField direct = first_order_far_amplitude(1, Atom::first, Geometry(a1, {0, 0, 100}), m,
                                                              DirectionGrid::cap(tilt, 6.0, 6, 6), Strategy::direct);
        const double direct_angle = angle_between(direct.grid.directions()[direct.argmax()], a1);
        const Scatterer s = scatterer_for(Geometry(a1, {0, 0, 100}), m, Atom::first, 1);
        const double d = std::abs(far_amplitude(s, m, s.incidence, Strategy::direct));
        const double f = std::abs(far_amplitude(s, m, s.incidence, Strategy::factorized));
        const double agree = std::abs(d - f) / d;
        pass = worst_angle <= 2.0 * deg && direct_angle <= 2.0 * deg && agree <= 0.05;
        // informational: the factorized form drops wavefront curvature, an error ~ (k/|a1|)^2
        std::string info = "; curvature error at |a1|=50:";
        for (double k : {10.0, 20.0})
        {
            const Model mk = desk(k);
            const Scatterer sk = scatterer_for(Geometry(a1, {0, 0, 100}), mk, Atom::first, 1);
            const double dk = std::abs(far_amplitude(sk, mk, sk.incidence, Strategy::direct));
            const double fk = std::abs(far_amplitude(sk, mk, sk.incidence, Strategy::factorized));
            info += fmt(" k=%g %.2e", k, std::abs(dk - fk) / dk);
        }
        return fmt("argmax offset factorized k=5,10,20 max %.2f deg, direct k=5 %.2f deg (tol 2); peak |I| direct vs factorized at k=5, |a1|=50: %.2e (tol 5e-2)",
                   worst_angle / deg, direct_angle / deg, agree) + info;
    });

    criterion(6, "cone narrowing exponent", [](bool& pass) {
        const ScanResult r = run_k_scaling(ExperimentConfig{});
        const double alpha = r.summary_value("alpha").value();
        bool monotone = true;
        for (std::size_t i = 1; i < r.rows.size(); ++i)
            monotone = monotone && r.rows[i][1] < r.rows[i - 1][1];
        pass = alpha >= -1.3 && alpha <= -0.7 && monotone;
        return fmt("half widths %.2f, %.2f, %.2f deg at k=5,10,20", r.rows[0][1], r.rows[1][1], r.rows[2][1])
               + fmt("; alpha = %.3f (range [-1.3, -0.7])", alpha);
    });

    criterion(7, "collinearity contrast and monotone falloff", [](bool& pass) {
        const ScanResult r = run_collinearity_scan(ExperimentConfig{});
        const double contrast = r.summary_value("contrast_0_90").value();
        bool monotone = true;
        for (std::size_t i = 1; i < r.rows.size(); ++i)
            if (r.rows[i][0] <= 30.0)
                monotone = monotone && r.rows[i][1] <= r.rows[i - 1][1];
        pass = contrast >= 100.0 && monotone;
        return fmt("P2(0)/P2(90) = %.3e (tol >= 100); monotone on 0-30 deg: ", contrast) + (monotone ? "yes" : "no");
    });

    criterion(8, "plane-wave parallelism", [](bool& pass) {
        const ScanResult r = run_planewave_scan(ExperimentConfig{});
        const double peak = r.summary_value("peak_angle_deg").value();
        const double contrast = r.summary_value("contrast_parallel_perpendicular").value();
        pass = std::abs(peak) <= 2.0 && contrast >= 100.0;
        return fmt("peak at %.2f deg from a2-a1 (tol 2); parallel/perpendicular = %.3e (tol >= 100)", peak, contrast);
    });

    criterion(9, "determinism across thread counts", [](bool& pass) {
        ExperimentConfig one;
        ExperimentConfig eight;
        eight.threads = 8;
        std::vector<std::function<std::string(const ExperimentConfig&)>> runs{
            [](const ExperimentConfig& c) { return run_collinearity_scan(c).to_csv(); },
            [](const ExperimentConfig& c) { return run_cone_profile(c).to_json(); },
            [](const ExperimentConfig& c) { return run_planewave_scan(c).to_csv(); },
            [](const ExperimentConfig& c) { return run_k_scaling(c).to_csv(); },
            [](const ExperimentConfig& c) { return run_validation(c).to_json(); },
        };
        ExperimentConfig d1;
        d1.strategy = Strategy::direct;
        d1.k = 5.0;
        d1.grid_order = 1;
        d1.cone_extent_deg = 4.0;
        ExperimentConfig d8 = d1;
        d8.threads = 8;
        bool same = true;
        std::size_t bytes = 0;
        for (const auto& run : runs)
        {
            const std::string a = run(one);
            same = same && a == run(eight);
            bytes += a.size();
        }
        const std::string a = run_cone_profile(d1).to_csv();
        same = same && a == run_cone_profile(d8).to_csv();
        bytes += a.size();
        pass = same;
        return fmt("%g bytes over 6 outputs (one direct-quadrature) byte-identical at 1 and 8 threads", static_cast<double>(bytes));
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
