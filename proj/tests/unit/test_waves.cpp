#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tracks/errors.hpp"
#include "tracks/waves.hpp"
#include "oracles.hpp"

using namespace tracks;

namespace {

constexpr double pi = std::numbers::pi;

Vec3 random_point(std::mt19937_64& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> len(lo, hi);
    Vec3 d;
    do
        d = {u(rng), u(rng), u(rng)};
    while (norm(d) < 0.1 || norm(d) > 1.0);
    return normalized(d) * len(rng);
}

} // namespace

TEST(Source, SphericalAndPlaneValues)
{
    const Kinematics kin(10.0, 1.0);
    const Source s = Source::spherical(kin);
    const Complex v = s({0, 0, pi});
    EXPECT_NEAR(v.real(), -1.0 / pi, 1e-15);
    EXPECT_NEAR(v.imag(), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s({0, 2.0, 0})), 2.0 * std::abs(s({0, 4.0, 0})), 1e-15);

    const Source p = Source::plane(kin, {0, 0, 3});
    EXPECT_DOUBLE_EQ(norm(p.direction()), 1.0);
    EXPECT_EQ(p.k(), kin.k());
    const Complex w = source_value(p, {5.0, -2.0, 0.0});
    EXPECT_DOUBLE_EQ(w.real(), 1.0);
    EXPECT_DOUBLE_EQ(w.imag(), 0.0);
}

TEST(Source, Errors)
{
    const Kinematics kin(10.0, 1.0);
    EXPECT_THROW(Source::spherical(kin)({0, 0, 0}), std::domain_error);
    EXPECT_THROW(Source::plane(kin, {0, 0, 0}), ConfigError);
}

TEST(Green, ValuesAndErrors)
{
    EXPECT_NEAR(outgoing_green({0, 0, 0}, {0, 2, 0}, 0.0).real(), 0.5, 1e-15);
    const Complex g = outgoing_green({1, 0, 0}, {1 + pi, 0, 0}, 2.0);
    EXPECT_NEAR(g.real(), 1.0 / pi, 1e-14);
    EXPECT_NEAR(g.imag(), 0.0, 1e-14);
    EXPECT_THROW(outgoing_green({1, 2, 3}, {1, 2, 3}, 1.0), std::domain_error);
    EXPECT_THROW(ingoing_green({1, 2, 3}, {1, 2, 3}, 1.0), std::domain_error);
}

TEST(Green, OutgoingAndIngoingAreConjugate)
{
    const Complex a = outgoing_green({0.3, 1, 2}, {4, -1, 0.5}, 3.7);
    const Complex b = ingoing_green({0.3, 1, 2}, {4, -1, 0.5}, 3.7);
    EXPECT_NEAR(std::abs(a - std::conj(b)), 0.0, 1e-15);
}

TEST(Green, HelmholtzResidualAtRandomPoints)
{
    std::mt19937_64 rng(20240611);
    const Vec3 source{0.5, -1.0, 2.0};
    for (int trial = 0; trial < 10; ++trial)
    {
        const double kc = 0.5 + 4.5 * std::uniform_real_distribution<double>(0, 1)(rng);
        const Vec3 R = source + random_point(rng, 5.0, 5.0);
        auto g = [&](const Vec3& x) { return outgoing_green(x, source, kc); };
        const Complex residual = oracle::laplacian(g, R, 0.01) + kc * kc * g(R);
        EXPECT_LE(std::abs(residual), 1e-3) << "kc=" << kc;
    }
}

TEST(Source, SphericalWaveSolvesHelmholtzAwayFromOrigin)
{
    std::mt19937_64 rng(7);
    const Kinematics kin(10.0, 5.0);
    const Source s = Source::spherical(kin);
    for (int trial = 0; trial < 10; ++trial)
    {
        const Vec3 R = random_point(rng, 3.0, 20.0);
        const Complex residual = oracle::laplacian(s, R, 0.01) + kin.k() * kin.k() * s(R);
        EXPECT_LE(std::abs(residual), 1e-3);
    }
}

TEST(Kinematics, ChannelExamples)
{
    const Kinematics kin(10.0, 5.0);
    const ChannelWavenumber elastic = channel_wavenumber(kin, 0, 0);
    EXPECT_TRUE(elastic.open);
    EXPECT_EQ(elastic.value, 5.0);
    EXPECT_EQ(elastic.elasticity(), 0.0);

    const ChannelWavenumber c = channel_wavenumber(kin, 1, 0);
    ASSERT_TRUE(c.open);
    EXPECT_NEAR(c.value, std::sqrt(17.5), 1e-14);
    EXPECT_NEAR(Kinematics::excitation_energy(1, 0), 0.375, 1e-15);

    const Kinematics heavy(physical_alpha_mass, 20.0);
    const ChannelWavenumber closed = heavy.channel(0, 1);
    EXPECT_FALSE(closed.open);
    EXPECT_NEAR(closed.threshold, std::sqrt(2.0 * physical_alpha_mass * 0.375), 1e-9);
    EXPECT_THROW(closed.get(), ClosedChannelError);
    try
    {
        closed.get();
    }
    catch (const ClosedChannelError& e)
    {
        EXPECT_NEAR(e.threshold(), closed.threshold, 1e-12);
        EXPECT_NE(std::string(e.what()).find("k_min"), std::string::npos);
    }
}

TEST(Kinematics, MonotoneInExcitationEnergy)
{
    const Kinematics kin(10.0, 8.0);
    const std::pair<int, int> order[] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
    double prev_e = -1.0;
    double prev_k = 1e300;
    for (auto [a, b] : order)
    {
        const double e = Kinematics::excitation_energy(a, b);
        const ChannelWavenumber c = kin.channel(a, b);
        ASSERT_TRUE(c.open);
        EXPECT_GT(e, prev_e);
        EXPECT_LT(c.value, prev_k);
        EXPECT_GE(c.elasticity(), 0.0);
        EXPECT_LT(c.elasticity(), 1.0);
        EXPECT_EQ(c.value, kin.channel(b, a).value);
        prev_e = e;
        prev_k = c.value;
    }
}

TEST(Kinematics, RejectsBadInput)
{
    EXPECT_THROW(Kinematics(0.0, 1.0), ConfigError);
    EXPECT_THROW(Kinematics(10.0, -1.0), ConfigError);
    EXPECT_THROW(Kinematics(10.0, 1.0).channel(3, 0), ConfigError);
}

TEST(Geometry, OrderingAndTransforms)
{
    EXPECT_THROW(Geometry({0, 0, 100}, {0, 0, 50}), ConfigError);
    EXPECT_THROW(Geometry({0, 0, 0}, {0, 0, 50}), ConfigError);
    EXPECT_THROW(Geometry({0, 0, 50}, {0, 0, 50}), ConfigError);
    const Geometry g({0, 0, 50}, {0, 30, 120});
    EXPECT_NEAR(g.separation(), std::hypot(30.0, 70.0), 1e-12);
    EXPECT_NEAR(norm(g.axis_21()), 1.0, 1e-15);
    const Geometry r = g.rotated({1, 1, 0}, 0.7);
    EXPECT_NEAR(norm(r.a1()), 50.0, 1e-12);
    EXPECT_NEAR(r.separation(), g.separation(), 1e-12);
    const Geometry s = g.swapped();
    EXPECT_EQ(s.a1(), g.a2());
    EXPECT_EQ(s.a2(), g.a1());
}
