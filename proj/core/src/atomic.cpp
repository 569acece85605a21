#include "tracks/atomic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tracks/quadrature.hpp"

namespace tracks {

namespace {

constexpr double pi = std::numbers::pi;

double factorial(int n)
{
    double f = 1.0;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

double binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0.0;
    return factorial(n) / (factorial(k) * factorial(n - k));
}

// Gamma(p, x) for integer p >= 1
double upper_gamma(int p, double x)
{
    double sum = 0.0;
    double term = 1.0;
    for (int l = 0; l < p; ++l)
    {
        sum += term;
        term *= x / (l + 1);
    }
    return factorial(p - 1) * std::exp(-x) * sum;
}

// gamma(p, x) for integer p >= 1, series below x = 30 to avoid cancellation
double lower_gamma(int p, double x)
{
    if (x <= 0.0)
        return 0.0;
    if (x >= 30.0)
        return factorial(p - 1) - upper_gamma(p, x);
    double term = std::exp(p * std::log(x) - x) / p;
    double sum = term;
    for (int l = 1; l < 500; ++l)
    {
        term *= x / (p + l);
        sum += term;
        if (term < 1e-17 * sum)
            break;
    }
    return sum;
}

} // namespace

double ExpPolynomial::operator()(double r) const
{
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * r + *it;
    return acc * std::exp(-decay * r);
}

double ExpPolynomial::moment(int power) const
{
    double sum = 0.0;
    for (std::size_t m = 0; m < coeffs.size(); ++m)
    {
        const int p = static_cast<int>(m) + power;
        sum += coeffs[m] * factorial(p) / std::pow(decay, p + 1);
    }
    return sum;
}

double ExpPolynomial::tail_moment(int power, double r) const
{
    double sum = 0.0;
    for (std::size_t m = 0; m < coeffs.size(); ++m)
    {
        const int p = static_cast<int>(m) + power;
        sum += coeffs[m] * upper_gamma(p + 1, decay * r) / std::pow(decay, p + 1);
    }
    return sum;
}

double ExpPolynomial::head_moment(int power, double r) const
{
    double sum = 0.0;
    for (std::size_t m = 0; m < coeffs.size(); ++m)
    {
        const int p = static_cast<int>(m) + power;
        sum += coeffs[m] * lower_gamma(p + 1, decay * r) / std::pow(decay, p + 1);
    }
    return sum;
}

ExpPolynomial operator*(const ExpPolynomial& a, const ExpPolynomial& b)
{
    ExpPolynomial out;
    out.decay = a.decay + b.decay;
    out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    return out;
}

AtomState::AtomState(int n, ExpPolynomial psi)
    : n_(n), energy_(-0.5 / (static_cast<double>(n) * n)), wavefunction_(std::move(psi))
{}

AtomState eigenstate(int n)
{
    if (n < 1 || n > max_principal_number)
        throw std::invalid_argument("eigenstate: principal number " + std::to_string(n)
                                    + " outside supported range [1, " + std::to_string(max_principal_number) + "]");

    // L_{n-1}^{(1)}(2r/n) expanded in powers of r
    ExpPolynomial psi;
    psi.decay = 1.0 / n;
    psi.coeffs.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        psi.coeffs[static_cast<std::size_t>(i)]
            = (i % 2 == 0 ? 1.0 : -1.0) * binomial(n, n - 1 - i) / factorial(i) * std::pow(2.0 / n, i);

    const double norm2 = 4.0 * pi * (psi * psi).moment(2);
    const double scale = 1.0 / std::sqrt(norm2);
    for (double& c : psi.coeffs)
        c *= scale;
    return AtomState(n, std::move(psi));
}

double density_fourier(const ExpPolynomial& density, double q)
{
    if (q < 0.0)
        throw std::domain_error("density_fourier: negative wavenumber");
    if (q < 0.5 * density.decay)
    {
        // Taylor series of sinc, converges for q < decay
        double sum = 0.0;
        double qpow = 1.0;
        for (int n = 0; n < 60; ++n)
        {
            const double term = (n % 2 == 0 ? 1.0 : -1.0) * qpow / factorial(2 * n + 1) * density.moment(2 * n + 2);
            sum += term;
            if (n > 2 && std::abs(term) < 1e-18 * std::abs(sum))
                break;
            qpow *= q * q;
        }
        return 4.0 * pi * sum;
    }
    const std::complex<double> z(density.decay, -q);
    double sum = 0.0;
    for (std::size_t m = 0; m < density.coeffs.size(); ++m)
    {
        const int p = static_cast<int>(m) + 2;
        sum += density.coeffs[m] * factorial(p - 1) * std::imag(std::pow(z, -p));
    }
    return 4.0 * pi * sum / q;
}

RadialPotential::RadialPotential(int bra, int ket, ExpPolynomial density)
    : bra_(bra), ket_(ket), density_(std::move(density))
{
    v0_ = -8.0 * pi * density_.moment(1);

    // mean radius of |rho| by composite quadrature
    const GaussRule rule = gauss_legendre(16);
    const double extent = 60.0 / density_.decay;
    const auto panels = static_cast<std::size_t>(std::ceil(extent / 0.25));
    const double num = integrate_composite(rule, 0.0, extent, panels,
                                           [&](double r) { return r * r * r * std::abs(density_(r)); });
    const double den = integrate_composite(rule, 0.0, extent, panels,
                                           [&](double r) { return r * r * std::abs(density_(r)); });
    support_radius_ = num / den;

    const double scale = std::max(1.0, std::abs(v0_));
    cutoff_radius_ = 200.0;
    for (double r = 10.0; r <= 200.0; r += 1.0)
    {
        if (r * r * std::abs(screened_value(r)) < 1e-18 * scale)
        {
            cutoff_radius_ = r;
            break;
        }
    }

    value_table_ = LogHermiteTable(table_r_min, table_r_max, table_r_nodes, [this](double r) {
        return LogHermiteTable::Sample{exact_value(r), exact_derivative(r)};
    });
    build_fourier_table(false);
}

void RadialPotential::build_fourier_table(bool from_table)
{
    const GaussRule rule = gauss_legendre(20);
    const double tail = coulomb_tail();
    auto screened = [this, from_table, tail](double r) {
        return from_table ? value(r) + tail / r : screened_value(r);
    };
    // panel widths down to 1/32 bohr resolve a wavelength at the top of the q table
    const RadialSampler sampler([&](double r) { return r * r * screened(r); }, cutoff_radius_, rule, 6);
    fourier_zero_ = sampler.transform(0.0).value;
    // the table holds the full transform: interpolating the regular part would leave its
    // interpolation error exposed after the Coulomb term cancels at large q
    fourier_table_ = LogHermiteTable(table_q_min, table_q_max, table_q_nodes, [&](double q) {
        const RadialTransform t = sampler.transform(q);
        const double coulomb = 4.0 * pi * tail / (q * q);
        return LogHermiteTable::Sample{t.value - coulomb, t.derivative + 2.0 * coulomb / q};
    });
}

double RadialPotential::exact_value(double r) const
{
    if (r < 0.0)
        throw std::domain_error("transition potential evaluated at negative radius");
    const double rho0 = density_(0.0);
    if (r < 1e-6)
        return v0_ + 4.0 * pi * rho0 * r * r / 3.0;
    const double x = density_.decay * r;
    // off-diagonal densities integrate to zero, so the head equals minus the tail
    const double head = diagonal() || x < 3.0 ? density_.head_moment(2, r) : -density_.tail_moment(2, r);
    const double tail = density_.tail_moment(1, r);
    return -8.0 * pi * (head / r + tail);
}

double RadialPotential::screened_value(double r) const
{
    if (diagonal() && density_.decay * r >= 3.0)
    {
        // 8 pi \int s^2 rho = 2, so the enclosed-charge term cancels the nuclear tail exactly
        return 8.0 * pi * (density_.tail_moment(2, r) / r - density_.tail_moment(1, r));
    }
    return exact_value(r) + coulomb_tail() / r;
}

double RadialPotential::exact_derivative(double r) const
{
    if (r < 1e-6)
        return 8.0 * pi * density_(0.0) * r / 3.0;
    const double x = density_.decay * r;
    const double head = diagonal() || x < 3.0 ? density_.head_moment(2, r) : -density_.tail_moment(2, r);
    return 8.0 * pi * head / (r * r);
}

double RadialPotential::value(double r) const
{
    if (r < 0.0)
        throw std::domain_error("transition potential evaluated at negative radius");
    if (r < table_r_min || r > table_r_max)
        return exact_value(r);
    return value_table_(r);
}

double RadialPotential::fourier(double q) const
{
    if (q < 0.0)
        throw std::domain_error("transition potential transform at negative wavenumber");
    if (q == 0.0 && diagonal())
        throw std::domain_error("diagonal transition potential has a divergent transform at q = 0");
    const double coulomb = 4.0 * pi * coulomb_tail();
    if (q < table_q_min)
    {
        // regular part is even in q; quadratic between q = 0 and the first node
        const double s = q / table_q_min;
        const double edge = fourier_table_(table_q_min) + coulomb / (table_q_min * table_q_min);
        const double regular = fourier_zero_ + (edge - fourier_zero_) * s * s;
        return q == 0.0 ? regular : regular - coulomb / (q * q);
    }
    if (q <= table_q_max)
        return fourier_table_(q);
    // power-law continuation from the last node
    const std::size_t last = fourier_table_.size() - 1;
    const double v = fourier_table_.value_at(last);
    const double slope = fourier_table_.slope_at(last);
    if (v == 0.0)
        return 0.0;
    const double p = std::min(slope / v, -2.0);
    return v * std::pow(q / table_q_max, p);
}

RadialPotential RadialPotential::with_corrupted_table(double factor, double r_lo, double r_hi) const
{
    RadialPotential out = *this;
    out.value_table_ = value_table_.scaled(factor, r_lo, r_hi);
    out.build_fourier_table(true);
    return out;
}

RadialPotential transition_potential(const AtomState& i, const AtomState& j)
{
    return RadialPotential(i.label(), j.label(), i.wavefunction() * j.wavefunction());
}

double evaluate_potential(const RadialPotential& p, double r)
{
    return p.value(r);
}

PotentialSet::PotentialSet(const std::vector<std::pair<int, int>>& pairs)
{
    for (auto [i, j] : pairs)
    {
        const std::pair<int, int> key = std::minmax(i, j);
        if (table_.count(key) == 0)
            table_.emplace(key, transition_potential(state_for_label(key.first), state_for_label(key.second)));
    }
}

PotentialSet PotentialSet::for_excitations(const std::vector<int>& labels)
{
    std::vector<std::pair<int, int>> pairs;
    for (int j : labels)
        pairs.emplace_back(0, j);
    return PotentialSet(pairs);
}

const RadialPotential& PotentialSet::get(int i, int j) const
{
    const auto it = table_.find(std::minmax(i, j));
    if (it == table_.end())
        throw std::out_of_range("PotentialSet: pair (" + std::to_string(i) + ", " + std::to_string(j)
                                + ") was not built");
    return it->second;
}

bool PotentialSet::contains(int i, int j) const
{
    return table_.count(std::minmax(i, j)) != 0;
}

PotentialSet PotentialSet::with(RadialPotential p) const
{
    PotentialSet out = *this;
    const std::pair<int, int> key = std::minmax(p.bra(), p.ket());
    out.table_.insert_or_assign(key, std::move(p));
    return out;
}

} // namespace tracks
