#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace tracks {

/// Cubic Hermite interpolant on a logarithmically spaced abscissa grid [lo, hi].
/// Nodes store value and first derivative with respect to the abscissa itself.
class LogHermiteTable
{
public:
    struct Sample
    {
        double value;
        double derivative;
    };

    LogHermiteTable() = default;

    /// Samples `f` at `count` log-spaced points.
    LogHermiteTable(double lo, double hi, std::size_t count, const std::function<Sample(double)>& f);

    double operator()(double x) const;

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool contains(double x) const noexcept { return x >= lo_ && x <= hi_; }

    double node(std::size_t i) const { return lo_ * std::exp(step_ * static_cast<double>(i)); }
    double value_at(std::size_t i) const { return values_[i]; }
    double slope_at(std::size_t i) const { return slopes_[i]; }

    /// Copy with node values multiplied by `factor` where lo_x <= node <= hi_x.
    LogHermiteTable scaled(double factor, double lo_x, double hi_x) const;

private:
    double lo_ = 1.0;
    double hi_ = 1.0;
    double step_ = 0.0;   // in log(x)
    std::vector<double> values_;
    std::vector<double> slopes_;  // d value / d log(x)
};

/// Uniformly spaced four-point Lagrange interpolant, stencil shifted inward at the ends.
class UniformCubic
{
public:
    UniformCubic() = default;
    UniformCubic(double lo, double hi, std::vector<double> values);

    double operator()(double x) const;

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
    double step_ = 1.0;
    std::vector<double> values_;
};

} // namespace tracks
