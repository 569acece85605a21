#include "tracks/interpolation.hpp"

#include <algorithm>
#include <stdexcept>

namespace tracks {

LogHermiteTable::LogHermiteTable(double lo, double hi, std::size_t count,
                                 const std::function<Sample(double)>& f)
    : lo_(lo), hi_(hi)
{
    if (!(lo > 0.0 && hi > lo) || count < 2)
        throw std::invalid_argument("LogHermiteTable: need 0 < lo < hi and at least two nodes");
    step_ = std::log(hi / lo) / static_cast<double>(count - 1);
    values_.resize(count);
    slopes_.resize(count);
    for (std::size_t i = 0; i < count; ++i)
    {
        const double x = i + 1 == count ? hi : node(i);
        const Sample s = f(x);
        values_[i] = s.value;
        slopes_[i] = s.derivative * x;
    }
}

double LogHermiteTable::operator()(double x) const
{
    const double t = std::log(x / lo_) / step_;
    const auto last = values_.size() - 1;
    std::size_t i = t <= 0.0 ? 0 : std::min(static_cast<std::size_t>(t), last - 1);
    const double s = std::clamp(t - static_cast<double>(i), 0.0, 1.0);
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;
    return h00 * values_[i] + h10 * step_ * slopes_[i] + h01 * values_[i + 1] + h11 * step_ * slopes_[i + 1];
}

LogHermiteTable LogHermiteTable::scaled(double factor, double lo_x, double hi_x) const
{
    LogHermiteTable out = *this;
    for (std::size_t i = 0; i < out.values_.size(); ++i)
    {
        const double x = node(i);
        if (x >= lo_x && x <= hi_x)
        {
            out.values_[i] *= factor;
            out.slopes_[i] *= factor;
        }
    }
    return out;
}

UniformCubic::UniformCubic(double lo, double hi, std::vector<double> values)
    : lo_(lo), hi_(hi), values_(std::move(values))
{
    if (values_.size() < 4 || !(hi > lo))
        throw std::invalid_argument("UniformCubic: need at least four samples on a nonempty interval");
    step_ = (hi_ - lo_) / static_cast<double>(values_.size() - 1);
}

double UniformCubic::operator()(double x) const
{
    const auto n = values_.size();
    const double t = (x - lo_) / step_;
    const std::size_t i = t <= 0.0 ? 0 : std::min(static_cast<std::size_t>(t), n - 2);
    // four-point Lagrange stencil, shifted inward at the ends
    std::size_t base = i == 0 ? 0 : i - 1;
    if (base + 3 >= n)
        base = n - 4;
    const double u = std::clamp(t, 0.0, static_cast<double>(n - 1)) - static_cast<double>(base);
    const double y0 = values_[base];
    const double y1 = values_[base + 1];
    const double y2 = values_[base + 2];
    const double y3 = values_[base + 3];
    const double l0 = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
    const double l1 = u * (u - 2.0) * (u - 3.0) / 2.0;
    const double l2 = -u * (u - 1.0) * (u - 3.0) / 2.0;
    const double l3 = u * (u - 1.0) * (u - 2.0) / 6.0;
    return l0 * y0 + l1 * y1 + l2 * y2 + l3 * y3;
}

} // namespace tracks
