#pragma once

#include <stdexcept>
#include <string>

namespace tracks {

/// Bad geometry, closed channel, malformed config. Maps to CLI exit status 2.
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A requested channel is energetically closed.
class ClosedChannelError : public ConfigError
{
public:
    ClosedChannelError(const std::string& what, double k_threshold)
        : ConfigError(what), threshold_(k_threshold)
    {}

    /// Smallest source wavenumber that opens the channel (bohr^-1).
    double threshold() const noexcept { return threshold_; }

private:
    double threshold_;
};

/// Quadrature did not reach its tolerance within budget. Maps to CLI exit status 3.
class AccuracyError : public std::runtime_error
{
public:
    AccuracyError(const std::string& what, double best_estimate_abs, double error_estimate)
        : std::runtime_error(what), best_(best_estimate_abs), error_(error_estimate)
    {}

    double best_estimate() const noexcept { return best_; }
    double error_estimate() const noexcept { return error_; }

private:
    double best_;
    double error_;
};

} // namespace tracks
