#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tracks/errors.hpp"
#include "tracks/experiments.hpp"

namespace {

enum Exit { ok = 0, validation_failed = 1, config_error = 2, accuracy_error = 3 };

struct Options
{
    std::string config;
    std::string out;
    std::string strategy;
    std::string format;
    std::size_t threads = 0;
};

tracks::ExperimentConfig load(const Options& o)
{
    tracks::ExperimentConfig cfg = o.config.empty() ? tracks::ExperimentConfig{} : tracks::ExperimentConfig::from_file(o.config);
    // flags override the file
    if (!o.strategy.empty())
        cfg.strategy = tracks::parse_strategy(o.strategy);
    if (o.threads > 0)
        cfg.threads = o.threads;
    if (!o.out.empty())
        cfg.out_path = o.out;
    if (o.format == "csv")
        cfg.format = tracks::OutputFormat::csv;
    else if (o.format == "json")
        cfg.format = tracks::OutputFormat::json;
    cfg.validate();
    return cfg;
}

void emit(const tracks::ExperimentConfig& cfg, const std::string& text)
{
    if (cfg.out_path.empty() || cfg.out_path == "-")
    {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw tracks::ConfigError("cannot write '" + cfg.out_path + "'");
    out << text;
}

template <typename Run>
int run_scan(const Options& o, Run&& run)
{
    const tracks::ExperimentConfig cfg = load(o);
    const tracks::ScanResult r = run(cfg);
    emit(cfg, cfg.format == tracks::OutputFormat::csv ? r.to_csv() : r.to_json());
    return ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Double-excitation tracks behind two hydrogen atoms hit by a spherical alpha wave"};
    app.require_subcommand(1);
    Options opts;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opts.config, "JSON experiment config")->check(CLI::ExistingFile);
        sub->add_option("--out", opts.out, "Output path, '-' for stdout");
        sub->add_option("--strategy", opts.strategy, "direct or factorized")
            ->check(CLI::IsMember({"direct", "factorized"}));
        sub->add_option("--threads", opts.threads, "Worker threads")->check(CLI::Range(1, 1024));
        sub->add_option("--format", opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };
    CLI::App* collinearity = app.add_subcommand("collinearity", "P2 against the tilt of a2 from the O-a1 axis");
    CLI::App* cone = app.add_subcommand("cone", "First-order angular profile about a1");
    CLI::App* kscan = app.add_subcommand("kscan", "Cone half width against k and its fitted exponent");
    CLI::App* planewave = app.add_subcommand("planewave", "Plane-wave P2 against the momentum direction");
    CLI::App* validate = app.add_subcommand("validate", "Run the oracle suite");
    for (CLI::App* sub : {collinearity, cone, kscan, planewave, validate})
        add_common(sub);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    try
    {
        if (collinearity->parsed())
            return run_scan(opts, tracks::run_collinearity_scan);
        if (cone->parsed())
            return run_scan(opts, tracks::run_cone_profile);
        if (kscan->parsed())
            return run_scan(opts, tracks::run_k_scaling);
        if (planewave->parsed())
            return run_scan(opts, tracks::run_planewave_scan);

        const tracks::ExperimentConfig cfg = load(opts);
        const tracks::ValidationReport report = tracks::run_validation(cfg);
        emit(cfg, cfg.format == tracks::OutputFormat::csv ? report.to_csv() : report.to_json());
        for (const auto& c : report.checks)
            if (!c.passed)
                std::cerr << "validation failed: " << c.name << " = " << c.value << " > " << c.tolerance << "\n";
        return report.passed() ? ok : validation_failed;
    }
    catch (const tracks::ConfigError& e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    }
    catch (const tracks::AccuracyError& e)
    {
        std::cerr << "accuracy failure: " << e.what() << "\n";
        return accuracy_error;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return accuracy_error;
    }
}
