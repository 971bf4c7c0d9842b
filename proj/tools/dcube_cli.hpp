#pragma once

// Command-line front end. run_cli() is the whole program minus process
// plumbing so the tests can drive it with in-memory streams.
//
// Exit codes: 0 accept / success, 1 reject, 2 usage or domain error.

#include <dcube/battery.hpp>
#include <dcube/correlation_study.hpp>
#include <dcube/distance_distributions.hpp>
#include <dcube/generators.hpp>
#include <dcube/io.hpp>
#include <dcube/report.hpp>
#include <dcube/version.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace dcube::cli {

inline constexpr int kExitAccept = 0;
inline constexpr int kExitReject = 1;
inline constexpr int kExitError = 2;

inline std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

/// Auxiliary seed, overridable through DCUBE_SEED.
inline std::uint64_t aux_seed() {
    if (const char* s = std::getenv("DCUBE_SEED")) {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(s, &used, 0);
            if (used == std::string(s).size()) return v;
        } catch (const std::exception&) {
        }
        throw DomainError(std::string("DCUBE_SEED is not an unsigned integer: '") + s + "'");
    }
    return kDefaultAuxSeed;
}

/// Text line for one test; the report test reproduces this from the JSON.
inline std::string format_result_line(const std::string& name, double statistic,
                                      std::optional<int> df, double p_value) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-20s %18.10g %4s %14.6g", name.c_str(), statistic,
                  df ? std::to_string(*df).c_str() : "-", p_value);
    return buf;
}

struct Streams {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
};

inline int cmd_cdf(int k, double a2, bool edgeworth, bool recursive, double tol, Streams io) {
    const Dimension dim(k);
    double value = 0.0;
    if (edgeworth) {
        if (k < kEdgeworthMinDimension)
            io.err << "warning: Edgeworth expansion used below k = " << kEdgeworthMinDimension << '\n';
        value = edgeworth_cdf(dim, standardize(dim, a2));
    } else if (recursive || k > 3) {
        QuadratureConfig cfg;
        cfg.abs_tolerance = tol;
        value = fk_cdf_recursive(dim, a2, cfg);
    } else {
        value = k == 1 ? f1_cdf(a2) : k == 2 ? f2_cdf(a2) : f3_cdf(a2);
    }
    io.out << fmt("%.7f", value) << '\n';
    return kExitAccept;
}

inline int cmd_gen(const std::string& which, std::size_t count, bool raw, Streams io) {
    if (which == "aux") {
        AuxiliaryGenerator gen(aux_seed());
        for (std::size_t i = 0; i < count; ++i) {
            if (raw) io.out << gen.raw() << '\n';
            else io.out << fmt("%.17g", gen.uniform()) << '\n';
        }
        return kExitAccept;
    }
    const auto spec = lcg_spec(parse_lcg_id(which));
    if (raw) {
        for (auto r : take_raw(spec, count).first) io.out << r << '\n';
    } else {
        for (double u : take(spec, count).first) io.out << fmt("%.17g", u) << '\n';
    }
    return kExitAccept;
}

struct TestArgs {
    std::string input = "-";
    std::string format = "text";
    std::string gen;
    std::size_t count = 0;
    std::string battery = "all";
    std::string bins = "table2";
    std::string pairing = "(123)(456)";
    double level = 0.01;
    std::string report;
};

inline int cmd_test(const TestArgs& a, Streams io) {
    if (!(a.level > 0.0 && a.level < 1.0)) throw DomainError("--level must lie in (0,1)");
    std::vector<double> stream;
    std::string description;
    if (!a.gen.empty()) {
        if (a.count == 0) throw DomainError("--gen requires --count > 0");
        if (a.gen == "aux") {
            stream = AuxiliaryGenerator(aux_seed()).take(a.count);
        } else {
            stream = take(lcg_spec(parse_lcg_id(a.gen)), a.count).first;
        }
        description = "generator " + a.gen;
    } else {
        const auto fmt_kind = parse_input_format(a.format);
        if (a.input == "-") {
            stream = read_stream(io.in, fmt_kind);
            description = "stdin";
        } else {
            std::ifstream f(a.input, std::ios::binary);
            if (!f) throw DomainError("cannot open input file '" + a.input + "'");
            stream = read_stream(f, fmt_kind);
            description = a.input;
        }
        description += " (" + a.format + ")";
    }
    description += ", " + std::to_string(stream.size()) + " numbers";

    BatteryOptions opt;
    opt.pairing = PairingScheme::parse(a.pairing);
    if (a.bins == "solved") opt.solved_d3_bins = true;
    else if (a.bins != "table2") throw DomainError("--bins must be table2 or solved");

    ReportEnvelope env;
    env.input = description;
    env.level = a.level;
    for (auto id : parse_battery(a.battery)) env.results.push_back(run_battery_test(id, stream, opt));

    io.out << "dcube " << kVersion << "  input: " << description << '\n';
    {
        char head[160];
        std::snprintf(head, sizeof head, "%-20s %18s %4s %14s", "test", "statistic", "df", "p-value");
        io.out << head << '\n';
    }
    for (const auto& r : env.results) {
        io.out << format_result_line(r.outcome.name, r.outcome.statistic, r.outcome.df, r.outcome.p_value)
               << '\n';
        if (r.bins && r.bins->low_expected_warning)
            io.err << "warning: " << r.outcome.name << ": expected bin count below 5\n";
    }
    io.out << "verdict: " << (env.reject() ? "reject" : "accept") << " (level " << a.level << ")\n";

    if (!a.report.empty()) {
        std::ofstream f(a.report);
        if (!f) throw DomainError("cannot write report file '" + a.report + "'");
        f << to_json(env).dump(2) << '\n';
    }
    return env.reject() ? kExitReject : kExitAccept;
}

inline int cmd_mc_corr(const std::string& gen, std::size_t trials, std::size_t per_trial,
                       const std::string& battery, const std::string& report, Streams io) {
    const auto tm = run_trials(lcg_spec(parse_lcg_id(gen)), trials, per_trial, parse_battery(battery));
    const auto cm = correlation_table(tm);
    io.out << "generator (" << gen << "), " << trials << " trials x " << per_trial << " numbers\n";
    io.out << format_correlation_matrix(cm);
    if (!report.empty()) {
        std::ofstream f(report);
        if (!f) throw DomainError("cannot write report file '" + report + "'");
        f << to_json(cm, gen, tm).dump(2) << '\n';
    }
    return kExitAccept;
}

inline int cmd_bins(bool solved, Streams io) {
    const auto& p = solved ? solved_d3_partition() : table2_partition();
    const char* edge_fmt = solved ? "%.6f" : "%.3f";
    io.out << " i  interval                 F3(hi) - F3(lo)\n";
    for (std::size_t i = 0; i < p.bins(); ++i) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%2zu  (%s, %s]", i + 1, fmt(edge_fmt, p.edges()[i]).c_str(),
                      fmt(edge_fmt, p.edges()[i + 1]).c_str());
        std::string line = buf;
        line.resize(std::max<std::size_t>(line.size(), 27), ' ');
        io.out << line << fmt("%.7f", p.probabilities()[i]) << '\n';
    }
    return kExitAccept;
}

inline int run_cli(const std::vector<std::string>& args, Streams io) {
    CLI::App app{"Squared-distance randomness tests in the unit cube"};
    app.name("dcube");
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    int k = 3;
    double a2 = 0.0;
    bool edgeworth = false, recursive = false;
    double tol = 1e-9;
    auto* cdf = app.add_subcommand("cdf", "Evaluate the CDF of D_k^2 at a squared distance");
    cdf->add_option("-k", k, "Dimension")->check(CLI::PositiveNumber);
    cdf->add_option("a2", a2, "Squared distance")->required()->allow_extra_args(false);
    cdf->add_flag("--edgeworth", edgeworth, "Edgeworth approximation of the standardized value");
    cdf->add_flag("--recursive", recursive, "Use the convolution recursion even for k <= 3");
    cdf->add_option("--tol", tol, "Quadrature absolute tolerance")->check(CLI::PositiveNumber);

    std::string which;
    std::size_t count = 0;
    bool raw = false;
    auto* gen = app.add_subcommand("gen", "Emit generator output, one number per line");
    gen->add_option("--which", which, "a, b, c or aux")->required();
    gen->add_option("--count", count, "How many numbers")->required();
    gen->add_flag("--raw", raw, "Emit raw integer states instead of uniforms");

    TestArgs targs;
    auto* test = app.add_subcommand("test", "Run a test battery on a stream");
    test->add_option("--input,-i", targs.input, "Input path, '-' for stdin");
    test->add_option("--format", targs.format, "text, u32 or u64");
    test->add_option("--gen", targs.gen, "Use generator a, b, c or aux instead of an input");
    test->add_option("--count", targs.count, "Numbers to draw with --gen");
    test->add_option("--battery", targs.battery, "all, d2 or a comma-separated list");
    test->add_option("--bins", targs.bins, "D3 bins: table2 or solved");
    test->add_option("--pairing", targs.pairing, "D3 pairing scheme, e.g. (123)(456)");
    test->add_option("--level", targs.level, "Significance level");
    test->add_option("--report", targs.report, "Write a JSON report to this path");

    std::string mc_gen = "a", mc_battery = "all", mc_report;
    std::size_t trials = 200, per_trial = 993;
    auto* mc = app.add_subcommand("mc-corr", "Correlate test statistics over repeated trials");
    mc->add_option("--gen", mc_gen, "a, b or c");
    mc->add_option("--trials", trials, "Number of trials");
    mc->add_option("--per-trial", per_trial, "Numbers per trial");
    mc->add_option("--battery", mc_battery, "all, d2 or a comma-separated list");
    mc->add_option("--report", mc_report, "Write a JSON report to this path");

    bool solved = false;
    auto* bins = app.add_subcommand("bins", "Print the D3 bin partition");
    bins->add_flag("--solved", solved, "Equiprobable edges instead of the published ones");

    std::vector<const char*> argv{"dcube"};
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, io.out, io.err);
        return code == 0 ? kExitAccept : kExitError;
    }

    try {
        if (*cdf) return cmd_cdf(k, a2, edgeworth, recursive, tol, io);
        if (*gen) return cmd_gen(which, count, raw, io);
        if (*test) return cmd_test(targs, io);
        if (*mc) return cmd_mc_corr(mc_gen, trials, per_trial, mc_battery, mc_report, io);
        if (*bins) return cmd_bins(solved, io);
    } catch (const NumericalError& e) {
        io.err << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        io.err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

} // namespace dcube::cli
