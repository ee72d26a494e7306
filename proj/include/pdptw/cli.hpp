#pragma once

#include <algorithm>
#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pdptw/bounds.hpp"
#include "pdptw/config.hpp"
#include "pdptw/dynamic.hpp"
#include "pdptw/evolution.hpp"
#include "pdptw/lilim.hpp"
#include "pdptw/oracle.hpp"
#include "pdptw/report.hpp"

namespace pdptw {

struct CliOptions {
    std::string instance;
    std::string instance_dir;
    std::string mode = "static";
    std::string events;
    std::vector<double> derive;  ///< {fraction, release}
    std::string config;
    std::string out;
    std::string format = "json";
    bool oracle = false;
    bool timing = false;
    GaConfig ga;
};

namespace detail {

inline std::string instance_label(const std::filesystem::path& p) {
    std::string s = p.stem().string();
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

inline RunReport run_one(const std::filesystem::path& path, const CliOptions& opt, const GaConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    const std::string label = instance_label(path);
    Instance inst = parse_lilim(read_file(path), label);

    RunReport rep;
    if (opt.mode == "static") {
        StaticResult res = run_static(inst, cfg);
        rep = make_report(label, "static", cfg, res.bounds, res.weights, res.archive);
        if (opt.oracle) rep.oracle_front = [&] {
            std::vector<ObjectiveVector> f;
            for (const auto& e : exact_front(inst).front) f.push_back(e.obj);
            return f;
        }();
    } else {
        std::vector<DynamicEvent> events;
        Instance base = inst;
        if (!opt.events.empty()) {
            std::ifstream in(opt.events);
            if (!in) throw std::runtime_error("cannot open events file " + opt.events);
            events = parse_events_csv(in);
        } else {
            DerivedScenario sc = derive_events(inst, opt.derive[0], opt.derive[1], cfg.seed);
            base = std::move(sc.instance);
            events = std::move(sc.events);
        }
        std::stable_sort(events.begin(), events.end(),
                         [](const DynamicEvent& a, const DynamicEvent& b) { return a.t_d < b.t_d; });
        const auto method = opt.mode == "dynamic-m1" ? InsertionMethod::Greedy : InsertionMethod::Genetic;
        DynamicResult res = run_dynamic(base, events, cfg, method);
        rep = make_report(label, method == InsertionMethod::Greedy ? "m1" : "m2", cfg, res);
        if (opt.oracle) {
            std::vector<ObjectiveVector> f;
            for (const auto& e : exact_front(res.instance).front) f.push_back(e.obj);
            rep.oracle_front = std::move(f);
        }
    }
    if (opt.timing)
        rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

} // namespace detail

/// Parses flags and runs the selected pipeline. Returns the process exit status.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Multi-objective GA for the static and dynamic multi-vehicle PDPTW", "pdptw_bench"};
    CliOptions opt;
    GaConfig defaults;
    std::optional<int> pop;
    std::optional<int> gens;
    std::optional<std::uint64_t> seed;
    std::optional<double> lambda1;
    std::optional<double> lambda2;
    std::optional<int> mv;

    auto* inst_opt = app.add_option("--instance", opt.instance, "Li & Lim instance file");
    auto* dir_opt = app.add_option("--instance-dir", opt.instance_dir, "run every *.txt instance in a directory");
    inst_opt->excludes(dir_opt);
    app.add_option("--mode", opt.mode, "static | dynamic-m1 | dynamic-m2")
        ->check(CLI::IsMember({"static", "dynamic-m1", "dynamic-m2"}));
    auto* ev_opt = app.add_option("--events", opt.events, "dynamic event CSV");
    auto* der_opt = app.add_option("--derive-events", opt.derive, "derive events: FRACTION RELEASE")->expected(2);
    ev_opt->excludes(der_opt);
    app.add_option("--pop", pop, "population size");
    app.add_option("--gens", gens, "generation budget");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--lambda1", lambda1, "weight of the travel-cost criterion");
    app.add_option("--lambda2", lambda2, "weight of the tardiness criterion");
    app.add_option("--mv", mv, "split vectors sampled per offspring permutation");
    app.add_option("--config", opt.config, "key = value GA configuration file");
    app.add_option("--out", opt.out, "output path (format both: PATH.json and PATH.csv)");
    app.add_option("--format", opt.format, "json | csv | both")->check(CLI::IsMember({"json", "csv", "both"}));
    app.add_flag("--oracle", opt.oracle, "also compute the exact front (tiny instances only)");
    app.add_flag("--timing", opt.timing, "include wall time in the report");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (opt.instance.empty() && opt.instance_dir.empty()) throw CLI::RequiredError("--instance or --instance-dir");
        GaConfig cfg = opt.config.empty() ? defaults : load_config(opt.config);
        if (pop) cfg.population_size = *pop;
        if (gens) cfg.generations = *gens;
        if (seed) cfg.seed = *seed;
        if (lambda1) cfg.lambda1 = *lambda1;
        if (lambda2) cfg.lambda2 = *lambda2;
        if (lambda1 && !lambda2) cfg.lambda2 = 1.0 - *lambda1;
        if (lambda2 && !lambda1) cfg.lambda1 = 1.0 - *lambda2;
        if (mv) cfg.split_samples = *mv;
        cfg.validate();
        if (opt.mode != "static" && opt.events.empty() && opt.derive.empty())
            throw std::runtime_error("dynamic modes need --events or --derive-events");

        std::vector<std::filesystem::path> files;
        if (!opt.instance.empty()) {
            files.push_back(opt.instance);
        } else {
            if (!std::filesystem::is_directory(opt.instance_dir))
                throw std::runtime_error("not a directory: " + opt.instance_dir);
            for (const auto& entry : std::filesystem::directory_iterator(opt.instance_dir))
                if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            if (files.empty()) throw std::runtime_error("no *.txt instances in " + opt.instance_dir);
        }

        std::vector<RunReport> reports;
        for (std::size_t i = 0; i < files.size(); ++i) {
            GaConfig per = cfg;
            per.seed = cfg.seed + i;
            reports.push_back(detail::run_one(files[i], opt, per));
        }

        Json doc;
        if (opt.instance.empty()) {
            doc["reports"] = Json::array();
            for (const auto& r : reports) doc["reports"].push_back(report_to_json(r));
        } else {
            doc = report_to_json(reports.front());
        }
        const std::string json_text = doc.dump(2) + "\n";
        std::string csv_text = std::string(kCsvHeader) + "\n";
        for (const auto& r : reports) csv_text += report_csv_rows(r);

        const bool want_json = opt.format != "csv";
        const bool want_csv = opt.format != "json";
        if (opt.out.empty()) {
            if (want_json) out << json_text;
            if (want_csv) out << csv_text;
        } else if (opt.format == "both") {
            detail::write_file(opt.out + ".json", json_text);
            detail::write_file(opt.out + ".csv", csv_text);
        } else {
            detail::write_file(opt.out, want_json ? json_text : csv_text);
        }
        return 0;
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

inline int run_cli(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args, out, err);
}

} // namespace pdptw
