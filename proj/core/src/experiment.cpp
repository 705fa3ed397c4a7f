// Copyright 2026 The energyucb Authors
// SPDX-License-Identifier: Apache-2.0

#include "energyucb/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <mutex>
#include <functional>
#include <cctype>
#include <sstream>
#include <thread>

#include "energyucb/error.hpp"
#include "energyucb/simulator.hpp"
#include "json.hpp"
#include "text_format.hpp"

namespace energyucb {

namespace fs = std::filesystem;
using nlohmann::json;

#ifndef ENERGYUCB_VERSION
#define ENERGYUCB_VERSION "unknown"
#endif

std::string_view library_version() noexcept
{
    return ENERGYUCB_VERSION;
}

// ---------------------------------------------------------------------------
// Policy specs and config

PolicySpec PolicySpec::parse(std::string_view text)
{
    PolicySpec spec;
    const auto colon = text.find(':');
    const auto head = detail::trim(text.substr(0, colon));
    const auto kind = parse_policy_kind(head);
    if (!kind) {
        throw InvalidArgument("unknown policy kind '" + std::string(head) + "'");
    }
    spec.kind = *kind;
    if (spec.kind != PolicyKind::static_arm) {
        if (colon != std::string_view::npos) {
            throw InvalidArgument("policy '" + std::string(head) + "' takes no argument");
        }
        return spec;
    }
    if (colon == std::string_view::npos) {
        throw InvalidArgument("static policy needs a frequency, e.g. 'static:1.6' or 'static:all'");
    }
    const auto arg = detail::trim(text.substr(colon + 1));
    if (arg == "all") {
        spec.all_static = true;
        return spec;
    }
    std::string_view number = arg;
    if (number.size() > 3 && number.substr(number.size() - 3) == "GHz") {
        number.remove_suffix(3);
    }
    const auto ghz = detail::parse_double(number);
    if (!ghz || !(*ghz > 0.0)) {
        throw InvalidArgument("bad static frequency '" + std::string(arg) + "'");
    }
    spec.static_ghz = *ghz;
    return spec;
}

std::string PolicySpec::to_string() const
{
    if (kind != PolicyKind::static_arm) {
        return std::string(energyucb::to_string(kind));
    }
    return all_static ? "static:all" : "static:" + format_ghz(static_ghz.value_or(0.0));
}

std::string policy_label(PolicyKind kind, std::optional<double> static_ghz)
{
    if (kind == PolicyKind::static_arm) {
        return "static@" + format_ghz(static_ghz.value_or(0.0)) + "GHz";
    }
    return std::string(to_string(kind));
}

void ExperimentConfig::validate() const
{
    if (profiles.empty()) {
        throw InvalidArgument("config lists no profiles");
    }
    if (policies.empty()) {
        throw InvalidArgument("config lists no policies");
    }
    if (seeds.empty()) {
        throw InvalidArgument("config lists no seeds");
    }
    if (step_s && !(*step_s > 0.0)) {
        throw InvalidArgument("step_s must be positive");
    }
    if (!(guard > 0.0)) {
        throw InvalidArgument("guard must be positive");
    }
    if (!(alpha >= 0.0)) {
        throw InvalidArgument("alpha must be nonnegative");
    }
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw InvalidArgument("epsilon must lie in [0, 1]");
    }
    if (oracle_samples < kMinOracleSamples) {
        throw InvalidArgument("oracle_samples must be at least " +
                              std::to_string(kMinOracleSamples));
    }
    if (jobs == 0) {
        throw InvalidArgument("jobs must be at least 1");
    }
}

ExperimentConfig parse_config(std::string_view json_text, const fs::path &base_dir)
{
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    }
    catch (const json::parse_error &ex) {
        throw ParseError("<config>", std::nullopt, ex.what());
    }
    if (!doc.is_object()) {
        throw ParseError("<config>", std::nullopt, "config must be a JSON object");
    }

    static const char *const known[] = {
        "profiles", "policies", "seeds",          "seed_count",  "step_s",     "cycles", "alpha",
        "epsilon",  "guard",    "normalization", "oracle_samples", "oracle_seed", "output_dir",
        "plots",    "jobs",
    };
    for (const auto &item : doc.items()) {
        if (std::find(std::begin(known), std::end(known), item.key()) == std::end(known)) {
            throw ParseError("<config>", std::nullopt, "unknown config key '" + item.key() + "'");
        }
    }

    ExperimentConfig cfg;
    try {
        for (const auto &path : doc.value("profiles", json::array())) {
            fs::path p = path.get<std::string>();
            cfg.profiles.push_back(p.is_relative() && !base_dir.empty() ? base_dir / p : p);
        }
        for (const auto &policy : doc.value("policies", json::array())) {
            cfg.policies.push_back(PolicySpec::parse(policy.get<std::string>()));
        }
        if (doc.contains("seeds")) {
            cfg.seeds = doc["seeds"].get<std::vector<std::uint64_t>>();
        }
        if (doc.contains("seed_count")) {
            const auto count = doc["seed_count"].get<std::uint64_t>();
            cfg.seeds.clear();
            for (std::uint64_t s = 0; s < count; ++s) {
                cfg.seeds.push_back(s);
            }
        }
        if (doc.contains("step_s")) {
            cfg.step_s = doc["step_s"].get<double>();
        }
        cfg.cycles = doc.value("cycles", cfg.cycles);
        cfg.alpha = doc.value("alpha", cfg.alpha);
        cfg.epsilon = doc.value("epsilon", cfg.epsilon);
        cfg.guard = doc.value("guard", cfg.guard);
        if (doc.contains("normalization")) {
            const auto &norm = doc["normalization"];
            if (norm.is_boolean()) {
                cfg.normalization = norm.get<bool>() ? Normalization::spread : Normalization::none;
            }
            else {
                const auto mode = parse_normalization(norm.get<std::string>());
                if (!mode) {
                    throw InvalidArgument("unknown normalization '" + norm.get<std::string>() + "'");
                }
                cfg.normalization = *mode;
            }
        }
        cfg.oracle_samples = doc.value("oracle_samples", cfg.oracle_samples);
        cfg.oracle_seed = doc.value("oracle_seed", cfg.oracle_seed);
        if (doc.contains("output_dir")) {
            fs::path out = doc["output_dir"].get<std::string>();
            cfg.output_dir = out.is_relative() && !base_dir.empty() ? base_dir / out : out;
        }
        cfg.plots = doc.value("plots", cfg.plots);
        cfg.jobs = doc.value("jobs", cfg.jobs);
    }
    catch (const json::exception &ex) {
        throw ParseError("<config>", std::nullopt, ex.what());
    }
    return cfg;
}

ExperimentConfig load_config(const fs::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open config file " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return parse_config(text.str(), path.parent_path());
    }
    catch (const ParseError &ex) {
        throw ParseError(path.string(), std::nullopt, ex.what());
    }
}

// ---------------------------------------------------------------------------
// Sweep

namespace {

struct ConcretePolicy {
    std::string label;
    PolicyKind kind;
    std::size_t static_arm = 0;
};

std::vector<ConcretePolicy> expand_policies(const ExperimentConfig &cfg,
                                            const ApplicationProfile &profile)
{
    std::vector<ConcretePolicy> out;
    auto add = [&out](ConcretePolicy p) {
        const bool seen = std::any_of(out.begin(), out.end(),
                                      [&p](const ConcretePolicy &q) { return q.label == p.label; });
        if (!seen) {
            out.push_back(std::move(p));
        }
    };
    for (const auto &spec : cfg.policies) {
        if (spec.kind != PolicyKind::static_arm) {
            add({policy_label(spec.kind), spec.kind, 0});
            continue;
        }
        if (spec.all_static) {
            // Highest frequency first, matching the usual table layout.
            for (std::size_t i = profile.freqs.size(); i-- > 0;) {
                add({policy_label(spec.kind, profile.freqs[i]), spec.kind, i});
            }
            continue;
        }
        const auto arm = profile.freqs.find(*spec.static_ghz);
        if (!arm) {
            throw InvalidArgument("profile '" + profile.name + "' has no " +
                                  format_ghz(*spec.static_ghz) + " GHz arm");
        }
        add({policy_label(spec.kind, profile.freqs[*arm]), spec.kind, *arm});
    }
    return out;
}

struct Trial {
    double energy_j = 0.0;
    double exec_time_s = 0.0;
    std::uint64_t steps = 0;
    double final_regret = 0.0;
    std::vector<double> regret;
};

template <typename Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn &&fn)
{
    const std::size_t workers = std::min(jobs, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                }
                catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto &t : threads) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace

const CellSummary *ExperimentReport::find(std::string_view application,
                                          std::string_view policy) const
{
    for (const auto &cell : cells) {
        if (cell.summary.profile == application && cell.summary.policy == policy) {
            return &cell;
        }
    }
    return nullptr;
}

ExperimentReport run_sweep(const ExperimentConfig &config,
                           const std::vector<ApplicationProfile> &loaded)
{
    if (config.policies.empty()) {
        throw InvalidArgument("config lists no policies");
    }
    if (config.seeds.empty()) {
        throw InvalidArgument("config lists no seeds");
    }
    const RewardConfig reward_cfg{config.guard, config.normalization};
    ExperimentReport report;

    for (auto profile : loaded) {
        if (config.step_s) {
            profile.step_s = *config.step_s;
        }
        profile.validate();
        report.applications.push_back(profile.name);
        const ArmTruth truth =
            oracle_truth(profile, reward_cfg, config.oracle_samples, config.oracle_seed);

        for (const auto &policy : expand_policies(config, profile)) {
            if (std::find(report.policies.begin(), report.policies.end(), policy.label) ==
                report.policies.end()) {
                report.policies.push_back(policy.label);
            }
            std::vector<Trial> trials(config.seeds.size());
            parallel_for(config.seeds.size(), config.jobs, [&](std::size_t i) {
                const std::uint64_t seed = config.seeds[i];
                PolicyParams params;
                params.cycles = config.cycles;
                params.alpha = config.alpha;
                params.epsilon = config.epsilon;
                params.static_arm = policy.static_arm;
                params.seed = derive_seed(seed, 1);
                Policy bandit(policy.kind, profile.freqs.size(), params);
                const EpisodeResult episode =
                    run_episode(profile, bandit, reward_cfg, derive_seed(seed, 2));
                Trial &trial = trials[i];
                trial.energy_j = episode.total_energy_j;
                trial.exec_time_s = episode.exec_time_s;
                trial.steps = episode.steps;
                trial.regret = cumulative_regret(episode, truth);
                trial.final_regret = trial.regret.empty() ? 0.0 : trial.regret.back();
            });

            CellSummary cell;
            std::vector<EpisodeResult> light(trials.size());
            std::size_t prefix = std::numeric_limits<std::size_t>::max();
            for (std::size_t i = 0; i < trials.size(); ++i) {
                light[i].profile = profile.name;
                light[i].policy = policy.label;
                light[i].seed = config.seeds[i];
                light[i].total_energy_j = trials[i].energy_j;
                light[i].exec_time_s = trials[i].exec_time_s;
                light[i].steps = trials[i].steps;
                light[i].regret = {trials[i].final_regret};
                prefix = std::min(prefix, trials[i].regret.size());
            }
            cell.summary = aggregate_trials(light);
            cell.regret_mean.resize(prefix);
            cell.regret_std.resize(prefix);
            std::vector<double> column(trials.size());
            for (std::size_t t = 0; t < prefix; ++t) {
                for (std::size_t i = 0; i < trials.size(); ++i) {
                    column[i] = trials[i].regret[t];
                }
                std::tie(cell.regret_mean[t], cell.regret_std[t]) = mean_and_std(column);
            }
            report.cells.push_back(std::move(cell));
            report.trials.push_back({});
            for (std::size_t i = 0; i < trials.size(); ++i) {
                report.trials.back().push_back({config.seeds[i], trials[i].energy_j,
                                                trials[i].exec_time_s, trials[i].steps,
                                                trials[i].final_regret});
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Report files

namespace {

std::string fixed(double value, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
    return buf;
}

std::string file_stem(std::string_view text)
{
    std::string out;
    for (const char c : text) {
        const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' ||
                          c == '-' || c == '@';
        out.push_back(keep ? c : '_');
    }
    return out;
}

std::uint64_t fnv1a(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string read_bytes(const fs::path &path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string hex64(std::uint64_t value)
{
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, value);
    return buf;
}

std::ofstream open_output(const fs::path &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    return out;
}

// Table shaped like "rows = policy, columns = application".
void write_policy_table(const fs::path &path, const ExperimentReport &report, double unit,
                        int digits, double (*pick)(const TrialSummary &),
                        const std::string &extra_label,
                        const std::function<std::optional<double>(const std::string &)> &extra)
{
    auto out = open_output(path);
    out << "policy";
    for (const auto &app : report.applications) {
        out << ',' << app;
    }
    out << '\n';
    for (const auto &policy : report.policies) {
        out << policy;
        for (const auto &app : report.applications) {
            out << ',';
            if (const auto *cell = report.find(app, policy)) {
                out << fixed(pick(cell->summary) / unit, digits);
            }
        }
        out << '\n';
    }
    out << extra_label;
    for (const auto &app : report.applications) {
        out << ',';
        if (const auto value = extra(app)) {
            out << fixed(*value, digits);
        }
    }
    out << '\n';
}

// Label of the static policy at the highest frequency of an application.
std::optional<std::string> static_max_label(const ExperimentReport &report, const std::string &app)
{
    std::optional<std::string> best;
    double best_ghz = -1.0;
    for (const auto &cell : report.cells) {
        const auto &label = cell.summary.policy;
        if (cell.summary.profile != app || label.rfind("static@", 0) != 0) {
            continue;
        }
        const auto ghz = detail::parse_double(label.substr(7, label.size() - 10));
        if (ghz && *ghz > best_ghz) {
            best_ghz = *ghz;
            best = label;
        }
    }
    return best;
}

void write_regret_svg(const fs::path &path, const ExperimentReport &report, const std::string &app)
{
    constexpr double width = 640.0;
    constexpr double height = 400.0;
    constexpr double margin = 50.0;
    static const char *const colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                         "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
    std::vector<const CellSummary *> series;
    std::size_t max_t = 1;
    double max_regret = 1e-12;
    for (const auto &cell : report.cells) {
        if (cell.summary.profile != app || cell.summary.policy.rfind("static@", 0) == 0 ||
            cell.regret_mean.empty()) {
            continue;
        }
        series.push_back(&cell);
        max_t = std::max(max_t, cell.regret_mean.size());
        max_regret = std::max(max_regret, cell.regret_mean.back());
    }
    auto out = open_output(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n"
        << "<rect x=\"" << margin << "\" y=\"" << margin / 2 << "\" width=\""
        << width - 1.5 * margin << "\" height=\"" << height - 1.5 * margin
        << "\" fill=\"none\" stroke=\"black\"/>\n"
        << "<text x=\"" << width / 2 << "\" y=\"" << height - 8
        << "\" text-anchor=\"middle\" font-size=\"12\">step t (max " << max_t << ")</text>\n"
        << "<text x=\"12\" y=\"" << height / 2
        << "\" font-size=\"12\" transform=\"rotate(-90 12 " << height / 2
        << ")\" text-anchor=\"middle\">cumulative regret (max " << fixed(max_regret, 1)
        << ")</text>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto &mean = series[s]->regret_mean;
        const std::size_t stride = std::max<std::size_t>(1, mean.size() / 400);
        out << "<polyline fill=\"none\" stroke=\"" << colors[s % std::size(colors)]
            << "\" points=\"";
        for (std::size_t t = 0; t < mean.size(); t += stride) {
            const double x = margin + (width - 1.5 * margin) * static_cast<double>(t) /
                                          static_cast<double>(max_t);
            const double y = height - margin - (height - 1.5 * margin) * mean[t] / max_regret;
            out << fixed(x, 1) << ',' << fixed(y, 1) << ' ';
        }
        out << "\"/>\n"
            << "<text x=\"" << margin + 8 << "\" y=\"" << margin / 2 + 16 + 14 * s
            << "\" font-size=\"12\" fill=\"" << colors[s % std::size(colors)] << "\">"
            << series[s]->summary.policy << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig &config)
{
    config.validate();
    std::vector<ApplicationProfile> profiles;
    std::vector<std::string> hashes;
    for (const auto &path : config.profiles) {
        if (!fs::exists(path)) {
            throw Error("missing profile file " + path.string());
        }
        profiles.push_back(read_profile_file(path));
        hashes.push_back(hex64(fnv1a(read_bytes(path))));
    }

    std::error_code ec;
    fs::create_directories(config.output_dir / "regret", ec);
    if (ec) {
        throw Error("cannot create output directory " + config.output_dir.string() + ": " +
                    ec.message());
    }

    ExperimentReport report = run_sweep(config, profiles);
    const fs::path &dir = config.output_dir;

    const auto saved_energy = [&report](const std::string &app) -> std::optional<double> {
        const auto label = static_max_label(report, app);
        const auto *ucb = report.find(app, policy_label(PolicyKind::energy_ucb));
        const auto *base = label ? report.find(app, *label) : nullptr;
        if (ucb == nullptr || base == nullptr) {
            return std::nullopt;
        }
        return (base->summary.mean_energy_j - ucb->summary.mean_energy_j) / 1e6;
    };
    const auto time_overhead = [&report](const std::string &app) -> std::optional<double> {
        const auto label = static_max_label(report, app);
        const auto *ucb = report.find(app, policy_label(PolicyKind::energy_ucb));
        const auto *base = label ? report.find(app, *label) : nullptr;
        if (ucb == nullptr || base == nullptr) {
            return std::nullopt;
        }
        return 100.0 * (ucb->summary.mean_exec_time_s / base->summary.mean_exec_time_s - 1.0);
    };

    const fs::path energy_path = dir / "energy_table.csv";
    write_policy_table(
        energy_path, report, 1e6, 4, [](const TrialSummary &s) { return s.mean_energy_j; },
        "saved_energy", saved_energy);
    report.files.push_back(energy_path);

    const fs::path time_path = dir / "exec_time.csv";
    write_policy_table(
        time_path, report, 1.0, 4, [](const TrialSummary &s) { return s.mean_exec_time_s; },
        "energy_ucb_overhead_pct", time_overhead);
    report.files.push_back(time_path);

    const fs::path trials_path = dir / "trials.csv";
    {
        auto out = open_output(trials_path);
        out << "application,policy,seed,total_energy_j,exec_time_s,steps,final_regret\n";
        for (std::size_t c = 0; c < report.cells.size(); ++c) {
            const auto &summary = report.cells[c].summary;
            for (const auto &trial : report.trials[c]) {
                out << summary.profile << ',' << summary.policy << ',' << trial.seed << ','
                    << fixed(trial.energy_j, 3) << ',' << fixed(trial.exec_time_s, 3) << ','
                    << trial.steps << ',' << fixed(trial.final_regret, 6) << '\n';
            }
        }
    }
    report.files.push_back(trials_path);

    for (const auto &cell : report.cells) {
        const fs::path path = dir / "regret" /
                              (file_stem(cell.summary.profile) + "__" +
                               file_stem(cell.summary.policy) + ".csv");
        auto out = open_output(path);
        out << "t,mean_regret,std_regret\n";
        for (std::size_t t = 0; t < cell.regret_mean.size(); ++t) {
            out << t + 1 << ',' << fixed(cell.regret_mean[t], 6) << ','
                << fixed(cell.regret_std[t], 6) << '\n';
        }
        report.files.push_back(path);
    }
    if (config.plots) {
        for (const auto &app : report.applications) {
            const fs::path path = dir / "regret" / (file_stem(app) + ".svg");
            write_regret_svg(path, report, app);
            report.files.push_back(path);
        }
    }

    json manifest;
    manifest["tool"] = "energyucb";
    manifest["version"] = std::string(library_version());
    json cfg;
    cfg["cycles"] = config.cycles;
    cfg["alpha"] = config.alpha;
    cfg["epsilon"] = config.epsilon;
    cfg["guard"] = config.guard;
    cfg["normalization"] = std::string(to_string(config.normalization));
    cfg["oracle_samples"] = config.oracle_samples;
    cfg["oracle_seed"] = config.oracle_seed;
    cfg["step_s"] = config.step_s ? json(*config.step_s) : json(nullptr);
    cfg["seeds"] = config.seeds;
    cfg["seed_derivation"] = "policy=derive_seed(seed,1), noise=derive_seed(seed,2)";
    json policies = json::array();
    for (const auto &spec : config.policies) {
        policies.push_back(spec.to_string());
    }
    cfg["policies"] = policies;
    manifest["config"] = cfg;
    json profile_list = json::array();
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        profile_list.push_back({{"name", profiles[i].name},
                                {"file", config.profiles[i].filename().string()},
                                {"fnv1a64", hashes[i]}});
    }
    manifest["profiles"] = profile_list;
    json cells = json::array();
    for (std::size_t c = 0; c < report.cells.size(); ++c) {
        const auto &s = report.cells[c].summary;
        json seeds = json::array();
        for (const auto &trial : report.trials[c]) {
            seeds.push_back(trial.seed);
        }
        cells.push_back({{"application", s.profile},
                         {"policy", s.policy},
                         {"seeds", seeds},
                         {"mean_energy_j", s.mean_energy_j},
                         {"std_energy_j", s.std_energy_j},
                         {"mean_exec_time_s", s.mean_exec_time_s},
                         {"std_exec_time_s", s.std_exec_time_s},
                         {"mean_final_regret", s.mean_final_regret},
                         {"std_final_regret", s.std_final_regret}});
    }
    manifest["cells"] = cells;
    json outputs = json::array();
    for (const auto &path : report.files) {
        outputs.push_back(fs::relative(path, dir).generic_string());
    }
    manifest["outputs"] = outputs;
    const fs::path manifest_path = dir / "manifest.json";
    {
        auto out = open_output(manifest_path);
        out << manifest.dump(2) << '\n';
    }
    report.files.push_back(manifest_path);
    return report;
}

}  // namespace energyucb
