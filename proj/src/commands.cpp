#include "relplan/commands.hpp"

#include "relplan/errors.hpp"
#include "relplan/estimation.hpp"
#include "relplan/feature_model.hpp"
#include "relplan/manifest.hpp"
#include "relplan/monrp_solver.hpp"
#include "relplan/project_config.hpp"
#include "relplan/scenario_engine.hpp"
#include "relplan/tdss_bridge.hpp"
#include "relplan/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace relplan::cli {

namespace fs = std::filesystem;
using feature_model::FeatureSpec;
using feature_model::Severity;
using feature_model::ValidationReport;
using scenario_engine::ScenarioProgram;

namespace {

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<fs::path> list_files(const fs::path& dir, std::string_view extension)
{
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == extension)
            out.push_back(entry.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct Artifacts {
    std::vector<FeatureSpec> features; // sorted by id
    std::map<std::string, ScenarioProgram> programs; // feature id -> SoS-level program
    std::map<std::string, ScenarioProgram> internal_programs; // cs id -> program
    std::map<std::string, fs::path> program_files;
    ValidationReport report;
};

Artifacts load_artifacts(const ProjectConfig& cfg)
{
    if (!fs::is_directory(cfg.features_dir))
        throw ConfigError("features directory does not exist: " + cfg.features_dir.string());
    if (!fs::is_directory(cfg.scenarios_dir))
        throw ConfigError("scenarios directory does not exist: " + cfg.scenarios_dir.string());

    Artifacts art;
    auto issue = [&](Severity severity, std::string msg) {
        art.report.issues.push_back({severity, std::move(msg)});
    };

    for (const auto& path : list_files(cfg.features_dir, ".feature")) {
        try {
            art.features.push_back(
                feature_model::parse_feature_file(read_file(path), path.string()));
        } catch (const ParseError& e) {
            issue(Severity::Error, path.filename().string() + ": " + e.what());
        }
    }
    std::stable_sort(art.features.begin(), art.features.end(),
                     [](const FeatureSpec& a, const FeatureSpec& b) { return a.id < b.id; });

    for (const auto& path : list_files(cfg.scenarios_dir, ".scn")) {
        const fs::path stem = path.stem(); // "umc" or "<cs>.internal"
        try {
            ScenarioProgram program = scenario_engine::parse_scenario_spec(read_file(path));
            if (stem.extension() == ".internal") {
                program.level = scenario_engine::ProgramLevel::CsInternal;
                art.internal_programs.emplace(stem.stem().string(), std::move(program));
            } else {
                art.programs.emplace(stem.string(), std::move(program));
                art.program_files.emplace(stem.string(), path);
            }
        } catch (const ParseError& e) {
            issue(Severity::Error, path.filename().string() + ": " + e.what());
        }
    }

    ValidationReport cross =
        feature_model::validate_project_features(art.features, cfg.stakeholders);
    for (auto& entry : cross.issues)
        art.report.issues.push_back(std::move(entry));

    for (const auto& spec : art.features) {
        if (!art.programs.contains(spec.id) && !cfg.estimation.cost_overrides.contains(spec.id))
            issue(Severity::Warning, "feature '" + spec.id + "' has no scenario program (" +
                                         spec.id + ".scn) and no cost override; " +
                                         "estimate will fail");
    }
    for (const auto& [id, program] : art.programs) {
        (void)program;
        if (std::none_of(art.features.begin(), art.features.end(),
                         [&](const FeatureSpec& f) { return f.id == id; }))
            issue(Severity::Warning, "scenario program '" + id + ".scn' matches no feature id");
    }
    return art;
}

void print_report(const ValidationReport& report, std::ostream& out)
{
    for (const auto& entry : report.issues)
        out << (entry.severity == Severity::Error ? "error: " : "warning: ") << entry.message
            << "\n";
    out << report.error_count() << " error(s), " << report.warning_count() << " warning(s)\n";
}

ProjectConfig load_config_with_overrides(const GlobalOptions& opts)
{
    ProjectConfig cfg = load_project_config(opts.project);
    if (opts.output)
        cfg.output_dir = *opts.output;
    if (opts.seed)
        cfg.search.seed = *opts.seed;
    return cfg;
}

fs::path steps_path(const ProjectConfig& cfg, const FeatureSpec& spec)
{
    return cfg.bindings_dir / (spec.id + ".steps");
}

fs::path bind_path(const ProjectConfig& cfg, const FeatureSpec& spec)
{
    return cfg.bindings_dir / (spec.id + ".bind");
}

struct FeatureRun {
    const FeatureSpec* spec = nullptr;
    tdss::TestReport report;
    std::vector<std::string> issues; // artifact problems, counted as failures
};

/// Generates skeletons, applies the .bind file when present and executes
/// the feature's scenarios. check_steps_file additionally requires an
/// up-to-date .steps artifact (the `test` command contract).
FeatureRun run_feature_tests(const ProjectConfig& cfg, const FeatureSpec& spec,
                             const ScenarioProgram* program, int budget, bool check_steps_file)
{
    FeatureRun run;
    run.spec = &spec;
    if (program == nullptr) {
        run.issues.push_back("feature '" + spec.id + "' has no scenario program (" + spec.id +
                             ".scn); cannot execute its scenarios");
        return run;
    }
    std::vector<tdss::StepSkeleton> skeletons = tdss::generate_step_skeletons(spec);
    if (check_steps_file) {
        const fs::path path = steps_path(cfg, spec);
        if (!fs::exists(path)) {
            run.issues.push_back("missing " + path.string() + "; run gen-steps first");
            return run;
        }
        if (read_file(path) != tdss::skeletons_to_text(skeletons)) {
            run.issues.push_back(path.string() +
                                 " is stale; rerun gen-steps --force after feature edits");
            return run;
        }
    }
    const fs::path bind = bind_path(cfg, spec);
    if (fs::exists(bind)) {
        try {
            auto entries = tdss::parse_bindings_file(read_file(bind));
            auto outcome = tdss::bind_steps(std::move(skeletons), entries, *program);
            skeletons = std::move(outcome.skeletons);
            for (const auto& pattern : outcome.unmatched_patterns)
                run.issues.push_back(bind.filename().string() + ": binding matches no step: " +
                                     pattern);
        } catch (const ParseError& e) {
            run.issues.push_back(bind.filename().string() + ": " + e.what());
            return run;
        }
    }
    if (!run.issues.empty())
        return run;
    run.report = tdss::execute_test(spec, skeletons, *program, budget);
    return run;
}

nlohmann::json arg_to_json(const scenario_engine::ArgValue& v)
{
    if (const auto* s = std::get_if<std::string>(&v))
        return *s;
    if (const auto* i = std::get_if<std::int64_t>(&v))
        return *i;
    return std::get<bool>(v);
}

nlohmann::json test_report_json(const ProjectConfig& cfg, const std::vector<FeatureRun>& runs)
{
    nlohmann::json j;
    j["project"] = cfg.name;
    std::size_t passed = 0;
    std::size_t failed = 0;
    nlohmann::json results = nlohmann::json::array();
    nlohmann::json artifact_issues = nlohmann::json::array();
    for (const auto& run : runs) {
        for (const auto& msg : run.issues) {
            artifact_issues.push_back(msg);
            ++failed;
        }
        for (const auto& r : run.report.scenarios) {
            nlohmann::json entry;
            entry["feature"] = r.feature_id;
            entry["scenario"] = r.scenario_name;
            entry["scenario_index"] = r.scenario_index;
            entry["verdict"] = std::string(tdss::to_string(r.verdict));
            if (r.failed_step)
                entry["failed_step"] = *r.failed_step;
            else
                entry["failed_step"] = nullptr;
            nlohmann::json trace = nlohmann::json::array();
            for (std::size_t i = 0; i < r.trace.size(); ++i) {
                const auto& e = r.trace[i];
                nlohmann::json ev;
                ev["seq"] = i + 1;
                ev["sender"] = e.sender ? nlohmann::json(*e.sender) : nlohmann::json(nullptr);
                ev["event"] = e.owner + "." + e.name;
                nlohmann::json args = nlohmann::json::object();
                for (const auto& a : e.args)
                    args[a.name] = arg_to_json(a.value);
                ev["args"] = args;
                trace.push_back(ev);
            }
            entry["trace"] = trace;
            results.push_back(entry);
            if (r.verdict == tdss::Verdict::Pass)
                ++passed;
            else
                ++failed;
        }
    }
    j["totals"] = {{"scenarios", passed + failed}, {"passed", passed}, {"failed", failed}};
    j["results"] = results;
    j["artifact_issues"] = artifact_issues;
    return j;
}

std::vector<RunManifest::Input> digest_project_inputs(const ProjectConfig& cfg)
{
    std::vector<RunManifest::Input> inputs;
    auto add = [&](const fs::path& path) {
        inputs.push_back({path.string(), sha256_file(path)});
    };
    add(cfg.root / kConfigFileName);
    for (const auto& path : list_files(cfg.features_dir, ".feature"))
        add(path);
    for (const auto& path : list_files(cfg.scenarios_dir, ".scn"))
        add(path);
    if (fs::is_directory(cfg.bindings_dir)) {
        for (const auto& path : list_files(cfg.bindings_dir, ".bind"))
            add(path);
    }
    return inputs;
}

bool has_empty_release(const monrp::ParetoFront& front)
{
    return std::any_of(front.candidates.begin(), front.candidates.end(),
                       [](const monrp::ReleaseCandidate& c) {
                           return std::none_of(c.x.begin(), c.x.end(),
                                               [](std::uint8_t b) { return b != 0; });
                       });
}

} // namespace

// ---------------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------------

int cmd_validate(const GlobalOptions& opts, std::ostream& out, std::ostream& err)
{
    try {
        const ProjectConfig cfg = load_config_with_overrides(opts);
        const Artifacts art = load_artifacts(cfg);
        print_report(art.report, out);
        return art.report.has_errors() ? kExitDomain : kExitOk;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

// ---------------------------------------------------------------------------
// gen-steps
// ---------------------------------------------------------------------------

int cmd_gen_steps(const GlobalOptions& opts, bool force, std::ostream& out, std::ostream& err)
{
    try {
        const ProjectConfig cfg = load_config_with_overrides(opts);
        const Artifacts art = load_artifacts(cfg);
        if (art.report.has_errors()) {
            print_report(art.report, out);
            err << "error: validation failed; fix the project before generating steps\n";
            return kExitDomain;
        }
        fs::create_directories(cfg.bindings_dir);
        bool refused = false;
        for (const auto& spec : art.features) {
            const std::string content =
                tdss::skeletons_to_text(tdss::generate_step_skeletons(spec));
            const fs::path target = steps_path(cfg, spec);
            if (fs::exists(target)) {
                if (read_file(target) == content) {
                    out << "unchanged " << target.string() << "\n";
                    continue;
                }
                if (!force) {
                    err << "error: refusing to overwrite " << target.string()
                        << " (content differs; use --force)\n";
                    refused = true;
                    continue;
                }
            }
            atomic_write(target, content);
            out << "wrote " << target.string() << "\n";
        }
        return refused ? kExitDomain : kExitOk;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

// ---------------------------------------------------------------------------
// test
// ---------------------------------------------------------------------------

int cmd_test(const GlobalOptions& opts, const TestOptions& test_opts, std::ostream& out,
             std::ostream& err)
{
    try {
        const ProjectConfig cfg = load_config_with_overrides(opts);
        const int budget = test_opts.budget.value_or(cfg.test_budget);
        if (budget <= 0) {
            err << "error: --budget must be positive\n";
            return kExitUsage;
        }
        const Artifacts art = load_artifacts(cfg);
        if (art.report.has_errors()) {
            print_report(art.report, out);
            err << "error: validation failed; fix the project before testing\n";
            return kExitDomain;
        }

        std::vector<FeatureRun> runs;
        for (const auto& spec : art.features) {
            auto it = art.programs.find(spec.id);
            const ScenarioProgram* program =
                it != art.programs.end() ? &it->second : nullptr;
            runs.push_back(run_feature_tests(cfg, spec, program, budget, true));
        }

        std::size_t passed = 0;
        std::size_t failed = 0;
        for (const auto& run : runs) {
            for (const auto& msg : run.issues) {
                out << "error: " << msg << "\n";
                ++failed;
            }
            for (const auto& r : run.report.scenarios) {
                out << std::left << std::setw(14) << r.feature_id << std::setw(50)
                    << r.scenario_name << (r.verdict == tdss::Verdict::Pass ? "PASS" : "FAIL");
                if (r.verdict != tdss::Verdict::Pass) {
                    out << "  " << tdss::to_string(r.verdict);
                    if (r.failed_step) {
                        const auto& step =
                            run.spec->scenarios[r.scenario_index].steps[*r.failed_step];
                        out << " at step " << *r.failed_step << " ("
                            << feature_model::to_string(step.resolved_keyword) << " " << step.text
                            << ")";
                    }
                }
                out << "\n";
                if (r.verdict == tdss::Verdict::Pass)
                    ++passed;
                else
                    ++failed;
            }
        }
        out << passed << " passed, " << failed << " failed\n";

        const fs::path report_path =
            test_opts.report_path.value_or(cfg.output_dir / "test_report.json");
        atomic_write(report_path, test_report_json(cfg, runs).dump(2) + "\n");
        out << "report: " << report_path.string() << "\n";
        return failed == 0 ? kExitOk : kExitDomain;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

// ---------------------------------------------------------------------------
// estimate
// ---------------------------------------------------------------------------

int cmd_estimate(const GlobalOptions& opts, bool allow_failing, std::ostream& out,
                 std::ostream& err)
{
    try {
        const ProjectConfig cfg = load_config_with_overrides(opts);
        const Artifacts art = load_artifacts(cfg);
        if (art.report.has_errors()) {
            print_report(art.report, out);
            err << "error: validation failed; fix the project before estimating\n";
            return kExitDomain;
        }

        if (!allow_failing) {
            // TDSS gate: every feature that has a program must pass its tests.
            std::size_t failing = 0;
            for (const auto& spec : art.features) {
                auto it = art.programs.find(spec.id);
                if (it == art.programs.end())
                    continue; // cost override path; nothing executable
                FeatureRun run =
                    run_feature_tests(cfg, spec, &it->second, cfg.test_budget, false);
                failing += run.issues.size() + run.report.failed;
            }
            if (failing > 0) {
                err << "error: " << failing
                    << " failing scenario(s)/artifact issue(s); run `relplan test` for details "
                       "or pass --allow-failing\n";
                return kExitDomain;
            }
        }

        std::map<std::string, const ScenarioProgram*> programs;
        for (const auto& [id, program] : art.programs)
            programs[id] = &program;

        const auto matrix =
            estimation::derive_value_matrix(art.features, cfg.stakeholders, cfg.estimation);
        std::vector<double> costs;
        try {
            costs = estimation::derive_cost_vector(art.features, programs, cfg.estimation);
        } catch (const std::invalid_argument& e) {
            err << "error: " << e.what() << "\n";
            return kExitDomain;
        }
        const monrp::MonrpInstance instance =
            estimation::build_instance(cfg.stakeholders, art.features, matrix, costs);

        fs::create_directories(cfg.output_dir);
        const fs::path instance_path = cfg.output_dir / "instance.csv";
        atomic_write(instance_path, monrp::instance_to_csv(instance));

        RunManifest manifest;
        manifest.command = "estimate";
        manifest.timestamp = iso8601_utc_now();
        manifest.inputs = digest_project_inputs(cfg);
        manifest.outputs = {instance_path.string()};
        write_manifest(cfg.output_dir / "estimate.manifest.json", manifest);

        out << "wrote " << instance_path.string() << " (" << instance.num_stakeholders()
            << " stakeholders x " << instance.num_features() << " features)\n";
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

int cmd_search(const GlobalOptions& opts, const SearchOptions& search_opts, std::ostream& out,
               std::ostream& err)
{
    try {
        monrp::SearchParams params;
        fs::path output_dir;
        std::optional<fs::path> instance_path;

        const bool standalone = search_opts.instance_path.has_value() ||
                                search_opts.random_dims.has_value();
        if (standalone) {
            output_dir = opts.output.value_or(fs::path("."));
            if (opts.seed)
                params.seed = *opts.seed;
        } else {
            const ProjectConfig cfg = load_config_with_overrides(opts);
            params = cfg.search;
            output_dir = cfg.output_dir;
            instance_path = cfg.output_dir / "instance.csv";
        }
        fs::create_directories(output_dir);

        std::optional<monrp::MonrpInstance> instance;
        if (search_opts.random_dims) {
            monrp::RandomInstanceParams rip;
            rip.stakeholders = search_opts.random_dims->first;
            rip.features = search_opts.random_dims->second;
            rip.seed = params.seed;
            instance = monrp::random_instance(rip);
            const fs::path path =
                output_dir / ("instance_random_" + std::to_string(rip.stakeholders) + "x" +
                              std::to_string(rip.features) + "_seed" +
                              std::to_string(rip.seed) + ".csv");
            atomic_write(path, monrp::instance_to_csv(*instance));
            out << "generated " << path.string() << "\n";
            instance_path = path;
        } else {
            if (search_opts.instance_path)
                instance_path = *search_opts.instance_path;
            if (!fs::exists(*instance_path)) {
                err << "error: instance not found: " << instance_path->string()
                    << (standalone ? "" : " (run `relplan estimate` first)") << "\n";
                return kExitUsage;
            }
            try {
                instance = monrp::instance_from_csv(read_file(*instance_path));
            } catch (const std::invalid_argument& e) {
                err << "error: bad instance " << instance_path->string() << ": " << e.what()
                    << "\n";
                return kExitDomain;
            }
        }

        const std::size_t n = instance->num_features();
        if (search_opts.exact && n > 20) {
            err << "error: --exact is limited to 20 features, the instance has "
                << n << "\n";
            return kExitUsage;
        }

        const auto t0 = std::chrono::steady_clock::now();
        const monrp::ParetoFront front = monrp::nsga2_search(*instance, params);
        const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);

        const fs::path front_path = output_dir / "front.csv";
        const fs::path plot_path = output_dir / "front.dat";
        atomic_write(front_path, monrp::front_to_csv(front));
        atomic_write(plot_path, monrp::front_to_plot(front));

        out << "search: " << instance->num_stakeholders() << " stakeholders x " << n
            << " features, seed " << params.seed << ", population " << params.population
            << ", generations " << params.generations << " (" << std::fixed
            << std::setprecision(2) << elapsed.count() << " s)\n";
        out.unsetf(std::ios::floatfield);
        out << "front: " << front.candidates.size() << " candidates, cost "
            << text::format_double(front.candidates.front().cost_total) << " .. "
            << text::format_double(front.candidates.back().cost_total) << ", value "
            << text::format_double(front.candidates.front().value_total) << " .. "
            << text::format_double(front.candidates.back().value_total) << "\n";
        out << "hypervolume: " << text::format_double(monrp::hypervolume(front, *instance))
            << "\n";
        if (has_empty_release(front))
            out << "note: the front includes the empty release (select nothing, cost 0); "
                   "it is kept for comparison\n";

        RunManifest manifest;
        manifest.command = "search";
        manifest.timestamp = iso8601_utc_now();
        manifest.seed = params.seed;
        if (instance_path && fs::exists(*instance_path))
            manifest.inputs.push_back({instance_path->string(), sha256_file(*instance_path)});
        manifest.outputs = {front_path.string(), plot_path.string()};

        if (search_opts.exact) {
            const monrp::ParetoFront exact = monrp::brute_force_front(*instance);
            const fs::path exact_path = output_dir / "exact_front.csv";
            atomic_write(exact_path, monrp::front_to_csv(exact));
            manifest.outputs.push_back(exact_path.string());

            auto pairs = [](const monrp::ParetoFront& f) {
                std::vector<std::pair<double, double>> out;
                for (const auto& c : f.candidates)
                    out.emplace_back(c.value_total, c.cost_total);
                std::sort(out.begin(), out.end());
                out.erase(std::unique(out.begin(), out.end()), out.end());
                return out;
            };
            const bool equal = pairs(front) == pairs(exact);
            const double hv_exact = monrp::hypervolume(exact, *instance);
            const double hv_meta = monrp::hypervolume(front, *instance);
            out << "exact front: " << exact.candidates.size() << " candidates\n";
            out << "objective pairs equal: " << (equal ? "yes" : "no") << "\n";
            out << "hypervolume ratio: "
                << (hv_exact > 0.0 ? text::format_double(hv_meta / hv_exact) : "n/a") << "\n";
        }

        write_manifest(output_dir / "search.manifest.json", manifest);
        out << "wrote " << front_path.string() << ", " << plot_path.string() << "\n";
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

int cmd_report(const GlobalOptions& opts, std::ostream& out, std::ostream& err)
{
    try {
        const ProjectConfig cfg = load_config_with_overrides(opts);
        const fs::path dir = cfg.output_dir;
        bool anything = false;

        out << "project: " << cfg.name << "\n";
        out << "output: " << dir.string() << "\n";

        const fs::path test_path = dir / "test_report.json";
        if (fs::exists(test_path)) {
            anything = true;
            const auto j = nlohmann::json::parse(read_file(test_path));
            out << "tests: " << j["totals"]["scenarios"] << " scenario(s), "
                << j["totals"]["passed"] << " passed, " << j["totals"]["failed"] << " failed\n";
        }

        std::optional<monrp::MonrpInstance> instance;
        const fs::path instance_path = dir / "instance.csv";
        if (fs::exists(instance_path)) {
            anything = true;
            instance = monrp::instance_from_csv(read_file(instance_path));
            out << "instance: " << instance->num_stakeholders() << " stakeholders x "
                << instance->num_features() << " features\n";
        }

        const fs::path front_path = dir / "front.csv";
        if (fs::exists(front_path)) {
            anything = true;
            monrp::ParetoFront front;
            front.provenance = monrp::Provenance::Metaheuristic;
            const auto lines = text::split_lines(read_file(front_path));
            for (std::size_t i = 1; i < lines.size(); ++i) {
                const auto fields = text::split(lines[i], ',');
                if (fields.size() != 4)
                    continue;
                monrp::ReleaseCandidate c;
                c.value_total = text::parse_double(fields[1]);
                c.cost_total = text::parse_double(fields[2]);
                for (char b : fields[3])
                    c.x.push_back(b == '1' ? 1 : 0);
                front.candidates.push_back(std::move(c));
            }
            out << "front: " << front.candidates.size() << " release candidate(s)\n";
            if (!front.candidates.empty()) {
                if (instance && front.candidates.front().x.size() == instance->num_features())
                    out << "hypervolume: "
                        << text::format_double(monrp::hypervolume(front, *instance)) << "\n";
                if (has_empty_release(front))
                    out << "note: the front includes the empty release (select nothing, "
                           "cost 0)\n";
                out << "  " << std::left << std::setw(10) << "id" << std::setw(14) << "value"
                    << std::setw(14) << "cost" << "features\n";
                const std::size_t show = std::min<std::size_t>(front.candidates.size(), 10);
                for (std::size_t i = 0; i < show; ++i) {
                    const auto& c = front.candidates[i];
                    std::string bits(c.x.size(), '0');
                    for (std::size_t k = 0; k < c.x.size(); ++k) {
                        if (c.x[k])
                            bits[k] = '1';
                    }
                    out << "  " << std::left << std::setw(10) << i + 1 << std::setw(14)
                        << text::format_double(c.value_total) << std::setw(14)
                        << text::format_double(c.cost_total) << bits << "\n";
                }
                if (front.candidates.size() > show)
                    out << "  ... " << front.candidates.size() - show << " more\n";
            }
        }

        for (const auto& name : {"estimate.manifest.json", "search.manifest.json"}) {
            const fs::path path = dir / name;
            if (fs::exists(path)) {
                anything = true;
                const auto j = nlohmann::json::parse(read_file(path));
                out << "run: " << j["command"].get<std::string>() << " at "
                    << j["timestamp"].get<std::string>() << " (tool "
                    << j["tool_version"].get<std::string>() << ")\n";
            }
        }

        if (!anything) {
            err << "error: no pipeline artifacts in " << dir.string()
                << "; run validate/gen-steps/test/estimate/search first\n";
            return kExitUsage;
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

} // namespace relplan::cli
