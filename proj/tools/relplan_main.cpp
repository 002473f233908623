#include "relplan/commands.hpp"
#include "relplan/text.hpp"
#include "relplan/version.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

namespace {

bool parse_dims(const std::string& arg, std::size_t& m, std::size_t& n)
{
    const auto x = arg.find('x');
    if (x == std::string::npos)
        return false;
    try {
        const long long mm = relplan::text::parse_int(arg.substr(0, x));
        const long long nn = relplan::text::parse_int(arg.substr(x + 1));
        if (mm < 1 || nn < 1)
            return false;
        m = static_cast<std::size_t>(mm);
        n = static_cast<std::size_t>(nn);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

} // namespace

int main(int argc, char** argv)
{
    using namespace relplan;

    CLI::App app{"relplan - scenario-driven release planning for systems of systems"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    cli::GlobalOptions global;
    std::string project = ".";
    std::uint64_t seed = 0;
    std::string output;
    app.add_option("-p,--project", project, "project directory (contains relplan.conf)");
    auto* seed_opt = app.add_option("-s,--seed", seed, "seed for stochastic operations");
    auto* output_opt = app.add_option("-o,--output", output, "override the output directory");

    auto* validate = app.add_subcommand("validate", "parse and check features and scenario specs");

    bool force = false;
    auto* gen_steps = app.add_subcommand("gen-steps", "generate .steps skeletons from features");
    gen_steps->add_flag("--force", force, "overwrite changed .steps files");

    cli::TestOptions test_opts;
    std::string report_path;
    int budget = 0;
    auto* test = app.add_subcommand("test", "execute usage scenarios against scenario programs");
    auto* report_opt = test->add_option("--report", report_path, "path for the JSON report");
    auto* budget_opt = test->add_option("--budget", budget, "engine selections per scenario");

    bool allow_failing = false;
    auto* estimate =
        app.add_subcommand("estimate", "derive the value matrix and cost vector (instance CSV)");
    estimate->add_flag("--allow-failing", allow_failing, "estimate despite failing tests");

    cli::SearchOptions search_opts;
    std::string instance_path;
    std::string random_dims;
    auto* search = app.add_subcommand("search", "search release candidates (Pareto front)");
    auto* instance_opt =
        search->add_option("--instance", instance_path, "instance CSV (instead of the project)");
    search->add_flag("--exact", search_opts.exact,
                     "also compute the exhaustive front (n <= 20) and compare");
    auto* random_opt = search->add_option(
        "--random-instance", random_dims,
        "generate a seeded random instance MxN (e.g. 10x40) and search it");

    auto* report = app.add_subcommand("report", "summarize the pipeline artifacts");

    // let the global --project/--seed/--output flags appear after the
    // subcommand as well
    for (auto* sub : {validate, gen_steps, test, estimate, search, report})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kExitUsage;
    }

    global.project = project;
    if (*seed_opt)
        global.seed = seed;
    if (*output_opt)
        global.output = output;

    try {
        if (*validate)
            return cli::cmd_validate(global, std::cout, std::cerr);
        if (*gen_steps)
            return cli::cmd_gen_steps(global, force, std::cout, std::cerr);
        if (*test) {
            if (*report_opt)
                test_opts.report_path = report_path;
            if (*budget_opt)
                test_opts.budget = budget;
            return cli::cmd_test(global, test_opts, std::cout, std::cerr);
        }
        if (*estimate)
            return cli::cmd_estimate(global, allow_failing, std::cout, std::cerr);
        if (*search) {
            if (*instance_opt)
                search_opts.instance_path = instance_path;
            if (*random_opt) {
                std::size_t m = 0;
                std::size_t n = 0;
                if (!parse_dims(random_dims, m, n)) {
                    std::cerr << "error: --random-instance expects MxN, e.g. 10x40\n";
                    return cli::kExitUsage;
                }
                if (*instance_opt) {
                    std::cerr << "error: --instance and --random-instance are exclusive\n";
                    return cli::kExitUsage;
                }
                search_opts.random_dims = {m, n};
            }
            return cli::cmd_search(global, search_opts, std::cout, std::cerr);
        }
        if (*report)
            return cli::cmd_report(global, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kExitUsage;
    }
    return cli::kExitUsage;
}
