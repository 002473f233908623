#include "relplan/project_config.hpp"

#include "relplan/errors.hpp"
#include "relplan/text.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace relplan::cli {

namespace {

std::string read_file_or_throw(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double config_double(const std::string& key, const std::string& value, int line)
{
    try {
        return text::parse_double(value);
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": value of '" + key +
                          "' is not a number: '" + value + "'");
    }
}

long long config_int(const std::string& key, const std::string& value, int line)
{
    try {
        return text::parse_int(value);
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": value of '" + key +
                          "' is not an integer: '" + value + "'");
    }
}

} // namespace

ProjectConfig load_project_config(const std::filesystem::path& root)
{
    namespace fs = std::filesystem;
    const fs::path config_path = root / kConfigFileName;
    if (!fs::exists(root))
        throw ConfigError("project directory does not exist: " + root.string());
    if (!fs::exists(config_path))
        throw ConfigError("missing " + std::string(kConfigFileName) + " in " + root.string());

    ProjectConfig cfg;
    cfg.root = root;
    std::string features = "features";
    std::string scenarios = "scenarios";
    std::string bindings = "bindings";
    std::string output = "out";

    std::string section;
    const std::vector<std::string> lines = text::split_lines(read_file_or_throw(config_path));
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const int line_no = static_cast<int>(i) + 1;
        std::string_view line = text::trim(lines[i]);
        if (line.empty() || line.front() == '#')
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
            section = std::string(line.substr(1, line.size() - 2));
            static const std::set<std::string> known = {"project",    "paths",  "stakeholders",
                                                        "estimation", "search", "test",
                                                        "overrides"};
            if (!known.contains(section))
                throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" +
                                  section + "]");
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key(text::trim(line.substr(0, eq)));
        const std::string value(text::trim(line.substr(eq + 1)));
        if (key.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key");

        if (section == "project") {
            if (key == "name")
                cfg.name = value;
            else
                throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key +
                                  "' in [project]");
        } else if (section == "paths") {
            if (key == "features")
                features = value;
            else if (key == "scenarios")
                scenarios = value;
            else if (key == "bindings")
                bindings = value;
            else if (key == "output")
                output = value;
            else
                throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key +
                                  "' in [paths]");
        } else if (section == "stakeholders") {
            // id = weight[, display name]
            if (!text::is_slug(key))
                throw ConfigError("line " + std::to_string(line_no) + ": stakeholder id '" + key +
                                  "' must match [a-z0-9_-]+");
            for (const auto& s : cfg.stakeholders) {
                if (s.id == key)
                    throw ConfigError("line " + std::to_string(line_no) +
                                      ": duplicate stakeholder '" + key + "'");
            }
            feature_model::Stakeholder s;
            s.id = key;
            const std::size_t comma = value.find(',');
            if (comma == std::string::npos) {
                s.weight = config_double(key, value, line_no);
                s.display_name = key;
            } else {
                s.weight = config_double(key, value.substr(0, comma), line_no);
                s.display_name = std::string(text::trim(value.substr(comma + 1)));
                if (s.display_name.empty())
                    s.display_name = key;
            }
            cfg.stakeholders.push_back(std::move(s));
        } else if (section == "estimation") {
            if (key == "alpha")
                cfg.estimation.alpha = config_double(key, value, line_no);
            else if (key == "beta")
                cfg.estimation.beta = config_double(key, value, line_no);
            else if (key == "gamma")
                cfg.estimation.gamma = config_double(key, value, line_no);
            else if (key == "value_unit")
                cfg.estimation.value_unit = config_double(key, value, line_no);
            else
                throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key +
                                  "' in [estimation]");
        } else if (section == "search") {
            if (key == "population")
                cfg.search.population = static_cast<int>(config_int(key, value, line_no));
            else if (key == "generations")
                cfg.search.generations = static_cast<int>(config_int(key, value, line_no));
            else if (key == "crossover_rate")
                cfg.search.crossover_rate = config_double(key, value, line_no);
            else if (key == "mutation_rate")
                cfg.search.mutation_rate = config_double(key, value, line_no);
            else if (key == "seed")
                cfg.search.seed = static_cast<std::uint64_t>(config_int(key, value, line_no));
            else
                throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key +
                                  "' in [search]");
        } else if (section == "test") {
            if (key == "budget")
                cfg.test_budget = static_cast<int>(config_int(key, value, line_no));
            else
                throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key +
                                  "' in [test]");
        } else if (section == "overrides") {
            // cost:<feature> = c  |  value:<feature>:<stakeholder> = v
            const std::vector<std::string> parts = text::split(key, ':');
            if (parts.size() == 2 && parts[0] == "cost") {
                cfg.estimation.cost_overrides[parts[1]] = config_double(key, value, line_no);
            } else if (parts.size() == 3 && parts[0] == "value") {
                cfg.estimation.value_overrides[{parts[1], parts[2]}] =
                    config_double(key, value, line_no);
            } else {
                throw ConfigError("line " + std::to_string(line_no) + ": override key must be " +
                                  "'cost:<feature>' or 'value:<feature>:<stakeholder>'");
            }
        } else {
            throw ConfigError("line " + std::to_string(line_no) +
                              ": key outside of any [section]");
        }
    }

    if (cfg.stakeholders.empty())
        throw ConfigError("no [stakeholders] defined in " + config_path.string());
    if (cfg.name.empty())
        cfg.name = root.filename().string();
    if (cfg.test_budget <= 0)
        throw ConfigError("[test] budget must be positive");

    cfg.features_dir = root / features;
    cfg.scenarios_dir = root / scenarios;
    cfg.bindings_dir = root / bindings;
    cfg.output_dir = root / output;

    try {
        cfg.estimation.validate();
        cfg.search.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
    return cfg;
}

} // namespace relplan::cli
