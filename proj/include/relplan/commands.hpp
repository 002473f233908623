#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <utility>

namespace relplan::cli {

// Exit code contract: 0 success, 1 domain failure (validation, failing
// tests, dominated data), 2 usage or environment failure (bad config,
// missing files/directories).
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

struct GlobalOptions {
    std::filesystem::path project = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> output; // overrides the configured output dir
};

struct TestOptions {
    std::optional<std::filesystem::path> report_path;
    std::optional<int> budget;
};

struct SearchOptions {
    std::optional<std::filesystem::path> instance_path;
    bool exact = false;
    /// (stakeholders, features): generate a random instance instead of
    /// reading one, write it next to the front files, then search it.
    std::optional<std::pair<std::size_t, std::size_t>> random_dims;
};

int cmd_validate(const GlobalOptions& opts, std::ostream& out, std::ostream& err);
int cmd_gen_steps(const GlobalOptions& opts, bool force, std::ostream& out, std::ostream& err);
int cmd_test(const GlobalOptions& opts, const TestOptions& test_opts, std::ostream& out,
             std::ostream& err);
int cmd_estimate(const GlobalOptions& opts, bool allow_failing, std::ostream& out,
                 std::ostream& err);
int cmd_search(const GlobalOptions& opts, const SearchOptions& search_opts, std::ostream& out,
               std::ostream& err);
int cmd_report(const GlobalOptions& opts, std::ostream& out, std::ostream& err);

} // namespace relplan::cli
