#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace relplan::cli {

/// Audit record of one pipeline run: which command, over which inputs (by
/// SHA-256 digest), with which seed, producing which outputs. Written
/// atomically next to the outputs after the command succeeds.
struct RunManifest {
    struct Input {
        std::string path;
        std::string sha256;
    };

    std::string command;
    std::string tool_version;
    std::optional<std::uint64_t> seed;
    std::string timestamp; // ISO-8601 UTC
    std::vector<Input> inputs;
    std::vector<std::string> outputs;

    std::string to_json() const;
};

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

std::string iso8601_utc_now();

/// Write-temp-then-rename; the target is never observed half-written.
void atomic_write(const std::filesystem::path& path, std::string_view content);

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

} // namespace relplan::cli
