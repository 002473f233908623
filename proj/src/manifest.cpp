#include "relplan/manifest.hpp"

#include "relplan/version.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace relplan::cli {

std::string sha256_hex(std::string_view bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0x0F];
    }
    return out;
}

std::string sha256_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

std::string iso8601_utc_now()
{
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string RunManifest::to_json() const
{
    nlohmann::json j;
    j["command"] = command;
    j["tool_version"] = tool_version.empty() ? std::string(kVersion) : tool_version;
    if (seed)
        j["seed"] = *seed;
    else
        j["seed"] = nullptr;
    j["timestamp"] = timestamp;
    j["inputs"] = nlohmann::json::array();
    for (const auto& input : inputs)
        j["inputs"].push_back({{"path", input.path}, {"sha256", input.sha256}});
    j["outputs"] = outputs;
    return j.dump(2) + "\n";
}

void atomic_write(const std::filesystem::path& path, std::string_view content)
{
    namespace fs = std::filesystem;
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest)
{
    atomic_write(path, manifest.to_json());
}

} // namespace relplan::cli
