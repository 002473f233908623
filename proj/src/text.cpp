#include "relplan/text.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

namespace relplan::text {

namespace {

bool is_space(char c)
{
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

} // namespace

std::string_view trim(std::string_view s)
{
    while (!s.empty() && is_space(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && is_space(s.back()))
        s.remove_suffix(1);
    return s;
}

std::string_view trim_left(std::string_view s)
{
    while (!s.empty() && is_space(s.front()))
        s.remove_prefix(1);
    return s;
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::vector<std::string> split_lines(std::string_view s)
{
    if (s.starts_with("\xEF\xBB\xBF"))
        s.remove_prefix(3);
    std::vector<std::string> lines = split(s, '\n');
    for (auto& line : lines) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
    }
    // A trailing newline is not an extra line.
    if (!lines.empty() && lines.back().empty())
        lines.pop_back();
    return lines;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0)
            out += sep;
        out += parts[i];
    }
    return out;
}

std::string normalize_ws(std::string_view s)
{
    std::string out;
    bool in_ws = true; // swallow leading whitespace
    for (char c : s) {
        if (is_space(c)) {
            in_ws = true;
        } else {
            if (in_ws && !out.empty())
                out += ' ';
            out += c;
            in_ws = false;
        }
    }
    return out;
}

std::string slugify(std::string_view s)
{
    std::string out;
    bool pending_dash = false;
    for (char c : s) {
        unsigned char u = static_cast<unsigned char>(c);
        if (std::isalnum(u)) {
            if (pending_dash && !out.empty())
                out += '-';
            out += static_cast<char>(std::tolower(u));
            pending_dash = false;
        } else {
            pending_dash = true;
        }
    }
    return out;
}

bool is_slug(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s) {
        unsigned char u = static_cast<unsigned char>(c);
        if (!(std::islower(u) || std::isdigit(u) || c == '-' || c == '_'))
            return false;
    }
    return true;
}

std::string escape_regex(std::string_view s)
{
    static constexpr std::string_view kMeta = R"(\^$.|?*+()[]{})";
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (kMeta.find(c) != std::string_view::npos)
            out += '\\';
        out += c;
    }
    return out;
}

std::string format_double(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s)
{
    s = trim(s);
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    return v;
}

long long parse_int(std::string_view s)
{
    s = trim(s);
    long long v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    return v;
}

} // namespace relplan::text
