#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace relplan::text {

std::string_view trim(std::string_view s);
std::string_view trim_left(std::string_view s);

/// Splits on a single character; keeps empty fields.
std::vector<std::string> split(std::string_view s, char sep);

/// Splits into lines, accepting \n and \r\n endings; strips a UTF-8 BOM
/// from the first line.
std::vector<std::string> split_lines(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Collapses whitespace runs to single spaces and trims the ends.
std::string normalize_ws(std::string_view s);

/// Lowercased, alphanumerics kept, every other run replaced by one '-'.
std::string slugify(std::string_view s);

/// True iff s is a valid slug/identifier for project ids: [a-z0-9_-]+.
bool is_slug(std::string_view s);

/// Escapes ECMAScript regex metacharacters so the result matches s literally.
std::string escape_regex(std::string_view s);

/// Shortest round-trip decimal form (std::to_chars), locale-independent.
std::string format_double(double v);

/// Strict full-string parse; throws std::invalid_argument on trailing junk.
double parse_double(std::string_view s);
long long parse_int(std::string_view s);

} // namespace relplan::text
