#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace scriptgrove {

/// Milliseconds since the Unix epoch.
using Timestamp = std::int64_t;

/// Document text is held as Unicode scalar values so offsets are character
/// positions, never byte positions.
using Text = std::u32string;
using TextView = std::u32string_view;

// Throws std::invalid_argument on ill-formed UTF-8 (overlongs, surrogates,
// truncated sequences).
Text utf8_to_text(std::string_view utf8);
std::string text_to_utf8(TextView text);

bool is_whitespace(char32_t c);

// Maximal runs of non-whitespace scalar values.
std::size_t count_words(TextView text);

} // namespace scriptgrove
