#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "scriptgrove/text.hpp"

namespace scriptgrove {

enum class EditKind { Insert, Delete };

std::string_view to_string(EditKind kind);

/// One timestamped keystroke-level change.
///
/// `offset` is a 0-based POI index counted in Unicode scalar values. For a
/// delete it is the index of the first removed character, so the removal
/// bundles POIs offset..offset+length. Position labels that start at 1 (as
/// in hand-drawn traces where "position 2" follows the first character) map
/// to `offset = label - 1`.
struct AtomicEdit {
    Timestamp time = 0;
    EditKind kind = EditKind::Insert;
    std::size_t offset = 0;
    Text text;               // insert only, non-empty
    std::size_t length = 0;  // delete only, >= 1

    // Characters added (insert) or removed (delete).
    std::size_t size() const { return kind == EditKind::Insert ? text.size() : length; }

    static AtomicEdit insert(Timestamp t, std::size_t offset, Text text)
    {
        return {t, EditKind::Insert, offset, std::move(text), 0};
    }
    static AtomicEdit erase(Timestamp t, std::size_t offset, std::size_t length)
    {
        return {t, EditKind::Delete, offset, {}, length};
    }

    friend bool operator==(const AtomicEdit&, const AtomicEdit&) = default;
};

struct EditLog {
    std::string doc_id;
    Timestamp created_at = 0;
    std::vector<AtomicEdit> edits;

    friend bool operator==(const EditLog&, const EditLog&) = default;
};

// Parse failures abort with position info. `line` is 1-based in the input.

class LogError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MalformedLine : public LogError {
public:
    MalformedLine(std::size_t line, const std::string& reason);
    std::size_t line;
};

class OutOfBoundsEdit : public LogError {
public:
    OutOfBoundsEdit(std::size_t index, std::size_t line, std::size_t offset,
                    std::size_t length, std::size_t doc_len);
    std::size_t index;
    std::size_t line;
    std::size_t offset;
    std::size_t length;
    std::size_t doc_len;
};

class NonMonotonicTimestamp : public LogError {
public:
    NonMonotonicTimestamp(std::size_t index, std::size_t line, Timestamp time, Timestamp previous);
    std::size_t index;
    std::size_t line;
};

/// Reads the JSONL edit-log format: a header object then one edit object
/// per line. Blank lines are ignored. Every edit is checked by replaying it
/// against the running document length.
EditLog parse_log(std::string_view input);
EditLog parse_log(std::istream& in);

/// Throws the same errors as parse_log for a log built in memory.
void validate_log(const EditLog& log);

/// Canonical JSONL: header first, fields in documented order, one object
/// per line, trailing newline.
std::string serialize_log(const EditLog& log);

/// Applies edits with time <= upto (all when absent) by direct splicing.
/// This is the reference every other reconstruction path is checked against.
Text replay_naive(const EditLog& log, std::optional<Timestamp> upto = std::nullopt);

/// Document length after each prefix, without building the text.
std::size_t replayed_length(const EditLog& log, std::optional<Timestamp> upto = std::nullopt);

struct GeneratorConfig {
    std::uint64_t seed = 0;
    std::size_t ops = 0;
    double typo_rate = 0.0;
};

struct GeneratedLog {
    EditLog log;
    // Typed words whose tail was backspaced and retyped.
    std::size_t typo_patterns = 0;
};

/// Deterministic synthetic keystroke log. Identical configs give identical
/// logs on every platform.
GeneratedLog generate_log(const GeneratorConfig& config);

inline EditLog generate_random_log(std::uint64_t seed, std::size_t ops, double typo_rate)
{
    return generate_log({seed, ops, typo_rate}).log;
}

} // namespace scriptgrove
