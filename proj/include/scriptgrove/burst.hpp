#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "scriptgrove/editlog.hpp"

namespace scriptgrove {

/// A linear keystroke burst: consecutive edits with no cursor jump between
/// them, with immediately-corrected typing folded away.
///
/// An insert burst replays as inserting `text` at `anchor_offset`; a delete
/// burst replays as removing `length` characters starting at `anchor_offset`.
/// Both are relative to the document as it stood before the burst.
struct Burst {
    EditKind kind = EditKind::Insert;
    Timestamp start_time = 0;
    Timestamp end_time = 0;
    std::size_t anchor_offset = 0;
    Text text;
    std::size_t length = 0;
    std::size_t atomic_count = 0;

    friend bool operator==(const Burst&, const Burst&) = default;
};

struct CondenseOptions {
    // Close a burst when the gap between consecutive edits exceeds this
    // many milliseconds. Unset means bursts are purely positional.
    std::optional<Timestamp> idle_threshold_ms;
};

/// Grouping rules, applied edit by edit:
///  - a single-character insert at the cursor extends the open insert burst;
///  - a delete that removes a suffix of the open insert burst's text folds
///    into it (the typed characters vanish from the burst);
///  - a delete ending or starting at the open delete burst's POI extends it
///    (held backspace / held delete);
///  - anything else closes the open burst. A multi-character insert (paste)
///    always opens a new burst.
/// Insert bursts whose text was folded away entirely are dropped.
std::vector<Burst> condense(const EditLog& log, const CondenseOptions& options = {});

/// Each edit as its own burst, for building the graph at keystroke grain.
std::vector<Burst> bursts_from_edits(const EditLog& log);

Text replay_bursts(std::span<const Burst> bursts);

} // namespace scriptgrove
