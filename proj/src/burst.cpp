#include "scriptgrove/burst.hpp"

namespace scriptgrove {

namespace {

class Condenser {
public:
    explicit Condenser(const CondenseOptions& options) : options_(options) {}

    void feed(const AtomicEdit& e)
    {
        if (open_ && options_.idle_threshold_ms && e.time - open_->end_time > *options_.idle_threshold_ms)
            close();
        if (open_ && try_extend(e)) {
            open_->end_time = e.time;
            ++open_->atomic_count;
            return;
        }
        close();
        start(e);
    }

    std::vector<Burst> finish()
    {
        close();
        return std::move(out_);
    }

private:
    bool try_extend(const AtomicEdit& e)
    {
        Burst& b = *open_;
        if (b.kind == EditKind::Insert) {
            // Invariant: cursor == anchor + text.size().
            if (e.kind == EditKind::Insert) {
                if (e.text.size() != 1 || e.offset != cursor_)
                    return false;
                b.text += e.text;
                ++cursor_;
                return true;
            }
            bool suffix = e.offset >= b.anchor_offset && e.offset + e.length == cursor_;
            if (!suffix)
                return false;
            b.text.resize(e.offset - b.anchor_offset);
            cursor_ = e.offset;
            return true;
        }
        if (e.kind != EditKind::Delete)
            return false;
        if (e.offset + e.length == b.anchor_offset) {
            b.anchor_offset = e.offset;
            b.length += e.length;
            return true;
        }
        if (e.offset == b.anchor_offset) {
            b.length += e.length;
            return true;
        }
        return false;
    }

    void start(const AtomicEdit& e)
    {
        Burst b;
        b.kind = e.kind;
        b.start_time = b.end_time = e.time;
        b.anchor_offset = e.offset;
        b.atomic_count = 1;
        if (e.kind == EditKind::Insert) {
            b.text = e.text;
            cursor_ = e.offset + e.text.size();
        } else {
            b.length = e.length;
            cursor_ = e.offset;
        }
        open_ = std::move(b);
    }

    void close()
    {
        if (!open_)
            return;
        if (open_->kind == EditKind::Delete || !open_->text.empty())
            out_.push_back(std::move(*open_));
        open_.reset();
    }

    CondenseOptions options_;
    std::optional<Burst> open_;
    std::size_t cursor_ = 0;
    std::vector<Burst> out_;
};

} // namespace

std::vector<Burst> condense(const EditLog& log, const CondenseOptions& options)
{
    Condenser c(options);
    for (const auto& e : log.edits)
        c.feed(e);
    return c.finish();
}

std::vector<Burst> bursts_from_edits(const EditLog& log)
{
    std::vector<Burst> out;
    out.reserve(log.edits.size());
    for (const auto& e : log.edits)
        out.push_back({e.kind, e.time, e.time, e.offset, e.text, e.length, 1});
    return out;
}

Text replay_bursts(std::span<const Burst> bursts)
{
    Text doc;
    for (const auto& b : bursts) {
        if (b.kind == EditKind::Insert)
            doc.insert(b.anchor_offset, b.text);
        else
            doc.erase(b.anchor_offset, b.length);
    }
    return doc;
}

} // namespace scriptgrove
