#include <algorithm>
#include <array>
#include <random>

#include "scriptgrove/editlog.hpp"

namespace scriptgrove {

namespace {

// std distributions are implementation-defined; these draws are not.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    bool chance(double p) { return unit() < p; }

private:
    std::mt19937_64 engine_;
};

constexpr Timestamp kBaseCreatedAt = 1'600'000'000'000;  // 2020-09-13T12:26:40Z
constexpr Timestamp kHour = 3'600'000;

constexpr std::array<char32_t, 8> kRareChars = {U'é', U'ß', U'ñ', U'ü', U'…', U'“', U'”', U'λ'};

class Writer {
public:
    Writer(const GeneratorConfig& config)
        : rng_(config.seed * 0x9E3779B97F4A7C15ull + 0x632BE59BD9B4E019ull), budget_(config.ops),
          typo_rate_(config.typo_rate)
    {
        result_.log.doc_id = "gen-" + std::to_string(config.seed);
        result_.log.created_at = kBaseCreatedAt;
        time_ = kBaseCreatedAt;
    }

    GeneratedLog run()
    {
        while (remaining() > 0)
            step();
        return std::move(result_);
    }

private:
    std::size_t remaining() const { return budget_ - result_.log.edits.size(); }

    void tick(Timestamp lo, Timestamp hi) { time_ += static_cast<Timestamp>(rng_.between(lo, hi)); }

    char32_t random_char()
    {
        auto r = rng_.below(100);
        if (r < 15)
            return U' ';
        if (r < 17)
            return U'\n';
        if (r < 19)
            return kRareChars[rng_.below(kRareChars.size())];
        if (r < 22)
            return U'.';
        return static_cast<char32_t>(U'a' + rng_.below(26));
    }

    bool emit_insert(Text text)
    {
        if (remaining() == 0)
            return false;
        tick(60, 450);
        auto n = text.size();
        result_.log.edits.push_back(AtomicEdit::insert(time_, cursor_, text));
        doc_.insert(cursor_, text);
        cursor_ += n;
        return true;
    }

    // Removes [offset, offset + length) and parks the cursor at offset.
    bool emit_delete(std::size_t offset, std::size_t length)
    {
        if (remaining() == 0 || length == 0)
            return false;
        tick(60, 450);
        result_.log.edits.push_back(AtomicEdit::erase(time_, offset, length));
        doc_.erase(offset, length);
        cursor_ = offset;
        return true;
    }

    void type_word()
    {
        auto k = rng_.between(1, 8);
        for (std::uint64_t i = 0; i < k; ++i) {
            if (!emit_insert(Text(1, random_char())))
                return;
        }
        if (typo_rate_ > 0.0 && rng_.chance(typo_rate_)) {
            auto undo = rng_.between(1, std::min<std::uint64_t>(3, k));
            std::uint64_t undone = 0;
            for (; undone < undo; ++undone) {
                if (!emit_delete(cursor_ - 1, 1))
                    break;
            }
            if (undone > 0)
                ++result_.typo_patterns;
            for (std::uint64_t i = 0; i < undone; ++i) {
                if (!emit_insert(Text(1, random_char())))
                    return;
            }
        }
    }

    void paste()
    {
        Text chunk;
        auto k = rng_.between(5, 30);
        for (std::uint64_t i = 0; i < k; ++i)
            chunk.push_back(random_char());
        emit_insert(std::move(chunk));
    }

    void backspace_run()
    {
        auto k = rng_.between(1, std::min<std::uint64_t>(5, cursor_));
        for (std::uint64_t i = 0; i < k; ++i) {
            if (!emit_delete(cursor_ - 1, 1))
                return;
        }
    }

    void select_delete()
    {
        auto len = doc_.size();
        auto m = rng_.between(1, std::min<std::uint64_t>(12, len));
        auto start = rng_.below(len - m + 1);
        emit_delete(start, m);
    }

    void step()
    {
        // Rare long gaps produce several writing sessions (calendar days).
        if (rng_.chance(0.01))
            tick(6 * kHour, 30 * kHour);
        else
            tick(0, 1500);

        if (doc_.empty()) {
            cursor_ = 0;
            type_word();
            return;
        }
        auto r = rng_.below(100);
        if (r < 15) {
            cursor_ = rng_.below(doc_.size() + 1);
        } else if (r < 70) {
            type_word();
        } else if (r < 75) {
            paste();
        } else if (r < 87) {
            if (cursor_ > 0)
                backspace_run();
        } else {
            select_delete();
        }
    }

    Rng rng_;
    std::size_t budget_;
    double typo_rate_;
    GeneratedLog result_;
    Text doc_;
    std::size_t cursor_ = 0;
    Timestamp time_;
};

} // namespace

GeneratedLog generate_log(const GeneratorConfig& config)
{
    double rate = std::clamp(config.typo_rate, 0.0, 1.0);
    return Writer({config.seed, config.ops, rate}).run();
}

} // namespace scriptgrove
