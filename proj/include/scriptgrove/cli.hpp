#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scriptgrove::cli {

/// Every default the command line uses, in one place.
struct Defaults {
    static constexpr double phototropism = 0.3;
    static constexpr double unit_arc_len = 2.0;   // px per character
    static constexpr double base_radius = 12.0;   // px
    static constexpr int depth = 1;
    static constexpr const char* timezone = "UTC";
    static constexpr long long frame_interval_ms = 60'000;
    static constexpr int width = 800;
    static constexpr int height = 800;
    static constexpr double margin = 20.0;
    static constexpr const char* background = "#ffffff";
    static constexpr unsigned long long seed = 0;
    static constexpr std::size_t ops = 200;
    static constexpr double typo_rate = 0.2;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kPaletteEnv = "SCRIPTGROVE_PALETTE";

/// Runs one subcommand. `args` excludes the program name. "-" stands for
/// `in`/`out` wherever a path is expected.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace scriptgrove::cli
