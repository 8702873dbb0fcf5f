#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace bzwave::cli {

/// Usage or parse failure (exit code 2).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Every setting a command can take; absent means "use the flag or default".
/// The JSON document mirrors the flags:
///   params.{r,b,h}, c, super, sweep, front_file,
///   grid.{min,max,points}, iter.{tol,max_iter,B},
///   sim.{length,dx,dt,t_end,ic,track_level,transient_cut}, output.{path,format}
struct RunConfig {
    std::optional<double> r, b, h, c;
    std::optional<std::string> super_kind, sweep, front_file;
    std::optional<double> grid_min, grid_max;
    std::optional<long> grid_points;
    std::optional<double> tol, B;
    std::optional<long> max_iter;
    std::optional<double> length, dx, dt, t_end, track_level, transient_cut;
    std::optional<std::string> ic;
    std::optional<std::string> out, format;
};

/// Parses a JSON config. Throws UsageError naming the offending key for
/// unknown keys, wrong types, or malformed JSON.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Fields set in `flags` win over those in `file`.
RunConfig merge(const RunConfig& flags, const RunConfig& file);

}  // namespace bzwave::cli
