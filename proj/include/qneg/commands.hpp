#pragma once

// Command bodies behind the qneg executable. Each returns the file content
// it would write, so the same code path is testable without a process.

#include <string>

#include "qneg/config.hpp"

namespace qneg {

enum class SweepAxis { W, S };
SweepAxis parse_axis(const std::string& name);

/// One record for the single state and single s in `config`.
std::string run_negativity(const RunConfig& config, OutputFormat format);

/// Table over w (fixed family, schedule from config) or over s (limit
/// estimates, or the fixed filter when one is configured).
std::string run_sweep(const RunConfig& config, SweepAxis axis, OutputFormat format);

/// Writes the quasiprobability grid of the configured state to `path` (binary
/// payload plus a `.hdr` text sidecar) and returns a one-line summary.
std::string run_export(const RunConfig& config, const std::string& path);

}  // namespace qneg
