#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "slmsrl1/config.hpp"
#include "slmsrl1/harness.hpp"
#include "slmsrl1/metrics.hpp"

namespace slmsrl1 {

struct NamedCurve {
    std::string label;
    const AggregateCurve* curve;
};

/// `iteration,<label>,...` header, then one row per iteration with mse_db
/// printed to 6 significant digits. Throws std::invalid_argument if the
/// curves differ in length.
void write_curves_csv(std::ostream& os, const std::vector<NamedCurve>& curves);

/// Selected lambda (or "none") followed by one row per sweep cell.
void write_selection(std::ostream& os, const SweepResult& result);

/// Writes `contents` to dir/name, creating dir. Throws std::runtime_error on I/O failure.
void write_file(const std::filesystem::path& dir, const std::string& name, const std::string& contents);

}  // namespace slmsrl1
