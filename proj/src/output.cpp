#include "slmsrl1/output.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace slmsrl1 {
namespace {

std::string g6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

void write_curves_csv(std::ostream& os, const std::vector<NamedCurve>& curves) {
    const std::size_t length = curves.empty() ? 0 : curves.front().curve->mse_db.size();
    os << "iteration";
    for (const NamedCurve& c : curves) {
        if (c.curve->mse_db.size() != length) throw std::invalid_argument("write_curves_csv: length mismatch");
        os << ',' << c.label;
    }
    os << '\n';
    std::string row;
    for (std::size_t n = 0; n < length; ++n) {
        row = std::to_string(n);
        for (const NamedCurve& c : curves) {
            row += ',';
            row += g6(c.curve->mse_db[n]);
        }
        row += '\n';
        os << row;
    }
}

void write_selection(std::ostream& os, const SweepResult& result) {
    os << "selected_lambda " << (result.selected_lambda ? g6(*result.selected_lambda) : "none") << '\n';
    os << "lambda,k,steady_state_db,initial_db,final_db,runs_used,diverged_runs,verdict\n";
    for (const SweepCell& c : result.cells) {
        const auto& db = c.curve.mse_db;
        os << g6(c.lambda) << ',' << c.k << ',' << g6(c.steady_state_db) << ',' << g6(db.front()) << ','
           << g6(db.back()) << ',' << c.curve.runs_used << ',' << c.curve.diverged_runs << ','
           << (c.stable ? "stable" : "unstable") << '\n';
    }
}

void write_file(const std::filesystem::path& dir, const std::string& name, const std::string& contents) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
    const auto path = dir / name;
    std::ofstream f(path, std::ios::binary);
    f << contents;
    if (!f) throw std::runtime_error("cannot write " + path.string());
}

}  // namespace slmsrl1
