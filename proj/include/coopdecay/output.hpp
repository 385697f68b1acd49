#ifndef COOPDECAY_OUTPUT_HPP
#define COOPDECAY_OUTPUT_HPP

#include <string>

#include "coopdecay/config.hpp"

namespace coopdecay {

inline constexpr const char* kArtifactVersion = "1.0.0";

/// Writes content to path via a temp file + rename (atomic on POSIX).
void write_file_atomic(const std::string& path, const std::string& content);

std::string format_double(double x);  // %.17g, round-trip exact

std::string timeseries_csv(const TimeSeries& series);
std::string spectrum_csv(const Spectrum& spectrum);

struct RunStats {
    long solver_iterations = 0;
    long rhs_evaluations = 0;
    double wall_seconds = 0.0;
    std::size_t records = 0;
};

std::string run_meta_json(const RunConfig& config, const RunStats& stats);

}  // namespace coopdecay

#endif
