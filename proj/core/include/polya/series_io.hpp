#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "polya/experiment.hpp"

namespace polya {

enum class OutputFormat { kCsv, kJson };

OutputFormat parse_output_format(std::string_view text);

// CSV columns: time,strategy,mean_infection,stderr,trials; rows ordered by
// series, then time. JSON is an array of objects with the same keys in the
// same order. Numbers are written in shortest round-trip form.
void emit(std::span<const SummarySeries> series, OutputFormat format,
          std::ostream& os);
void emit(std::span<const SummarySeries> series, OutputFormat format,
          const std::filesystem::path& path);

std::vector<SummarySeries> parse_series_csv(std::string_view text);
std::vector<SummarySeries> parse_series_json(std::string_view text);

// Columns: time,first,second,difference,pooled_stderr,paired_stderr,z.
void emit_differences_csv(const Comparison& comparison, std::ostream& os);

}  // namespace polya
