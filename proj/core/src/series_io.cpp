#include "polya/series_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "polya/error.hpp"
#include "polya/format.hpp"

namespace polya {
namespace {

// Strategy labels are plain tokens, but quote anything that would break a
// CSV row.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::vector<std::string> split_csv_row(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        fields.back() += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

template <typename T>
T parse_number(const std::string& s, std::size_t line) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError("line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

// Collects rows into series in order of first appearance.
class SeriesBuilder {
 public:
  void add(const std::string& strategy, std::size_t time, double mean,
           double se, std::size_t trials) {
    auto [it, inserted] = index_.try_emplace(strategy, out_.size());
    if (inserted) {
      out_.push_back({strategy, trials, {}, {}});
    }
    auto& s = out_[it->second];
    if (time != s.mean.size() + 1) {
      throw ParseError("series '" + strategy + "': expected time " +
                       std::to_string(s.mean.size() + 1) + ", got " +
                       std::to_string(time));
    }
    s.mean.push_back(mean);
    s.stderr_.push_back(se);
  }
  std::vector<SummarySeries> take() { return std::move(out_); }

 private:
  std::map<std::string, std::size_t> index_;
  std::vector<SummarySeries> out_;
};

}  // namespace

OutputFormat parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::kCsv;
  if (text == "json") return OutputFormat::kJson;
  throw Error("unknown output format '" + std::string(text) +
              "' (expected csv or json)");
}

void emit(std::span<const SummarySeries> series, OutputFormat format,
          std::ostream& os) {
  if (format == OutputFormat::kCsv) {
    os << "time,strategy,mean_infection,stderr,trials\n";
    for (const auto& s : series) {
      const std::string name = csv_field(s.strategy);
      for (std::size_t t = 0; t < s.mean.size(); ++t) {
        os << t + 1 << ',' << name << ',' << format_double(s.mean[t]) << ','
           << format_double(s.stderr_[t]) << ',' << s.trials << '\n';
      }
    }
    return;
  }
  // nlohmann's default float output is already shortest round-trip.
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& s : series) {
    for (std::size_t t = 0; t < s.mean.size(); ++t) {
      nlohmann::ordered_json row;
      row["time"] = t + 1;
      row["strategy"] = s.strategy;
      row["mean_infection"] = s.mean[t];
      row["stderr"] = s.stderr_[t];
      row["trials"] = s.trials;
      rows.push_back(std::move(row));
    }
  }
  os << rows.dump(2) << '\n';
}

void emit(std::span<const SummarySeries> series, OutputFormat format,
          const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path.string() + "' for writing");
  emit(series, format, os);
}

std::vector<SummarySeries> parse_series_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  SeriesBuilder builder;
  bool header = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto f = split_csv_row(line);
    if (header) {
      header = false;
      if (f.size() != 5 || f[0] != "time") {
        throw ParseError("unexpected header in series CSV");
      }
      continue;
    }
    if (f.size() != 5) {
      throw ParseError("line " + std::to_string(lineno) + ": expected 5 fields");
    }
    builder.add(f[1], parse_number<std::size_t>(f[0], lineno),
                parse_number<double>(f[2], lineno),
                parse_number<double>(f[3], lineno),
                parse_number<std::size_t>(f[4], lineno));
  }
  return builder.take();
}

std::vector<SummarySeries> parse_series_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("series JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("series JSON must be an array");
  SeriesBuilder builder;
  try {
    for (const auto& row : doc) {
      builder.add(row.at("strategy").get<std::string>(),
                  row.at("time").get<std::size_t>(),
                  row.at("mean_infection").get<double>(),
                  row.at("stderr").get<double>(),
                  row.at("trials").get<std::size_t>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("series JSON: ") + e.what());
  }
  return builder.take();
}

void emit_differences_csv(const Comparison& comparison, std::ostream& os) {
  os << "time,first,second,difference,pooled_stderr,paired_stderr,z\n";
  for (const auto& d : comparison.differences) {
    const auto a = csv_field(comparison.arms[d.first].series.strategy);
    const auto b = csv_field(comparison.arms[d.second].series.strategy);
    for (std::size_t t = 0; t < d.difference.size(); ++t) {
      os << t + 1 << ',' << a << ',' << b << ',' << format_double(d.difference[t])
         << ',' << format_double(d.pooled_stderr[t]) << ','
         << format_double(d.paired_stderr[t]) << ',' << format_double(d.z[t])
         << '\n';
    }
  }
}

}  // namespace polya
