#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "polya/urn_state.hpp"

namespace polya {

/// Records a single trial for CSV export: one row per (time, node) with the
/// draw and the post-draw U and S, plus one summary row per time.
class TraceRecorder {
 public:
  struct NodeRow {
    std::size_t time;
    NodeId node;
    int z;
    double u;
    double s;
  };
  struct SummaryRow {
    std::size_t time;
    double susceptibility;
    double exposure;
    double fraction_infected;
  };

  // Call after each UrnState::step.
  void record(const UrnState& state);

  const std::vector<NodeRow>& rows() const noexcept { return rows_; }
  const std::vector<SummaryRow>& summary() const noexcept { return summary_; }

  // Columns: time,node,Z,U,S (node 1-based).
  void write_csv(std::ostream& os) const;
  // Columns: time,susceptibility,exposure,fraction_infected.
  void write_summary_csv(std::ostream& os) const;

 private:
  std::vector<NodeRow> rows_;
  std::vector<SummaryRow> summary_;
};

}  // namespace polya
