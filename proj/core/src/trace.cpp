#include "polya/trace.hpp"

#include <ostream>

#include "polya/format.hpp"

namespace polya {

void TraceRecorder::record(const UrnState& state) {
  const auto z = state.last_draws();
  SummaryRow sum{state.time(), 0.0, 0.0, 0.0};
  for (NodeId i = 0; i < state.size(); ++i) {
    NodeRow row{state.time(), i, z.empty() ? 0 : int(z[i]),
                state.urn_proportion(i), state.exposure(i)};
    sum.susceptibility += row.u;
    sum.exposure += row.s;
    sum.fraction_infected += row.z;
    rows_.push_back(row);
  }
  const double n = static_cast<double>(state.size());
  sum.susceptibility /= n;
  sum.exposure /= n;
  sum.fraction_infected /= n;
  summary_.push_back(sum);
}

void TraceRecorder::write_csv(std::ostream& os) const {
  os << "time,node,Z,U,S\n";
  for (const auto& r : rows_) {
    os << r.time << ',' << r.node + 1 << ',' << r.z << ',' << format_double(r.u)
       << ',' << format_double(r.s) << '\n';
  }
}

void TraceRecorder::write_summary_csv(std::ostream& os) const {
  os << "time,susceptibility,exposure,fraction_infected\n";
  for (const auto& r : summary_) {
    os << r.time << ',' << format_double(r.susceptibility) << ','
       << format_double(r.exposure) << ',' << format_double(r.fraction_infected)
       << '\n';
  }
}

}  // namespace polya
