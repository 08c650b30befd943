#include "ot/trace.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace ot {

namespace {

void append_auction(std::vector<TraceRow>& rows, const AuctionTrace& trace, std::size_t n,
                    std::int64_t wall_offset) {
  auto unassigned = static_cast<std::int64_t>(n);
  for (const AuctionStep& s : trace.steps) {
    if (s.evicted == kUnassigned) --unassigned;
    rows.push_back({static_cast<std::int64_t>(rows.size()) + 1, static_cast<double>(unassigned),
                    trace.epsilon, wall_offset + s.wall_ns});
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<TraceRow> trace_rows(const AuctionTrace& trace, std::size_t n) {
  std::vector<TraceRow> rows;
  append_auction(rows, trace, n, 0);
  return rows;
}

std::vector<TraceRow> trace_rows(const ScaledAuctionResult& result, std::size_t n) {
  std::vector<TraceRow> rows;
  std::int64_t offset = 0;
  for (const AuctionTrace& run : result.runs) {
    append_auction(rows, run, n, offset);
    if (!rows.empty()) offset = rows.back().wall_ns;
  }
  return rows;
}

std::vector<TraceRow> trace_rows(const SinkhornLog& log) {
  std::vector<TraceRow> rows;
  rows.reserve(log.iterations.size());
  for (const SinkhornIteration& it : log.iterations)
    rows.push_back({it.iter, std::max(it.row_residual, it.col_residual), it.osc_update, it.wall_ns});
  return rows;
}

std::vector<TraceRow> trace_rows(const OPTrace& trace) {
  std::vector<TraceRow> rows;
  rows.reserve(trace.steps.size());
  for (const OPStep& s : trace.steps) rows.push_back({s.iter, s.residual_inf, s.t, s.wall_ns});
  return rows;
}

std::vector<TraceRow> trace_rows(const NewtonTrace& trace) {
  std::vector<TraceRow> rows;
  rows.reserve(trace.steps.size());
  for (const NewtonStep& s : trace.steps)
    rows.push_back({s.iter, s.residual_after, s.step, s.wall_ns});
  return rows;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows, bool timing) {
  out << "iter,residual_inf,step_or_eps,wall_ns\n";
  for (const TraceRow& r : rows) {
    out << r.iter << ',' << format_double(r.residual_inf) << ',' << format_double(r.step_or_eps)
        << ',' << (timing ? r.wall_ns : 0) << '\n';
  }
}

std::string trace_csv(const std::vector<TraceRow>& rows, bool timing) {
  std::ostringstream os;
  write_trace_csv(os, rows, timing);
  return os.str();
}

}  // namespace ot
