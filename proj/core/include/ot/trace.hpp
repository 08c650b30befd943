#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ot/auction.hpp"
#include "ot/semidiscrete.hpp"
#include "ot/sinkhorn.hpp"

namespace ot {

/// One line of a solver trace in the common CSV layout
///   iter,residual_inf,step_or_eps,wall_ns
struct TraceRow {
  std::int64_t iter = 0;
  double residual_inf = 0.0;
  double step_or_eps = 0.0;
  std::int64_t wall_ns = 0;
};

/// Auction: residual is the number of unassigned sources after the bid,
/// step_or_eps the epsilon of the run.
std::vector<TraceRow> trace_rows(const AuctionTrace& trace, std::size_t n);
/// All runs back to back, iteration numbers continue across runs.
std::vector<TraceRow> trace_rows(const ScaledAuctionResult& result, std::size_t n);
/// Sinkhorn: larger of the two marginal residuals, osc-norm of the update.
std::vector<TraceRow> trace_rows(const SinkhornLog& log);
/// Oliker-Prussner: ||G - nu||_inf after the step, decrement t.
std::vector<TraceRow> trace_rows(const OPTrace& trace);
/// Newton: residual after the step, accepted step length.
std::vector<TraceRow> trace_rows(const NewtonTrace& trace);

/// Header plus one line per row. Doubles use 17 significant digits; wall_ns
/// is written as 0 unless `timing` is set, so equal runs give equal bytes.
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows, bool timing);
std::string trace_csv(const std::vector<TraceRow>& rows, bool timing);

}  // namespace ot
