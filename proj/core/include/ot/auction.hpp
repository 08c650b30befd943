#pragma once

#include <cstdint>
#include <vector>

#include "ot/measures.hpp"

namespace ot {

inline constexpr int kUnassigned = -1;

/// Injective map from a subset of sources to targets, with its inverse.
class PartialAssignment {
 public:
  PartialAssignment(Eigen::Index sources, Eigen::Index targets);

  /// Assigns x to y. Returns the source that previously owned y (or kUnassigned)
  /// and unassigns it.
  int assign(int x, int y);

  int target_of(int x) const { return assigned_[static_cast<std::size_t>(x)]; }
  int owner_of(int y) const { return owner_[static_cast<std::size_t>(y)]; }
  const std::vector<int>& assigned() const { return assigned_; }
  const std::vector<int>& owners() const { return owner_; }
  std::size_t size() const { return count_; }
  bool complete() const { return count_ == assigned_.size(); }

 private:
  std::vector<int> assigned_;
  std::vector<int> owner_;
  std::size_t count_ = 0;
};

struct Bid {
  int best = 0;
  /// Second best target; kUnassigned when |Y| = 1.
  int second = kUnassigned;
  /// (c(x,second) + psi(second)) - (c(x,best) + psi(best)) + epsilon, or
  /// epsilon alone when |Y| = 1.
  double raise = 0.0;
};

/// Best and second best objects of bidder x and the resulting price raise.
/// Ties resolve to the lowest index.
Bid bid(int x, const Potential& psi, const CostMatrix& c, double epsilon);

struct AuctionStep {
  int bidder = 0;
  int object = 0;
  double raise = 0.0;
  int evicted = kUnassigned;
  /// Time since the start of the run.
  std::int64_t wall_ns = 0;
};

struct AuctionTrace {
  double epsilon = 0.0;
  std::vector<AuctionStep> steps;
  /// Number of price raises per object.
  std::vector<std::int64_t> raise_counts;
};

struct AuctionOptions {
  /// Re-check epsilon-complementary slackness after every step; throws
  /// std::logic_error on violation.
  bool verify_each_step = false;
  /// Hard cap on the number of bids, 0 = unlimited.
  std::int64_t max_steps = 0;
};

struct AuctionResult {
  std::vector<int> sigma;
  Potential psi;
  AuctionTrace trace;
  bool completed = true;
};

/// Auction algorithm for the assignment problem (|X| = |Y|). The lowest-index
/// unassigned source bids first. Throws ParameterError for epsilon <= 0.
AuctionResult auction(const CostMatrix& c, double epsilon, const Potential& psi0,
                      const AuctionOptions& options = {});
AuctionResult auction(const CostMatrix& c, double epsilon);

struct ScaledAuctionResult {
  std::vector<int> sigma;
  Potential psi;
  /// One trace per unscaled run, in order of decreasing epsilon.
  std::vector<AuctionTrace> runs;
  /// Prices at the end of each run.
  std::vector<Potential> run_prices;

  double final_epsilon() const { return runs.empty() ? 0.0 : runs.back().epsilon; }
  std::int64_t total_steps() const;
};

/// Epsilon-scaling: runs auction with epsilon = C, C/2, ... (C = cost range),
/// warm-starting the prices, and stops after the first run with epsilon <= eta.
ScaledAuctionResult auction_scaled(const CostMatrix& c, double eta,
                                   const AuctionOptions& options = {});

struct CsReport {
  bool satisfied = true;
  /// max over assigned x of c(x,sigma(x)) + psi(sigma(x)) - min_y (c(x,y) + psi(y)).
  double worst_gap = 0.0;
};

/// Epsilon-complementary slackness of a (partial) assignment. Entries equal to
/// kUnassigned are outside the domain. `slack` absorbs rounding.
CsReport check_cs(const std::vector<int>& sigma, const Potential& psi, const CostMatrix& c,
                  double epsilon, double slack = 1e-12);

/// sum_x c(x, sigma(x)).
double assignment_cost(const std::vector<int>& sigma, const CostMatrix& c);

}  // namespace ot
