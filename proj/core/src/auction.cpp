#include "ot/auction.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "ot/error.hpp"

namespace ot {

PartialAssignment::PartialAssignment(Eigen::Index sources, Eigen::Index targets)
    : assigned_(static_cast<std::size_t>(sources), kUnassigned),
      owner_(static_cast<std::size_t>(targets), kUnassigned) {}

int PartialAssignment::assign(int x, int y) {
  const int previous = owner_[static_cast<std::size_t>(y)];
  if (previous == x) return kUnassigned;
  if (previous != kUnassigned) {
    assigned_[static_cast<std::size_t>(previous)] = kUnassigned;
    --count_;
  }
  const int old_target = assigned_[static_cast<std::size_t>(x)];
  if (old_target != kUnassigned) {
    owner_[static_cast<std::size_t>(old_target)] = kUnassigned;
    --count_;
  }
  assigned_[static_cast<std::size_t>(x)] = y;
  owner_[static_cast<std::size_t>(y)] = x;
  ++count_;
  return previous;
}

Bid bid(int x, const Potential& psi, const CostMatrix& c, double epsilon) {
  if (psi.size() != c.cols()) throw_dimension_mismatch("bid", c.cols(), psi.size());
  if (epsilon < 0.0) throw ParameterError("bid: epsilon must be >= 0");
  const auto n = c.cols();
  Bid b;
  double v0 = std::numeric_limits<double>::infinity();
  double v1 = std::numeric_limits<double>::infinity();
  for (Eigen::Index y = 0; y < n; ++y) {
    const double v = c(x, y) + psi[y];
    if (v < v0) {
      v1 = v0;
      b.second = b.best;
      v0 = v;
      b.best = static_cast<int>(y);
    } else if (v < v1) {
      v1 = v;
      b.second = static_cast<int>(y);
    }
  }
  if (n == 1) {
    b.second = kUnassigned;
    b.raise = epsilon;
  } else {
    b.raise = (v1 - v0) + epsilon;
  }
  return b;
}

namespace {

void require_square(const CostMatrix& c, const char* where) {
  if (c.rows() != c.cols()) throw_dimension_mismatch(where, c.rows(), c.cols());
}

}  // namespace

AuctionResult auction(const CostMatrix& c, double epsilon, const Potential& psi0,
                      const AuctionOptions& options) {
  require_square(c, "auction");
  if (psi0.size() != c.cols()) throw_dimension_mismatch("auction (psi0)", c.cols(), psi0.size());
  if (!(epsilon > 0.0)) throw ParameterError("auction: epsilon must be > 0");

  const auto n = c.rows();
  AuctionResult r;
  r.psi = psi0;
  r.trace.epsilon = epsilon;
  r.trace.raise_counts.assign(static_cast<std::size_t>(n), 0);

  PartialAssignment s(n, n);
  std::set<int> unassigned;
  for (int x = 0; x < n; ++x) unassigned.insert(x);

  const auto start = std::chrono::steady_clock::now();
  while (!unassigned.empty()) {
    if (options.max_steps > 0 &&
        static_cast<std::int64_t>(r.trace.steps.size()) >= options.max_steps) {
      r.completed = false;
      break;
    }
    const int x = *unassigned.begin();
    const Bid b = bid(x, r.psi, c, epsilon);
    r.psi[b.best] += b.raise;
    ++r.trace.raise_counts[static_cast<std::size_t>(b.best)];
    const int evicted = s.assign(x, b.best);
    unassigned.erase(x);
    if (evicted != kUnassigned) unassigned.insert(evicted);
    r.trace.steps.push_back({x, b.best, b.raise, evicted,
                             std::chrono::duration_cast<std::chrono::nanoseconds>(
                                 std::chrono::steady_clock::now() - start)
                                 .count()});

    if (options.verify_each_step) {
      const CsReport cs = check_cs(s.assigned(), r.psi, c, epsilon);
      if (!cs.satisfied) throw std::logic_error("auction: complementary slackness violated");
    }
  }
  r.sigma = s.assigned();
  return r;
}

AuctionResult auction(const CostMatrix& c, double epsilon) {
  return auction(c, epsilon, Potential::Zero(c.cols()));
}

std::int64_t ScaledAuctionResult::total_steps() const {
  std::int64_t total = 0;
  for (const auto& run : runs) total += static_cast<std::int64_t>(run.steps.size());
  return total;
}

ScaledAuctionResult auction_scaled(const CostMatrix& c, double eta, const AuctionOptions& options) {
  require_square(c, "auction_scaled");
  if (!(eta > 0.0)) throw ParameterError("auction_scaled: eta must be > 0");

  ScaledAuctionResult r;
  r.psi = Potential::Zero(c.cols());
  // A constant cost matrix has range 0; a single run at eta is then enough.
  double epsilon = c.range() > 0.0 ? c.range() : eta;
  for (;;) {
    AuctionResult run = auction(c, epsilon, r.psi, options);
    r.psi = std::move(run.psi);
    r.sigma = std::move(run.sigma);
    r.runs.push_back(std::move(run.trace));
    r.run_prices.push_back(r.psi);
    if (!run.completed || epsilon <= eta) break;
    epsilon *= 0.5;
  }
  return r;
}

CsReport check_cs(const std::vector<int>& sigma, const Potential& psi, const CostMatrix& c,
                  double epsilon, double slack) {
  if (psi.size() != c.cols()) throw_dimension_mismatch("check_cs", c.cols(), psi.size());
  if (static_cast<Eigen::Index>(sigma.size()) != c.rows())
    throw_dimension_mismatch("check_cs (sigma)", c.rows(), static_cast<long>(sigma.size()));
  CsReport r;
  r.worst_gap = 0.0;
  for (std::size_t xi = 0; xi < sigma.size(); ++xi) {
    const int y = sigma[xi];
    if (y == kUnassigned) continue;
    const auto x = static_cast<Eigen::Index>(xi);
    const double best = (c.values().row(x).transpose() + psi).minCoeff();
    const double gap = c(x, y) + psi[y] - best;
    r.worst_gap = std::max(r.worst_gap, gap);
  }
  r.satisfied = r.worst_gap <= epsilon + slack;
  return r;
}

double assignment_cost(const std::vector<int>& sigma, const CostMatrix& c) {
  double total = 0.0;
  for (std::size_t x = 0; x < sigma.size(); ++x) {
    if (sigma[x] == kUnassigned) throw InputError("assignment_cost: incomplete assignment");
    total += c(static_cast<Eigen::Index>(x), sigma[x]);
  }
  return total;
}

}  // namespace ot
