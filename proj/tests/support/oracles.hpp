#pragma once

// Test-only reference implementations, kept independent of the library
// code paths they cross-check.

#include <cstdint>
#include <memory>
#include <vector>

#include "hodt/paths.hpp"
#include "hodt/term.hpp"

namespace hodt::testing {

// Residuals by positional case analysis (disjoint / inside-body /
// inside-argument / containing), independent of the labeled-term tracker.
std::vector<lam::Position> residuals_by_cases(const lam::TermPtr& source,
                                              const lam::Position& contracted,
                                              const lam::Position& tracked);

// Zigzag over a reduction graph: (edge id, forward?) pairs.
using ZState = std::vector<std::pair<int, bool>>;

enum class OracleVerdict { Homotopic, NotWithinBound, Inconclusive };

// Brute-force square-tiling/cancellation oracle: two zigzags are declared
// homotopic iff they are connected by at most `moves` elementary moves
// (permutation-square segment swaps, inverse-pair cancellations and
// insertions), searched bidirectionally over a complete reduction graph.
// Inconclusive when the state cap is hit before the balls close.
class TilingOracle {
public:
  explicit TilingOracle(const paths::ReductionGraph& g);
  ~TilingOracle();

  ZState zstate_of(const paths::Zigzag& z) const;
  OracleVerdict decide(int src_vertex, const ZState& z1, const ZState& z2, int moves = 6,
                       std::size_t state_cap = 200000) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

} // namespace hodt::testing
