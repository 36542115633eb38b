#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hodt/budget.hpp"
#include "hodt/term.hpp"

namespace hodt::paths {

using lam::Position;
using lam::Redex;
using lam::TermPtr;

enum class StepDir : std::uint8_t { Forward, Backward };

// One zigzag move. Forward: target = contract(source, redex).
// Backward: source = contract(target, redex) — the arrow is traversed
// against the contraction.
struct Step {
  TermPtr source;
  Redex redex;
  StepDir dir = StepDir::Forward;
  TermPtr target;
};

Step forward_step(const TermPtr& source, const Redex& r);
// step from contract(expanded, r) back up to expanded
Step backward_step(const TermPtr& expanded, const Redex& r);
Step flip(const Step& s);
bool step_valid(const Step& s);

// equality proof: composable sequence of steps; empty = identity proof
struct Zigzag {
  TermPtr start;
  std::vector<Step> steps;

  TermPtr end() const;
  bool forward_only() const;
};

bool zigzag_valid(const Zigzag& z);
Zigzag zigzag_of(const TermPtr& start, const std::vector<Step>& steps);

// a set of redex positions of one source term (a development unit)
struct MultiStep {
  TermPtr source;
  std::vector<Position> redexes; // sorted, distinct
};

// forward reduction sequence (each step single-redex, composable)
using Reduction = std::vector<Step>;

Reduction reduction_from(const TermPtr& start, const std::vector<Redex>& rs);
TermPtr reduction_end(const TermPtr& start, const Reduction& p);

struct DevelopResult {
  TermPtr target;
  Reduction steps; // leftmost-outermost complete development, flattened
};

// complete development; terminates by finite developments, fuel-guarded
DevelopResult develop(const MultiStep& ms, int fuel = 10000);

// residual positions of `of` in the target of the given contraction,
// tracked by marking the binder of each followed redex
std::vector<Position> residuals(const TermPtr& source, const Redex& contracted,
                                const std::vector<Position>& of);
std::vector<Position> residuals(const Step& forward, const std::vector<Position>& of);
std::vector<Position> residuals(const MultiStep& developed, const std::vector<Position>& of,
                                int fuel = 10000);

// Levy projection p/q for coinitial forward sequences; the result starts
// at the target of q and ends at the common join
Reduction project(const Reduction& p, const Reduction& q, const TermPtr& source,
                  const Bounds& b = {});

// true iff project(p,q) and project(q,p) are both empty
bool permutation_equivalent(const Reduction& p, const Reduction& q, const TermPtr& source,
                            const Bounds& b = {});

// peak elimination by complete developments, then junction cancellation;
// returns forward p from start(z) and forward q from end(z), cofinal
std::pair<Reduction, Reduction> valley_normalize(const Zigzag& z, const Bounds& b = {});

// decision procedure for homotopy of proofs: valley-normalize both sides
// and compare through the canonical pushout join
bool homotopic(const Zigzag& z1, const Zigzag& z2, const Bounds& b = {});

struct ReductionGraph {
  struct Edge {
    int src, dst;
    Position redex;
  };
  std::vector<TermPtr> vertices; // alpha-classes, discovery order
  std::vector<Edge> edges;
  bool truncated = false;

  std::optional<int> vertex_of(const TermPtr& t) const;
  std::vector<Redex> term_redexes(int vertex) const;
};

// bounded BFS forward closure of the seeds (bounds: max_depth,
// max_term_size, max_vertices); truncation is flagged, not an error
ReductionGraph explore(const std::vector<TermPtr>& seeds, const Bounds& b = {});

nlohmann::json graph_to_json(const ReductionGraph& g);
ReductionGraph graph_from_json(const nlohmann::json& j);
std::string graph_to_dot(const ReductionGraph& g);

nlohmann::json zigzag_to_json(const Zigzag& z);
Zigzag zigzag_from_json(const nlohmann::json& j);

} // namespace hodt::paths
