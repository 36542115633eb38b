#include "hodt/paths.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace hodt::paths {

using lam::alpha_equal;
using lam::Dir;
using lam::Tag;
using lam::Term;

// ---------------------------------------------------------------------------
// labeled terms: binders carry a mark so redexes can be traced through
// contractions (the standard residual-tracking device)

namespace {

struct LTerm;
using LPtr = std::shared_ptr<const LTerm>;

struct LTerm {
  Tag tag;
  int index = -1;
  std::string name;
  int mark = 0; // on Lam nodes only; 0 = untracked
  LPtr body, fn, arg;

  static LPtr bound(int i) {
    auto t = std::make_shared<LTerm>();
    t->tag = Tag::BoundVar;
    t->index = i;
    return t;
  }
  static LPtr freevar(std::string n) {
    auto t = std::make_shared<LTerm>();
    t->tag = Tag::FreeVar;
    t->name = std::move(n);
    return t;
  }
  static LPtr lam(std::string hint, int mark, LPtr b) {
    auto t = std::make_shared<LTerm>();
    t->tag = Tag::Lam;
    t->name = std::move(hint);
    t->mark = mark;
    t->body = std::move(b);
    return t;
  }
  static LPtr app(LPtr f, LPtr a) {
    auto t = std::make_shared<LTerm>();
    t->tag = Tag::App;
    t->fn = std::move(f);
    t->arg = std::move(a);
    return t;
  }
};

// builds the labeled copy of t, marking the binder of each listed redex
LPtr label(const TermPtr& t, const std::vector<std::pair<Position, int>>& marks) {
  struct Rec {
    const std::vector<std::pair<Position, int>>& marks;
    Position cur;

    int mark_here() const {
      // mark whose App position is the parent of this Lam via Fn
      if (cur.steps.empty() || cur.steps.back() != Dir::Fn) return 0;
      Position parent{std::vector<Dir>(cur.steps.begin(), cur.steps.end() - 1)};
      for (const auto& [pos, m] : marks)
        if (pos == parent) return m;
      return 0;
    }

    LPtr go(const TermPtr& t) {
      switch (t->tag) {
      case Tag::BoundVar: return LTerm::bound(t->index);
      case Tag::FreeVar: return LTerm::freevar(t->name);
      case Tag::Lam: {
        int m = mark_here();
        cur.steps.push_back(Dir::Body);
        LPtr b = go(t->body);
        cur.steps.pop_back();
        return LTerm::lam(t->name, m, std::move(b));
      }
      case Tag::App: {
        cur.steps.push_back(Dir::Fn);
        LPtr f = go(t->fn);
        cur.steps.pop_back();
        cur.steps.push_back(Dir::Arg);
        LPtr a = go(t->arg);
        cur.steps.pop_back();
        return LTerm::app(std::move(f), std::move(a));
      }
      }
      return nullptr;
    }
  };
  Rec rec{marks, {}};
  return rec.go(t);
}

TermPtr strip(const LPtr& t) {
  switch (t->tag) {
  case Tag::BoundVar: return Term::bound(t->index);
  case Tag::FreeVar: return Term::free(t->name);
  case Tag::Lam: return Term::lam(t->name, strip(t->body));
  case Tag::App: return Term::app(strip(t->fn), strip(t->arg));
  }
  return nullptr;
}

LPtr l_open(const LPtr& t, int depth, const LPtr& repl) {
  switch (t->tag) {
  case Tag::BoundVar:
    if (t->index == depth) return repl;
    if (t->index > depth) return LTerm::bound(t->index - 1);
    return t;
  case Tag::FreeVar: return t;
  case Tag::Lam: return LTerm::lam(t->name, t->mark, l_open(t->body, depth + 1, repl));
  case Tag::App: return LTerm::app(l_open(t->fn, depth, repl), l_open(t->arg, depth, repl));
  }
  return t;
}

LPtr l_contract_at(const LPtr& t, const Position& p, std::size_t i) {
  if (i == p.steps.size()) {
    if (t->tag != Tag::App || t->fn->tag != Tag::Lam)
      throw invalid_position("labeled contraction: no redex at " + p.str());
    return l_open(t->fn->body, 0, t->arg);
  }
  switch (p.steps[i]) {
  case Dir::Fn: return LTerm::app(l_contract_at(t->fn, p, i + 1), t->arg);
  case Dir::Arg: return LTerm::app(t->fn, l_contract_at(t->arg, p, i + 1));
  case Dir::Body: return LTerm::lam(t->name, t->mark, l_contract_at(t->body, p, i + 1));
  }
  throw invalid_position("corrupt position");
}

// positions of applications whose binder carries the given mark
void find_marked(const LPtr& t, int mark, Position& cur, std::vector<Position>& out) {
  switch (t->tag) {
  case Tag::BoundVar:
  case Tag::FreeVar: return;
  case Tag::Lam:
    cur.steps.push_back(Dir::Body);
    find_marked(t->body, mark, cur, out);
    cur.steps.pop_back();
    return;
  case Tag::App:
    if (t->fn->tag == Tag::Lam && t->fn->mark == mark) out.push_back(cur);
    cur.steps.push_back(Dir::Fn);
    find_marked(t->fn, mark, cur, out);
    cur.steps.pop_back();
    cur.steps.push_back(Dir::Arg);
    find_marked(t->arg, mark, cur, out);
    cur.steps.pop_back();
    return;
  }
}

std::vector<Position> marked_positions(const LPtr& t, int mark) {
  std::vector<Position> out;
  Position cur;
  find_marked(t, mark, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

void check_positions(const TermPtr& t, const std::vector<Position>& ps) {
  for (const auto& p : ps)
    if (!lam::is_redex(t, p)) throw invalid_position("not a redex: " + p.str());
}

// develops every mark-2 redex leftmost-outermost; collects the final term,
// the contracted positions in order, and the surviving mark-1 positions
struct LDev {
  LPtr term;
  std::vector<Position> contracted;
};

LDev l_develop(LPtr t, int fuel) {
  LDev out;
  for (;;) {
    std::vector<Position> marked = marked_positions(t, 2);
    if (marked.empty()) break;
    if (fuel-- <= 0) throw resource_exhausted("development fuel exhausted");
    t = l_contract_at(t, marked.front(), 0);
    out.contracted.push_back(marked.front());
  }
  out.term = std::move(t);
  return out;
}

std::vector<std::pair<Position, int>> tag_sets(const std::vector<Position>& keep,
                                               const std::vector<Position>& dev) {
  std::vector<std::pair<Position, int>> marks;
  for (const auto& p : keep) marks.emplace_back(p, 1);
  for (const auto& p : dev) {
    bool dup = false;
    for (auto& [q, m] : marks)
      if (q == p) {
        // a position both kept and developed keeps both roles: the
        // developed role wins for contraction order, survival is empty
        m = 2;
        dup = true;
      }
    if (!dup) marks.emplace_back(p, 2);
  }
  return marks;
}

} // namespace

// ---------------------------------------------------------------------------
// steps and zigzags

Step forward_step(const TermPtr& source, const Redex& r) {
  return Step{source, r, StepDir::Forward, lam::contract(source, r)};
}

Step backward_step(const TermPtr& expanded, const Redex& r) {
  return Step{lam::contract(expanded, r), r, StepDir::Backward, expanded};
}

Step flip(const Step& s) {
  return Step{s.target, s.redex,
              s.dir == StepDir::Forward ? StepDir::Backward : StepDir::Forward, s.source};
}

bool step_valid(const Step& s) {
  try {
    if (s.dir == StepDir::Forward)
      return alpha_equal(lam::contract(s.source, s.redex), s.target);
    return alpha_equal(lam::contract(s.target, s.redex), s.source);
  } catch (const invalid_position&) {
    return false;
  }
}

TermPtr Zigzag::end() const { return steps.empty() ? start : steps.back().target; }

bool Zigzag::forward_only() const {
  return std::all_of(steps.begin(), steps.end(),
                     [](const Step& s) { return s.dir == StepDir::Forward; });
}

bool zigzag_valid(const Zigzag& z) {
  TermPtr cur = z.start;
  for (const Step& s : z.steps) {
    if (!alpha_equal(cur, s.source) || !step_valid(s)) return false;
    cur = s.target;
  }
  return true;
}

Zigzag zigzag_of(const TermPtr& start, const std::vector<Step>& steps) {
  Zigzag z{start, steps};
  if (!zigzag_valid(z)) throw endpoint_mismatch("steps do not compose into a zigzag");
  return z;
}

Reduction reduction_from(const TermPtr& start, const std::vector<Redex>& rs) {
  Reduction out;
  TermPtr cur = start;
  for (const Redex& r : rs) {
    out.push_back(forward_step(cur, r));
    cur = out.back().target;
  }
  return out;
}

TermPtr reduction_end(const TermPtr& start, const Reduction& p) {
  return p.empty() ? start : p.back().target;
}

// ---------------------------------------------------------------------------
// developments and residuals

DevelopResult develop(const MultiStep& ms, int fuel) {
  check_positions(ms.source, ms.redexes);
  LPtr lt = label(ms.source, tag_sets({}, ms.redexes));
  DevelopResult out;
  TermPtr cur = ms.source;
  LDev dev = l_develop(lt, fuel);
  for (const Position& p : dev.contracted) {
    out.steps.push_back(forward_step(cur, Redex{p}));
    cur = out.steps.back().target;
  }
  out.target = cur;
  assert(alpha_equal(out.target, strip(dev.term)));
  return out;
}

std::vector<Position> residuals(const TermPtr& source, const Redex& contracted,
                                const std::vector<Position>& of) {
  check_positions(source, of);
  if (!lam::is_redex(source, contracted.pos))
    throw invalid_position("not a redex: " + contracted.pos.str());
  LPtr lt = label(source, tag_sets(of, {contracted.pos}));
  LDev dev = l_develop(lt, 4); // single marked redex contracts in one step
  return marked_positions(dev.term, 1);
}

std::vector<Position> residuals(const Step& forward, const std::vector<Position>& of) {
  if (forward.dir != StepDir::Forward)
    throw invalid_position("residuals are tracked along forward steps");
  return residuals(forward.source, forward.redex, of);
}

std::vector<Position> residuals(const MultiStep& developed, const std::vector<Position>& of,
                                int fuel) {
  check_positions(developed.source, developed.redexes);
  check_positions(developed.source, of);
  LPtr lt = label(developed.source, tag_sets(of, developed.redexes));
  LDev dev = l_develop(lt, fuel);
  return marked_positions(dev.term, 1);
}

// ---------------------------------------------------------------------------
// Levy projection

namespace {

struct MSet {
  TermPtr source;
  std::vector<Position> redexes;
};

// both residual sets of `a` and `c` against each other, plus the target of
// developing `c`; computed in one labeled pass each
struct CrossResult {
  std::vector<Position> a_after_c; // at target of developing c
  std::vector<Position> c_after_a; // at target of developing a
  TermPtr target_c;
  TermPtr target_a;
};

CrossResult cross(const TermPtr& source, const std::vector<Position>& a,
                  const std::vector<Position>& c, int fuel) {
  CrossResult out;
  {
    LPtr lt = label(source, tag_sets(a, c));
    LDev dev = l_develop(lt, fuel);
    out.a_after_c = marked_positions(dev.term, 1);
    out.target_c = strip(dev.term);
  }
  {
    LPtr lt = label(source, tag_sets(c, a));
    LDev dev = l_develop(lt, fuel);
    out.c_after_a = marked_positions(dev.term, 1);
    out.target_a = strip(dev.term);
  }
  return out;
}

std::vector<MSet> lift(const Reduction& p, const TermPtr& source) {
  std::vector<MSet> out;
  TermPtr cur = source;
  for (const Step& s : p) {
    if (s.dir != StepDir::Forward) throw invalid_position("projection wants forward sequences");
    if (!alpha_equal(cur, s.source)) throw endpoint_mismatch("sequence is not composable");
    out.push_back(MSet{cur, {s.redex.pos}});
    cur = s.target;
  }
  return out;
}

// P / B for one multistep B coinitial with P
std::vector<MSet> project_one(const std::vector<MSet>& P, MSet B, int fuel) {
  std::vector<MSet> out;
  for (const MSet& A : P) {
    CrossResult x = cross(A.source, A.redexes, B.redexes, fuel);
    out.push_back(MSet{x.target_c, x.a_after_c});
    B = MSet{x.target_a, x.c_after_a};
  }
  return out;
}

Reduction flatten(const std::vector<MSet>& P, int fuel) {
  Reduction out;
  for (const MSet& A : P) {
    if (A.redexes.empty()) continue;
    DevelopResult d = develop(MultiStep{A.source, A.redexes}, fuel);
    for (auto& s : d.steps) out.push_back(std::move(s));
  }
  return out;
}

} // namespace

Reduction project(const Reduction& p, const Reduction& q, const TermPtr& source,
                  const Bounds& b) {
  std::vector<MSet> P = lift(p, source);
  TermPtr q_end = source;
  for (const Step& s : q) {
    if (s.dir != StepDir::Forward) throw invalid_position("projection wants forward sequences");
    if (!alpha_equal(q_end, s.source)) throw endpoint_mismatch("sequence is not composable");
    // fix up sources of P as we slide along q
    P = project_one(P, MSet{q_end, {s.redex.pos}}, b.fuel);
    q_end = s.target;
  }
  Reduction out = flatten(P, b.fuel);
  // endpoint checks: result starts at target(q)
  if (!out.empty() && !alpha_equal(out.front().source, q_end))
    throw endpoint_mismatch("projection does not start at the target of q");
  return out;
}

bool permutation_equivalent(const Reduction& p, const Reduction& q, const TermPtr& source,
                            const Bounds& b) {
  TermPtr pe = reduction_end(source, p);
  TermPtr qe = reduction_end(source, q);
  if (!alpha_equal(pe, qe))
    throw endpoint_mismatch("permutation equivalence wants cofinal sequences");
  return project(p, q, source, b).empty() && project(q, p, source, b).empty();
}

// ---------------------------------------------------------------------------
// valley normalization and proof homotopy

std::pair<Reduction, Reduction> valley_normalize(const Zigzag& z, const Bounds& b) {
  if (!zigzag_valid(z)) throw endpoint_mismatch("malformed zigzag");
  std::deque<Step> steps(z.steps.begin(), z.steps.end());
  int fuel = b.fuel;
  for (;;) {
    // find a peak: backward immediately followed by forward
    std::size_t i = 0;
    bool found = false;
    for (; i + 1 < steps.size(); ++i) {
      if (steps[i].dir == StepDir::Backward && steps[i + 1].dir == StepDir::Forward) {
        found = true;
        break;
      }
    }
    if (!found) break;
    if (fuel-- <= 0) throw resource_exhausted("valley normalization fuel exhausted");
    const TermPtr peak = steps[i].target; // both redexes live here
    const Position r1 = steps[i].redex.pos;
    const Position r2 = steps[i + 1].redex.pos;
    const TermPtr left = steps[i].source;       // contract(peak, r1)
    const TermPtr right = steps[i + 1].target;  // contract(peak, r2)
    CrossResult x = cross(peak, {r2}, {r1}, b.fuel);
    // x.a_after_c = r2/r1 at `left`; x.c_after_a = r1/r2 at `right`
    DevelopResult down = develop(MultiStep{left, x.a_after_c}, b.fuel);
    DevelopResult up = develop(MultiStep{right, x.c_after_a}, b.fuel);
    if (!alpha_equal(down.target, up.target))
      throw endpoint_mismatch("development diamond failed to close");
    std::vector<Step> repl(down.steps.begin(), down.steps.end());
    for (auto it = up.steps.rbegin(); it != up.steps.rend(); ++it) repl.push_back(flip(*it));
    steps.erase(steps.begin() + static_cast<long>(i), steps.begin() + static_cast<long>(i) + 2);
    steps.insert(steps.begin() + static_cast<long>(i), repl.begin(), repl.end());
  }
  // now shaped forward*;backward*: cancel exact inverse pairs at the junction
  std::size_t split = 0;
  while (split < steps.size() && steps[split].dir == StepDir::Forward) ++split;
  for (std::size_t k = split; k < steps.size(); ++k)
    assert(steps[k].dir == StepDir::Backward);
  while (split > 0 && split < steps.size()) {
    const Step& f = steps[split - 1];
    const Step& bck = steps[split];
    if (f.redex.pos == bck.redex.pos && alpha_equal(f.source, bck.target) &&
        alpha_equal(f.target, bck.source)) {
      steps.erase(steps.begin() + static_cast<long>(split) - 1,
                  steps.begin() + static_cast<long>(split) + 1);
      --split;
    } else {
      break;
    }
  }
  Reduction p(steps.begin(), steps.begin() + static_cast<long>(split));
  Reduction q;
  for (std::size_t k = steps.size(); k > split; --k) q.push_back(flip(steps[k - 1]));
  return {p, q};
}

// The two valleys are fractions p;q^-1 and r;s^-1. Their backward sides q
// and s are pushed out to the canonical common join (u = s/q, v = q/s),
// and the verdict compares the transported forward sides: p;(s/q) against
// r;(q/s). Restricted to forward proofs (q = s = empty) this is exactly
// permutation equivalence of p and r.
bool homotopic(const Zigzag& z1, const Zigzag& z2, const Bounds& b) {
  if (!alpha_equal(z1.start, z2.start) || !alpha_equal(z1.end(), z2.end()))
    throw endpoint_mismatch("proofs do not share endpoints");
  auto [p, q] = valley_normalize(z1, b);
  auto [r, s] = valley_normalize(z2, b);
  Reduction u = project(s, q, z1.end(), b);
  Reduction v = project(q, s, z1.end(), b);
  Reduction pu = p;
  pu.insert(pu.end(), u.begin(), u.end());
  Reduction rv = r;
  rv.insert(rv.end(), v.begin(), v.end());
  return permutation_equivalent(pu, rv, z1.start, b);
}

// ---------------------------------------------------------------------------
// graph exploration

std::optional<int> ReductionGraph::vertex_of(const TermPtr& t) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (alpha_equal(vertices[i], t)) return static_cast<int>(i);
  return std::nullopt;
}

std::vector<Redex> ReductionGraph::term_redexes(int vertex) const {
  return lam::redexes(vertices.at(static_cast<std::size_t>(vertex)));
}

ReductionGraph explore(const std::vector<TermPtr>& seeds, const Bounds& b) {
  ReductionGraph g;
  std::unordered_map<TermPtr, int, lam::TermHash, lam::TermEq> index;
  std::deque<std::pair<int, int>> frontier; // (vertex, depth)

  auto add_vertex = [&](const TermPtr& t, int depth) -> std::optional<int> {
    auto it = index.find(t);
    if (it != index.end()) return it->second;
    if (lam::term_size(t) > b.max_term_size || static_cast<int>(g.vertices.size()) >= b.max_vertices) {
      g.truncated = true;
      return std::nullopt;
    }
    int id = static_cast<int>(g.vertices.size());
    g.vertices.push_back(t);
    index.emplace(t, id);
    if (depth < b.max_depth) frontier.emplace_back(id, depth);
    else if (!lam::redexes(t).empty()) g.truncated = true;
    return id;
  };

  for (const TermPtr& s : seeds) add_vertex(s, 0);
  while (!frontier.empty()) {
    auto [v, depth] = frontier.front();
    frontier.pop_front();
    TermPtr t = g.vertices[static_cast<std::size_t>(v)];
    for (const Redex& r : lam::redexes(t)) {
      TermPtr u = lam::contract(t, r);
      std::optional<int> w = add_vertex(u, depth + 1);
      if (w) g.edges.push_back(ReductionGraph::Edge{v, *w, r.pos});
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// json / dot

nlohmann::json graph_to_json(const ReductionGraph& g) {
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& v : g.vertices) verts.push_back(lam::term_to_json(v));
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges) {
    edges.push_back({{"src", e.src},
                     {"dst", e.dst},
                     {"redex-position", lam::position_to_json(e.redex)},
                     {"dir", "forward"}});
  }
  return {{"vertices", verts}, {"edges", edges}, {"truncated", g.truncated}};
}

ReductionGraph graph_from_json(const nlohmann::json& j) {
  ReductionGraph g;
  for (const auto& v : j.at("vertices")) g.vertices.push_back(lam::term_from_json(v));
  for (const auto& e : j.at("edges")) {
    ReductionGraph::Edge edge;
    edge.src = e.at("src").get<int>();
    edge.dst = e.at("dst").get<int>();
    edge.redex = lam::position_from_json(e.at("redex-position"));
    if (edge.src < 0 || edge.dst < 0 || edge.src >= static_cast<int>(g.vertices.size()) ||
        edge.dst >= static_cast<int>(g.vertices.size()))
      throw error("graph json: edge endpoint out of range");
    g.edges.push_back(edge);
  }
  g.truncated = j.value("truncated", false);
  return g;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\\' || c == '"') out += '\\';
    out += c;
  }
  return out;
}

} // namespace

std::string graph_to_dot(const ReductionGraph& g) {
  std::string out = "digraph reduction {\n";
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    out += "  n" + std::to_string(i) + " [label=\"" + dot_escape(lam::render(g.vertices[i])) +
           "\"];\n";
  for (const auto& e : g.edges)
    out += "  n" + std::to_string(e.src) + " -> n" + std::to_string(e.dst) + " [label=\"" +
           dot_escape(e.redex.str()) + "\"];\n";
  out += "}\n";
  return out;
}

nlohmann::json zigzag_to_json(const Zigzag& z) {
  nlohmann::json steps = nlohmann::json::array();
  for (const Step& s : z.steps)
    steps.push_back({{"dir", s.dir == StepDir::Forward ? "forward" : "backward"},
                     {"redex-position", lam::position_to_json(s.redex.pos)},
                     {"term", lam::term_to_json(s.target)}});
  return {{"start", lam::term_to_json(z.start)}, {"steps", steps}};
}

Zigzag zigzag_from_json(const nlohmann::json& j) {
  TermPtr cur = lam::term_from_json(j.at("start"));
  Zigzag z{cur, {}};
  for (const auto& sj : j.at("steps")) {
    Position p = lam::position_from_json(sj.at("redex-position"));
    std::string d = sj.at("dir").get<std::string>();
    if (d == "forward") {
      z.steps.push_back(forward_step(cur, Redex{p}));
      if (sj.contains("term") &&
          !alpha_equal(z.steps.back().target, lam::term_from_json(sj.at("term"))))
        throw error("zigzag json: forward step target mismatch");
    } else if (d == "backward") {
      TermPtr expanded = lam::term_from_json(sj.at("term"));
      Step s = backward_step(expanded, Redex{p});
      if (!alpha_equal(s.source, cur)) throw error("zigzag json: backward step source mismatch");
      z.steps.push_back(s);
    } else {
      throw error("zigzag json: unknown dir " + d);
    }
    cur = z.steps.back().target;
  }
  return z;
}

} // namespace hodt::paths
