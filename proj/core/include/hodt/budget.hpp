#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hodt {

// Resource limits shared across modules. Exceeding a bound is a
// distinguished outcome (resource_exhausted / budget_exceeded), never a
// silent truncation unless the operation documents a truncation flag.
struct Bounds {
  int fuel = 10000;        // developments / rewrite steps
  int max_term_size = 64;  // AST nodes
  int max_vertices = 1024; // graph exploration
  int max_depth = 32;      // BFS depth
  int dim = 2;             // simplicial dimension bound
  int budget = 5000;       // enumeration budget (candidates, cells, functors)
  int set_bound = 2;       // presheaf component size bound s
  std::uint64_t seed = 17; // sampling seed
};

struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// malformed input text; carries 1-based line/column
struct parse_error : error {
  int line, column;
  parse_error(const std::string& what, int line_, int col_)
      : error(what + " at " + std::to_string(line_) + ":" + std::to_string(col_)),
        line(line_), column(col_) {}
};

struct invalid_position : error {
  using error::error;
};

struct endpoint_mismatch : error {
  using error::error;
};

// fuel or size limit hit; exit code 3 territory
struct resource_exhausted : error {
  using error::error;
};

struct budget_exceeded : resource_exhausted {
  using resource_exhausted::resource_exhausted;
};

struct dimension_error : error {
  using error::error;
};

struct unknown_vertex : error {
  using error::error;
};

struct unknown_object : error {
  using error::error;
};

// deterministic pseudo-random stream; plain splitmix so byte-identical
// output does not depend on the standard library's distribution details
class rng {
public:
  explicit rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

private:
  std::uint64_t state_;
};

} // namespace hodt
