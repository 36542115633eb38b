#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hodt/budget.hpp"

namespace hodt::lam {

// Untyped lambda terms, locally nameless: bound variables are de Bruijn
// indices into the enclosing binder stack, free variables are names.
// Binders keep a printing hint that is ignored by equality and hashing,
// so operator== is alpha-equivalence.
class Term;
using TermPtr = std::shared_ptr<const Term>;

enum class Tag : std::uint8_t { BoundVar, FreeVar, Lam, App };

class Term {
public:
  Tag tag;
  int index = -1;      // BoundVar
  std::string name;    // FreeVar name / Lam hint
  TermPtr body;        // Lam
  TermPtr fn, arg;     // App

  std::size_t hash_cache = 0;
  int size_cache = 0; // AST node count

private:
  struct ctor_key {};

public:
  Term(ctor_key, Tag t) : tag(t) {}

  static TermPtr bound(int index);
  static TermPtr free(std::string name);
  static TermPtr lam(std::string hint, TermPtr body);
  static TermPtr app(TermPtr fn, TermPtr arg);
};

int term_size(const TermPtr& t);
std::size_t term_hash(const TermPtr& t);
bool alpha_equal(const TermPtr& a, const TermPtr& b);
// bound indices all resolve to enclosing binders
bool well_scoped(const TermPtr& t);
std::vector<std::string> free_names(const TermPtr& t);
bool has_free(const TermPtr& t, const std::string& name);

struct TermEq {
  bool operator()(const TermPtr& a, const TermPtr& b) const { return alpha_equal(a, b); }
};
struct TermHash {
  std::size_t operator()(const TermPtr& t) const { return term_hash(t); }
};

// Subterm addresses. Fn/Arg step into an application, Body into a binder.
enum class Dir : std::uint8_t { Fn, Arg, Body };

struct Position {
  std::vector<Dir> steps;

  bool operator==(const Position&) const = default;
  // preorder: prefixes first, then Fn before Arg
  bool operator<(const Position& o) const;
  std::string str() const; // "root" or dotted path like "fn.body"
};

// position whose subterm has shape (\x.B) A
struct Redex {
  Position pos;
  bool operator==(const Redex&) const = default;
};

// resolves to the addressed subterm; throws invalid_position
TermPtr subterm(const TermPtr& t, const Position& p);
bool position_valid(const TermPtr& t, const Position& p);
bool is_redex(const TermPtr& t, const Position& p);

// Grammar: term := lam | app ; lam := ("\" | unicode lambda) ident "." term ;
// app := atom+ left-assoc, a lam is also accepted in tail position;
// atom := ident | "(" term ")" ; ident := [A-Za-z0-9]+.
TermPtr parse(const std::string& text);

// minimal parentheses; parse(render(t)) is alpha-equal to t
std::string render(const TermPtr& t);

// capture-avoiding [n/x]m for a free name x
TermPtr substitute(const TermPtr& m, const std::string& x, const TermPtr& n);

// all beta-redex positions in deterministic leftmost-outermost order
std::vector<Redex> redexes(const TermPtr& t);

// replace (\x.B) A at r with [A/x]B; throws invalid_position
TermPtr contract(const TermPtr& t, const Redex& r);

// eta is kept behind its own entry points and excluded from default suites
std::vector<Position> eta_redexes(const TermPtr& t);
TermPtr eta_contract(const TermPtr& t, const Position& p);

// all terms with size <= max_size over the given free-name pool,
// deterministic order; binders use hints x, y, z, w, v, u, ...
std::vector<TermPtr> enumerate_terms(int max_size, const std::vector<std::string>& pool);
std::vector<TermPtr> closed_terms(int max_size);

nlohmann::json term_to_json(const TermPtr& t);
TermPtr term_from_json(const nlohmann::json& j);

nlohmann::json position_to_json(const Position& p);
Position position_from_json(const nlohmann::json& j);

} // namespace hodt::lam
