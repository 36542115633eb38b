#include "hodt/term.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hodt::lam {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

} // namespace

TermPtr Term::bound(int index) {
  auto t = std::make_shared<Term>(ctor_key{}, Tag::BoundVar);
  t->index = index;
  t->size_cache = 1;
  t->hash_cache = mix(1, static_cast<std::size_t>(index));
  return t;
}

TermPtr Term::free(std::string name) {
  auto t = std::make_shared<Term>(ctor_key{}, Tag::FreeVar);
  t->name = std::move(name);
  t->size_cache = 1;
  t->hash_cache = mix(2, std::hash<std::string>{}(t->name));
  return t;
}

TermPtr Term::lam(std::string hint, TermPtr body) {
  auto t = std::make_shared<Term>(ctor_key{}, Tag::Lam);
  t->name = std::move(hint);
  t->body = std::move(body);
  t->size_cache = 1 + t->body->size_cache;
  t->hash_cache = mix(3, t->body->hash_cache); // hint excluded: alpha classes
  return t;
}

TermPtr Term::app(TermPtr fn, TermPtr arg) {
  auto t = std::make_shared<Term>(ctor_key{}, Tag::App);
  t->fn = std::move(fn);
  t->arg = std::move(arg);
  t->size_cache = 1 + t->fn->size_cache + t->arg->size_cache;
  t->hash_cache = mix(mix(4, t->fn->hash_cache), t->arg->hash_cache);
  return t;
}

int term_size(const TermPtr& t) { return t->size_cache; }
std::size_t term_hash(const TermPtr& t) { return t->hash_cache; }

bool alpha_equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->tag != b->tag || a->hash_cache != b->hash_cache) return false;
  switch (a->tag) {
  case Tag::BoundVar: return a->index == b->index;
  case Tag::FreeVar: return a->name == b->name;
  case Tag::Lam: return alpha_equal(a->body, b->body);
  case Tag::App: return alpha_equal(a->fn, b->fn) && alpha_equal(a->arg, b->arg);
  }
  return false;
}

namespace {

bool scoped_at(const TermPtr& t, int depth) {
  switch (t->tag) {
  case Tag::BoundVar: return t->index >= 0 && t->index < depth;
  case Tag::FreeVar: return true;
  case Tag::Lam: return scoped_at(t->body, depth + 1);
  case Tag::App: return scoped_at(t->fn, depth) && scoped_at(t->arg, depth);
  }
  return false;
}

void collect_free(const TermPtr& t, std::set<std::string>& out) {
  switch (t->tag) {
  case Tag::BoundVar: return;
  case Tag::FreeVar: out.insert(t->name); return;
  case Tag::Lam: collect_free(t->body, out); return;
  case Tag::App:
    collect_free(t->fn, out);
    collect_free(t->arg, out);
    return;
  }
}

} // namespace

bool well_scoped(const TermPtr& t) { return scoped_at(t, 0); }

std::vector<std::string> free_names(const TermPtr& t) {
  std::set<std::string> s;
  collect_free(t, s);
  return {s.begin(), s.end()};
}

bool has_free(const TermPtr& t, const std::string& name) {
  switch (t->tag) {
  case Tag::BoundVar: return false;
  case Tag::FreeVar: return t->name == name;
  case Tag::Lam: return has_free(t->body, name);
  case Tag::App: return has_free(t->fn, name) || has_free(t->arg, name);
  }
  return false;
}

bool Position::operator<(const Position& o) const {
  std::size_t n = std::min(steps.size(), o.steps.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (steps[i] != o.steps[i])
      return static_cast<int>(steps[i]) < static_cast<int>(o.steps[i]);
  }
  return steps.size() < o.steps.size();
}

std::string Position::str() const {
  if (steps.empty()) return "root";
  std::string s;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) s += '.';
    switch (steps[i]) {
    case Dir::Fn: s += "fn"; break;
    case Dir::Arg: s += "arg"; break;
    case Dir::Body: s += "body"; break;
    }
  }
  return s;
}

namespace {

const Term* walk(const TermPtr& t, const Position& p) {
  const Term* cur = t.get();
  for (Dir d : p.steps) {
    switch (d) {
    case Dir::Fn:
      if (cur->tag != Tag::App) return nullptr;
      cur = cur->fn.get();
      break;
    case Dir::Arg:
      if (cur->tag != Tag::App) return nullptr;
      cur = cur->arg.get();
      break;
    case Dir::Body:
      if (cur->tag != Tag::Lam) return nullptr;
      cur = cur->body.get();
      break;
    }
  }
  return cur;
}

TermPtr clone_at(const Term* t) {
  // subterms are shared; rebuild only when a node is replaced
  switch (t->tag) {
  case Tag::BoundVar: return Term::bound(t->index);
  case Tag::FreeVar: return Term::free(t->name);
  case Tag::Lam: return Term::lam(t->name, t->body);
  case Tag::App: return Term::app(t->fn, t->arg);
  }
  return nullptr;
}

TermPtr replace_at(const TermPtr& t, const Position& p, std::size_t i, const TermPtr& repl) {
  if (i == p.steps.size()) return repl;
  switch (p.steps[i]) {
  case Dir::Fn:
    if (t->tag != Tag::App) throw invalid_position("position walks fn of a non-application");
    return Term::app(replace_at(t->fn, p, i + 1, repl), t->arg);
  case Dir::Arg:
    if (t->tag != Tag::App) throw invalid_position("position walks arg of a non-application");
    return Term::app(t->fn, replace_at(t->arg, p, i + 1, repl));
  case Dir::Body:
    if (t->tag != Tag::Lam) throw invalid_position("position walks body of a non-binder");
    return Term::lam(t->name, replace_at(t->body, p, i + 1, repl));
  }
  throw invalid_position("corrupt position");
}

} // namespace

TermPtr subterm(const TermPtr& t, const Position& p) {
  const Term* s = walk(t, p);
  if (!s) throw invalid_position("position " + p.str() + " does not resolve");
  return clone_at(s);
}

bool position_valid(const TermPtr& t, const Position& p) { return walk(t, p) != nullptr; }

bool is_redex(const TermPtr& t, const Position& p) {
  const Term* s = walk(t, p);
  return s && s->tag == Tag::App && s->fn->tag == Tag::Lam;
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct Parser {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1, col = 1;
  std::vector<std::string> binders; // innermost last

  explicit Parser(const std::string& s) : src(s) {}

  [[noreturn]] void fail(const std::string& msg) { throw parse_error(msg, line, col); }

  char peek() const { return pos < src.size() ? src[pos] : '\0'; }

  void advance() {
    if (pos >= src.size()) return;
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) advance();
  }

  bool eat_lambda() {
    if (peek() == '\\') {
      advance();
      return true;
    }
    // UTF-8 lambda
    if (pos + 1 < src.size() && static_cast<unsigned char>(src[pos]) == 0xCE &&
        static_cast<unsigned char>(src[pos + 1]) == 0xBB) {
      advance();
      advance();
      return true;
    }
    return false;
  }

  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)); }

  std::string ident() {
    skip_ws();
    if (!ident_char(peek())) fail("expected identifier");
    std::string s;
    while (ident_char(peek())) {
      s += peek();
      advance();
    }
    return s;
  }

  TermPtr var(const std::string& n) {
    for (int i = static_cast<int>(binders.size()) - 1; i >= 0; --i) {
      if (binders[static_cast<std::size_t>(i)] == n)
        return Term::bound(static_cast<int>(binders.size()) - 1 - i);
    }
    return Term::free(n);
  }

  TermPtr term() {
    skip_ws();
    if (eat_lambda()) return lambda_tail();
    return application();
  }

  TermPtr lambda_tail() {
    std::string n = ident();
    skip_ws();
    if (peek() != '.') fail("expected '.' after binder");
    advance();
    binders.push_back(n);
    TermPtr body = term();
    binders.pop_back();
    return Term::lam(n, body);
  }

  TermPtr application() {
    TermPtr cur = atom_required();
    for (;;) {
      skip_ws();
      if (eat_lambda()) {
        // trailing abstraction absorbs the rest (body extends maximally right)
        cur = Term::app(cur, lambda_tail());
        return cur;
      }
      std::optional<TermPtr> next = atom_optional();
      if (!next) return cur;
      cur = Term::app(cur, *next);
    }
  }

  TermPtr atom_required() {
    std::optional<TermPtr> a = atom_optional();
    if (!a) fail("expected a term");
    return *a;
  }

  std::optional<TermPtr> atom_optional() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      advance();
      TermPtr t = term();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      advance();
      return t;
    }
    if (ident_char(c)) return var(ident());
    return std::nullopt;
  }
};

} // namespace

TermPtr parse(const std::string& text) {
  Parser p(text);
  TermPtr t = p.term();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return t;
}

// ---------------------------------------------------------------------------
// printing

namespace {

// names the body will display for variables pointing past the new binder
void display_names(const Term* t, int depth, const std::vector<std::string>& stack,
                   std::set<std::string>& out) {
  switch (t->tag) {
  case Tag::BoundVar:
    if (t->index >= depth) {
      std::size_t k = stack.size() - 1 - static_cast<std::size_t>(t->index - depth);
      out.insert(stack[k]);
    }
    return;
  case Tag::FreeVar: out.insert(t->name); return;
  case Tag::Lam: display_names(t->body.get(), depth + 1, stack, out); return;
  case Tag::App:
    display_names(t->fn.get(), depth, stack, out);
    display_names(t->arg.get(), depth, stack, out);
    return;
  }
}

std::string fresh_name(std::string base, const std::set<std::string>& taken) {
  if (base.empty()) base = "x";
  if (!taken.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!taken.count(cand)) return cand;
  }
}

enum class Ctx { Top, AppFn, AppArg };

void render_rec(const Term* t, std::vector<std::string>& stack, Ctx ctx, std::string& out) {
  switch (t->tag) {
  case Tag::BoundVar: {
    std::size_t k = stack.size() - 1 - static_cast<std::size_t>(t->index);
    out += stack[k];
    return;
  }
  case Tag::FreeVar: out += t->name; return;
  case Tag::Lam: {
    bool parens = ctx != Ctx::Top;
    std::set<std::string> taken;
    display_names(t->body.get(), 1, stack, taken);
    std::string n = fresh_name(t->name, taken);
    if (parens) out += '(';
    out += '\\';
    out += n;
    out += '.';
    stack.push_back(n);
    render_rec(t->body.get(), stack, Ctx::Top, out);
    stack.pop_back();
    if (parens) out += ')';
    return;
  }
  case Tag::App: {
    bool parens = ctx == Ctx::AppArg;
    if (parens) out += '(';
    render_rec(t->fn.get(), stack, Ctx::AppFn, out);
    out += ' ';
    render_rec(t->arg.get(), stack, Ctx::AppArg, out);
    if (parens) out += ')';
    return;
  }
  }
}

} // namespace

std::string render(const TermPtr& t) {
  std::string out;
  std::vector<std::string> stack;
  render_rec(t.get(), stack, Ctx::Top, out);
  return out;
}

// ---------------------------------------------------------------------------
// substitution and contraction

namespace {

TermPtr subst_free(const TermPtr& m, const std::string& x, const TermPtr& n) {
  switch (m->tag) {
  case Tag::BoundVar: return m;
  case Tag::FreeVar: return m->name == x ? n : m;
  case Tag::Lam: {
    TermPtr b = subst_free(m->body, x, n);
    return b.get() == m->body.get() ? m : Term::lam(m->name, b);
  }
  case Tag::App: {
    TermPtr f = subst_free(m->fn, x, n);
    TermPtr a = subst_free(m->arg, x, n);
    return (f.get() == m->fn.get() && a.get() == m->arg.get()) ? m : Term::app(f, a);
  }
  }
  return m;
}

// replace index `depth`, shift deeper references down by one;
// repl is well-scoped on its own so it needs no lifting
TermPtr open_at(const TermPtr& t, int depth, const TermPtr& repl) {
  switch (t->tag) {
  case Tag::BoundVar:
    if (t->index == depth) return repl;
    if (t->index > depth) return Term::bound(t->index - 1);
    return t;
  case Tag::FreeVar: return t;
  case Tag::Lam: return Term::lam(t->name, open_at(t->body, depth + 1, repl));
  case Tag::App: return Term::app(open_at(t->fn, depth, repl), open_at(t->arg, depth, repl));
  }
  return t;
}

} // namespace

TermPtr substitute(const TermPtr& m, const std::string& x, const TermPtr& n) {
  return subst_free(m, x, n);
}

namespace {

void collect_redexes(const Term* t, Position& cur, std::vector<Redex>& out) {
  switch (t->tag) {
  case Tag::BoundVar:
  case Tag::FreeVar: return;
  case Tag::Lam:
    cur.steps.push_back(Dir::Body);
    collect_redexes(t->body.get(), cur, out);
    cur.steps.pop_back();
    return;
  case Tag::App:
    if (t->fn->tag == Tag::Lam) out.push_back(Redex{cur});
    cur.steps.push_back(Dir::Fn);
    collect_redexes(t->fn.get(), cur, out);
    cur.steps.pop_back();
    cur.steps.push_back(Dir::Arg);
    collect_redexes(t->arg.get(), cur, out);
    cur.steps.pop_back();
    return;
  }
}

} // namespace

std::vector<Redex> redexes(const TermPtr& t) {
  std::vector<Redex> out;
  Position cur;
  collect_redexes(t.get(), cur, out);
  return out;
}

TermPtr contract(const TermPtr& t, const Redex& r) {
  const Term* s = walk(t, r.pos);
  if (!s || s->tag != Tag::App || s->fn->tag != Tag::Lam)
    throw invalid_position("no redex at " + r.pos.str());
  TermPtr reduced = open_at(s->fn->body, 0, s->arg);
  return replace_at(t, r.pos, 0, reduced);
}

// ---------------------------------------------------------------------------
// eta (optional; not used by default suites)

namespace {

bool mentions_index(const Term* t, int depth) {
  switch (t->tag) {
  case Tag::BoundVar: return t->index == depth;
  case Tag::FreeVar: return false;
  case Tag::Lam: return mentions_index(t->body.get(), depth + 1);
  case Tag::App: return mentions_index(t->fn.get(), depth) || mentions_index(t->arg.get(), depth);
  }
  return false;
}

bool is_eta_redex(const Term* t) {
  return t->tag == Tag::Lam && t->body->tag == Tag::App &&
         t->body->arg->tag == Tag::BoundVar && t->body->arg->index == 0 &&
         !mentions_index(t->body->fn.get(), 0);
}

void collect_eta(const Term* t, Position& cur, std::vector<Position>& out) {
  if (is_eta_redex(t)) out.push_back(cur);
  switch (t->tag) {
  case Tag::Lam:
    cur.steps.push_back(Dir::Body);
    collect_eta(t->body.get(), cur, out);
    cur.steps.pop_back();
    return;
  case Tag::App:
    cur.steps.push_back(Dir::Fn);
    collect_eta(t->fn.get(), cur, out);
    cur.steps.pop_back();
    cur.steps.push_back(Dir::Arg);
    collect_eta(t->arg.get(), cur, out);
    cur.steps.pop_back();
    return;
  default: return;
  }
}

TermPtr unshift(const TermPtr& t, int depth) {
  switch (t->tag) {
  case Tag::BoundVar: return t->index > depth ? Term::bound(t->index - 1) : t;
  case Tag::FreeVar: return t;
  case Tag::Lam: return Term::lam(t->name, unshift(t->body, depth + 1));
  case Tag::App: return Term::app(unshift(t->fn, depth), unshift(t->arg, depth));
  }
  return t;
}

} // namespace

std::vector<Position> eta_redexes(const TermPtr& t) {
  std::vector<Position> out;
  Position cur;
  collect_eta(t.get(), cur, out);
  return out;
}

TermPtr eta_contract(const TermPtr& t, const Position& p) {
  const Term* s = walk(t, p);
  if (!s || !is_eta_redex(s)) throw invalid_position("no eta redex at " + p.str());
  TermPtr m = unshift(s->body->fn, 0);
  return replace_at(t, p, 0, m);
}

// ---------------------------------------------------------------------------
// bounded enumeration

namespace {

const char* kHints[] = {"x", "y", "z", "w", "v", "u"};

void enumerate_rec(int size, int depth, const std::vector<std::string>& pool,
                   std::vector<TermPtr>& out) {
  if (size == 1) {
    for (int i = 0; i < depth; ++i) out.push_back(Term::bound(i));
    for (const auto& n : pool) out.push_back(Term::free(n));
    return;
  }
  // abstractions
  std::vector<TermPtr> bodies;
  enumerate_rec(size - 1, depth + 1, pool, bodies);
  std::string hint = kHints[depth % 6];
  if (depth >= 6) hint += std::to_string(depth / 6);
  for (auto& b : bodies) out.push_back(Term::lam(hint, b));
  // applications
  for (int i = 1; i <= size - 2; ++i) {
    std::vector<TermPtr> fns, args;
    enumerate_rec(i, depth, pool, fns);
    enumerate_rec(size - 1 - i, depth, pool, args);
    for (auto& f : fns)
      for (auto& a : args) out.push_back(Term::app(f, a));
  }
}

} // namespace

std::vector<TermPtr> enumerate_terms(int max_size, const std::vector<std::string>& pool) {
  std::vector<TermPtr> out;
  for (int s = 1; s <= max_size; ++s) enumerate_rec(s, 0, pool, out);
  return out;
}

std::vector<TermPtr> closed_terms(int max_size) { return enumerate_terms(max_size, {}); }

// ---------------------------------------------------------------------------
// json

nlohmann::json term_to_json(const TermPtr& t) {
  switch (t->tag) {
  case Tag::BoundVar: return {{"var", t->index}};
  case Tag::FreeVar: return {{"var", t->name}};
  case Tag::Lam: return {{"lam", {{"hint", t->name}, {"body", term_to_json(t->body)}}}};
  case Tag::App: return {{"app", {term_to_json(t->fn), term_to_json(t->arg)}}};
  }
  return nullptr;
}

namespace {

TermPtr from_json_at(const nlohmann::json& j, int depth) {
  if (!j.is_object()) throw error("term json: expected object");
  if (j.contains("var")) {
    const auto& v = j.at("var");
    if (v.is_number_integer()) {
      int i = v.get<int>();
      if (i < 0 || i >= depth) throw error("term json: bound index out of scope");
      return Term::bound(i);
    }
    return Term::free(v.get<std::string>());
  }
  if (j.contains("lam")) {
    const auto& l = j.at("lam");
    return Term::lam(l.value("hint", "x"), from_json_at(l.at("body"), depth + 1));
  }
  if (j.contains("app")) {
    const auto& a = j.at("app");
    if (!a.is_array() || a.size() != 2) throw error("term json: app wants [fn, arg]");
    return Term::app(from_json_at(a[0], depth), from_json_at(a[1], depth));
  }
  throw error("term json: unknown tag");
}

} // namespace

TermPtr term_from_json(const nlohmann::json& j) { return from_json_at(j, 0); }

nlohmann::json position_to_json(const Position& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (Dir d : p.steps) {
    switch (d) {
    case Dir::Fn: arr.push_back("fn"); break;
    case Dir::Arg: arr.push_back("arg"); break;
    case Dir::Body: arr.push_back("body"); break;
    }
  }
  return arr;
}

Position position_from_json(const nlohmann::json& j) {
  Position p;
  for (const auto& e : j) {
    std::string s = e.get<std::string>();
    if (s == "fn") p.steps.push_back(Dir::Fn);
    else if (s == "arg") p.steps.push_back(Dir::Arg);
    else if (s == "body") p.steps.push_back(Dir::Body);
    else throw error("position json: unknown step " + s);
  }
  return p;
}

} // namespace hodt::lam
