#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hodt/budget.hpp"

namespace hodt::cat {

// A finite category as explicit tables: objects 0..n-1, morphisms 0..m-1
// with source/target, a full composition table and chosen identities.
class FinCategory {
public:
  struct Morphism {
    int src, dst;
    std::string label;
  };

  std::string name;
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::vector<int> identity;           // per object
  std::vector<std::vector<int>> table; // table[g][f] = g∘f, -1 when not composable

  int num_objects() const { return static_cast<int>(objects.size()); }
  int num_morphisms() const { return static_cast<int>(morphisms.size()); }
  int src(int f) const { return morphisms[static_cast<std::size_t>(f)].src; }
  int dst(int f) const { return morphisms[static_cast<std::size_t>(f)].dst; }
  int id(int obj) const { return identity[static_cast<std::size_t>(obj)]; }
  bool composable(int g, int f) const { return dst(f) == src(g); }
  int compose(int g, int f) const; // g∘f, throws on mismatch

  std::vector<int> hom(int a, int b) const;
  bool is_identity(int f) const;
  bool has_inverse(int f) const;
  bool is_groupoid() const;
  // lowest-id object with exactly one morphism to every object, if any
  std::optional<int> initial_object() const;

  // associativity, identities, endpoint coherence of the full table
  void validate() const;
};

// standard small categories
FinCategory terminal_category();
FinCategory discrete_category(int n);
FinCategory arrow_category();            // the poset [1]
FinCategory chain_category(int n);       // the poset [n]
FinCategory group_z2();                  // one object, one involution
FinCategory idempotent_monoid();         // one object, {id, e}, ee = e
FinCategory parallel_pair();             // two objects, two parallel arrows
FinCategory walking_iso();               // two objects, mutually inverse arrows
FinCategory coproduct(const FinCategory& a, const FinCategory& b);
FinCategory product(const FinCategory& a, const FinCategory& b);
FinCategory opposite(const FinCategory& a);

// object/morphism index pairing for product categories; `b` is the second
// factor of the product the indices refer to
int product_object(const FinCategory& b, int oa, int ob);
std::pair<int, int> product_object_parts(const FinCategory& b, int o);
int product_morphism(const FinCategory& b, int fa, int fb);
std::pair<int, int> product_morphism_parts(const FinCategory& b, int f);

// functor between finite categories, as explicit tables
struct Functor {
  const FinCategory* source = nullptr;
  const FinCategory* target = nullptr;
  std::vector<int> object_map;
  std::vector<int> morphism_map;

  int on_object(int o) const { return object_map[static_cast<std::size_t>(o)]; }
  int on_morphism(int f) const { return morphism_map[static_cast<std::size_t>(f)]; }
  void validate() const; // endpoint coherence, identities, composition
};

Functor identity_functor(const FinCategory& c);
Functor compose_functors(const Functor& g, const Functor& f);
bool functors_equal(const Functor& f, const Functor& g);
std::vector<Functor> enumerate_functors(const FinCategory& a, const FinCategory& b, int budget);

// every category with <= max_objects objects and <= max_morphisms
// morphisms (identities included), one representative per isomorphism
// class, deterministic order
std::vector<FinCategory> enumerate_categories(int max_objects, int max_morphisms);

nlohmann::json category_to_json(const FinCategory& c);
FinCategory category_from_json(const nlohmann::json& j);

} // namespace hodt::cat
