#include "hodt/fincat.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

namespace hodt::cat {

int FinCategory::compose(int g, int f) const {
  if (!composable(g, f)) throw error("compose: endpoint mismatch");
  int r = table[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)];
  if (r < 0) throw error("compose: missing table entry");
  return r;
}

std::vector<int> FinCategory::hom(int a, int b) const {
  std::vector<int> out;
  for (int f = 0; f < num_morphisms(); ++f)
    if (src(f) == a && dst(f) == b) out.push_back(f);
  return out;
}

bool FinCategory::is_identity(int f) const { return src(f) == dst(f) && id(src(f)) == f; }

bool FinCategory::has_inverse(int f) const {
  for (int g : hom(dst(f), src(f)))
    if (compose(g, f) == id(src(f)) && compose(f, g) == id(dst(f))) return true;
  return false;
}

bool FinCategory::is_groupoid() const {
  for (int f = 0; f < num_morphisms(); ++f)
    if (!has_inverse(f)) return false;
  return true;
}

std::optional<int> FinCategory::initial_object() const {
  for (int i = 0; i < num_objects(); ++i) {
    bool ok = true;
    for (int x = 0; x < num_objects() && ok; ++x) ok = hom(i, x).size() == 1;
    if (ok) return i;
  }
  return std::nullopt;
}

void FinCategory::validate() const {
  int n = num_objects(), m = num_morphisms();
  if (static_cast<int>(identity.size()) != n) throw error("category: identity list size");
  if (static_cast<int>(table.size()) != m) throw error("category: table rows");
  for (int o = 0; o < n; ++o) {
    int e = id(o);
    if (e < 0 || e >= m || src(e) != o || dst(e) != o) throw error("category: bad identity");
  }
  for (int g = 0; g < m; ++g) {
    if (static_cast<int>(table[static_cast<std::size_t>(g)].size()) != m)
      throw error("category: table cols");
    for (int f = 0; f < m; ++f) {
      int r = table[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)];
      if (composable(g, f)) {
        if (r < 0 || r >= m || src(r) != src(f) || dst(r) != dst(g))
          throw error("category: bad composite endpoint");
      } else if (r != -1) {
        throw error("category: entry for non-composable pair");
      }
    }
  }
  for (int o = 0; o < n; ++o) {
    for (int f = 0; f < m; ++f) {
      if (src(f) == o && compose(f, id(o)) != f) throw error("category: right identity law");
      if (dst(f) == o && compose(id(o), f) != f) throw error("category: left identity law");
    }
  }
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g) {
      if (!composable(g, f)) continue;
      for (int h = 0; h < m; ++h) {
        if (!composable(h, g)) continue;
        if (compose(compose(h, g), f) != compose(h, compose(g, f)))
          throw error("category: associativity");
      }
    }
}

// ---------------------------------------------------------------------------
// builders

namespace {

FinCategory from_tables(std::string name, int objects, std::vector<FinCategory::Morphism> ms,
                        std::vector<int> ids,
                        const std::vector<std::tuple<int, int, int>>& composites) {
  FinCategory c;
  c.name = std::move(name);
  for (int i = 0; i < objects; ++i) c.objects.push_back("o" + std::to_string(i));
  c.morphisms = std::move(ms);
  c.identity = std::move(ids);
  int m = c.num_morphisms();
  c.table.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), -1));
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f) {
      if (!c.composable(g, f)) continue;
      if (c.is_identity(g)) c.table[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)] = f;
      else if (c.is_identity(f))
        c.table[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)] = g;
    }
  for (auto [g, f, r] : composites)
    c.table[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)] = r;
  c.validate();
  return c;
}

} // namespace

FinCategory terminal_category() { return from_tables("terminal", 1, {{0, 0, "id"}}, {0}, {}); }

FinCategory discrete_category(int n) {
  std::vector<FinCategory::Morphism> ms;
  std::vector<int> ids;
  for (int i = 0; i < n; ++i) {
    ms.push_back({i, i, "id" + std::to_string(i)});
    ids.push_back(i);
  }
  return from_tables("discrete" + std::to_string(n), n, std::move(ms), std::move(ids), {});
}

FinCategory arrow_category() {
  return from_tables("poset[1]", 2, {{0, 0, "id0"}, {1, 1, "id1"}, {0, 1, "le"}}, {0, 1}, {});
}

FinCategory chain_category(int n) {
  FinCategory c;
  c.name = "poset[" + std::to_string(n) + "]";
  std::map<std::pair<int, int>, int> arrow;
  for (int i = 0; i <= n; ++i) c.objects.push_back("o" + std::to_string(i));
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      arrow[{i, j}] = c.num_morphisms();
      c.morphisms.push_back({i, j, "le" + std::to_string(i) + std::to_string(j)});
    }
  for (int i = 0; i <= n; ++i) c.identity.push_back(arrow[{i, i}]);
  int m = c.num_morphisms();
  c.table.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), -1));
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f)
      if (c.composable(g, f))
        c.table[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)] =
            arrow[{c.src(f), c.dst(g)}];
  c.validate();
  return c;
}

FinCategory group_z2() {
  return from_tables("z2", 1, {{0, 0, "id"}, {0, 0, "s"}}, {0}, {{1, 1, 0}});
}

FinCategory idempotent_monoid() {
  return from_tables("idem", 1, {{0, 0, "id"}, {0, 0, "e"}}, {0}, {{1, 1, 1}});
}

FinCategory parallel_pair() {
  return from_tables("parallel", 2, {{0, 0, "id0"}, {1, 1, "id1"}, {0, 1, "f"}, {0, 1, "g"}},
                     {0, 1}, {});
}

FinCategory walking_iso() {
  return from_tables("iso", 2, {{0, 0, "id0"}, {1, 1, "id1"}, {0, 1, "u"}, {1, 0, "v"}}, {0, 1},
                     {{3, 2, 0}, {2, 3, 1}});
}

FinCategory coproduct(const FinCategory& a, const FinCategory& b) {
  FinCategory c;
  c.name = a.name + "+" + b.name;
  c.objects = a.objects;
  for (const auto& o : b.objects) c.objects.push_back(o + "'");
  int oa = a.num_objects(), ma = a.num_morphisms(), mb = b.num_morphisms();
  for (const auto& m : a.morphisms) c.morphisms.push_back(m);
  for (const auto& m : b.morphisms) c.morphisms.push_back({m.src + oa, m.dst + oa, m.label + "'"});
  for (int i = 0; i < oa; ++i) c.identity.push_back(a.id(i));
  for (int i = 0; i < b.num_objects(); ++i) c.identity.push_back(b.id(i) + ma);
  int m = ma + mb;
  c.table.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), -1));
  for (int g = 0; g < ma; ++g)
    for (int f = 0; f < ma; ++f)
      c.table[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)] =
          a.table[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)];
  for (int g = 0; g < mb; ++g)
    for (int f = 0; f < mb; ++f) {
      int r = b.table[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)];
      c.table[static_cast<std::size_t>(g + ma)][static_cast<std::size_t>(f + ma)] =
          r < 0 ? -1 : r + ma;
    }
  c.validate();
  return c;
}

int product_object(const FinCategory& b, int oa, int ob) { return oa * b.num_objects() + ob; }
std::pair<int, int> product_object_parts(const FinCategory& b, int o) {
  return {o / b.num_objects(), o % b.num_objects()};
}
int product_morphism(const FinCategory& b, int fa, int fb) { return fa * b.num_morphisms() + fb; }
std::pair<int, int> product_morphism_parts(const FinCategory& b, int f) {
  return {f / b.num_morphisms(), f % b.num_morphisms()};
}

FinCategory product(const FinCategory& a, const FinCategory& b) {
  FinCategory c;
  c.name = a.name + "x" + b.name;
  for (int i = 0; i < a.num_objects(); ++i)
    for (int j = 0; j < b.num_objects(); ++j)
      c.objects.push_back("(" + a.objects[static_cast<std::size_t>(i)] + "," +
                          b.objects[static_cast<std::size_t>(j)] + ")");
  for (int f = 0; f < a.num_morphisms(); ++f)
    for (int g = 0; g < b.num_morphisms(); ++g)
      c.morphisms.push_back({product_object(b, a.src(f), b.src(g)),
                             product_object(b, a.dst(f), b.dst(g)),
                             a.morphisms[static_cast<std::size_t>(f)].label + "," +
                                 b.morphisms[static_cast<std::size_t>(g)].label});
  for (int i = 0; i < a.num_objects(); ++i)
    for (int j = 0; j < b.num_objects(); ++j)
      c.identity.push_back(product_morphism(b, a.id(i), b.id(j)));
  int m = c.num_morphisms();
  c.table.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), -1));
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f) {
      if (!c.composable(g, f)) continue;
      auto [ga, gb] = product_morphism_parts(b, g);
      auto [fa, fb] = product_morphism_parts(b, f);
      c.table[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)] =
          product_morphism(b, a.compose(ga, fa), b.compose(gb, fb));
    }
  c.validate();
  return c;
}

FinCategory opposite(const FinCategory& a) {
  FinCategory c;
  c.name = a.name + "^op";
  c.objects = a.objects;
  for (const auto& m : a.morphisms) c.morphisms.push_back({m.dst, m.src, m.label});
  c.identity = a.identity;
  int m = a.num_morphisms();
  c.table.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), -1));
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f)
      if (c.composable(g, f))
        c.table[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)] =
            a.table[static_cast<std::size_t>(f)][static_cast<std::size_t>(g)];
  c.validate();
  return c;
}

// ---------------------------------------------------------------------------
// functors

void Functor::validate() const {
  const FinCategory& a = *source;
  const FinCategory& b = *target;
  if (static_cast<int>(object_map.size()) != a.num_objects() ||
      static_cast<int>(morphism_map.size()) != a.num_morphisms())
    throw error("functor: table sizes");
  for (int f = 0; f < a.num_morphisms(); ++f) {
    int ff = on_morphism(f);
    if (b.src(ff) != on_object(a.src(f)) || b.dst(ff) != on_object(a.dst(f)))
      throw error("functor: endpoint coherence");
  }
  for (int o = 0; o < a.num_objects(); ++o)
    if (on_morphism(a.id(o)) != b.id(on_object(o))) throw error("functor: identities");
  for (int g = 0; g < a.num_morphisms(); ++g)
    for (int f = 0; f < a.num_morphisms(); ++f)
      if (a.composable(g, f) &&
          on_morphism(a.compose(g, f)) != b.compose(on_morphism(g), on_morphism(f)))
        throw error("functor: composition");
}

Functor identity_functor(const FinCategory& c) {
  Functor f;
  f.source = f.target = &c;
  for (int o = 0; o < c.num_objects(); ++o) f.object_map.push_back(o);
  for (int m = 0; m < c.num_morphisms(); ++m) f.morphism_map.push_back(m);
  return f;
}

Functor compose_functors(const Functor& g, const Functor& f) {
  if (f.target != g.source) throw error("functor composition: endpoint mismatch");
  Functor h;
  h.source = f.source;
  h.target = g.target;
  for (int o : f.object_map) h.object_map.push_back(g.on_object(o));
  for (int m : f.morphism_map) h.morphism_map.push_back(g.on_morphism(m));
  return h;
}

bool functors_equal(const Functor& f, const Functor& g) {
  return f.object_map == g.object_map && f.morphism_map == g.morphism_map;
}

std::vector<Functor> enumerate_functors(const FinCategory& a, const FinCategory& b, int budget) {
  std::vector<Functor> out;
  std::vector<int> omap(static_cast<std::size_t>(a.num_objects()));
  std::vector<int> mmap(static_cast<std::size_t>(a.num_morphisms()), -1);

  auto assign_morphisms = [&](auto&& self, int f) -> void {
    if (f == a.num_morphisms()) {
      Functor fun;
      fun.source = &a;
      fun.target = &b;
      fun.object_map = omap;
      fun.morphism_map = mmap;
      fun.validate();
      if (static_cast<int>(out.size()) >= budget)
        throw budget_exceeded("functor enumeration budget");
      out.push_back(std::move(fun));
      return;
    }
    if (a.is_identity(f)) {
      mmap[static_cast<std::size_t>(f)] = b.id(omap[static_cast<std::size_t>(a.src(f))]);
      self(self, f + 1);
      mmap[static_cast<std::size_t>(f)] = -1;
      return;
    }
    for (int im : b.hom(omap[static_cast<std::size_t>(a.src(f))],
                        omap[static_cast<std::size_t>(a.dst(f))])) {
      mmap[static_cast<std::size_t>(f)] = im;
      bool ok = true;
      for (int g = 0; g <= f && ok; ++g) {
        if (mmap[static_cast<std::size_t>(g)] < 0) continue;
        if (a.composable(g, f)) {
          int comp = a.compose(g, f);
          if (comp <= f && mmap[static_cast<std::size_t>(comp)] >= 0 &&
              mmap[static_cast<std::size_t>(comp)] !=
                  b.compose(mmap[static_cast<std::size_t>(g)], mmap[static_cast<std::size_t>(f)]))
            ok = false;
        }
        if (ok && a.composable(f, g)) {
          int comp = a.compose(f, g);
          if (comp <= f && mmap[static_cast<std::size_t>(comp)] >= 0 &&
              mmap[static_cast<std::size_t>(comp)] !=
                  b.compose(mmap[static_cast<std::size_t>(f)], mmap[static_cast<std::size_t>(g)]))
            ok = false;
        }
      }
      if (ok) self(self, f + 1);
    }
    mmap[static_cast<std::size_t>(f)] = -1;
  };

  auto assign_objects = [&](auto&& self, int o) -> void {
    if (o == a.num_objects()) {
      std::fill(mmap.begin(), mmap.end(), -1);
      assign_morphisms(assign_morphisms, 0);
      return;
    }
    for (int im = 0; im < b.num_objects(); ++im) {
      omap[static_cast<std::size_t>(o)] = im;
      self(self, o + 1);
    }
  };
  assign_objects(assign_objects, 0);
  return out;
}

// ---------------------------------------------------------------------------
// exhaustive enumeration of small categories up to isomorphism

namespace {

struct Skeleton {
  int objects;
  std::vector<std::pair<int, int>> ends; // identities first, then (src,dst) blocks
  std::vector<int> identity;
};

std::vector<Skeleton> skeletons(int max_objects, int max_morphisms) {
  std::vector<Skeleton> out;
  for (int o = 1; o <= max_objects; ++o) {
    int extra_max = max_morphisms - o;
    if (extra_max < 0) continue;
    std::vector<int> counts(static_cast<std::size_t>(o * o), 0);
    auto rec = [&](auto&& self, std::size_t block, int left) -> void {
      if (block == counts.size()) {
        Skeleton s;
        s.objects = o;
        for (int i = 0; i < o; ++i) {
          s.identity.push_back(static_cast<int>(s.ends.size()));
          s.ends.emplace_back(i, i);
        }
        for (int i = 0; i < o; ++i)
          for (int j = 0; j < o; ++j)
            for (int k = 0; k < counts[static_cast<std::size_t>(i * o + j)]; ++k)
              s.ends.emplace_back(i, j);
        out.push_back(std::move(s));
        return;
      }
      for (int c = 0; c <= left; ++c) {
        counts[block] = c;
        self(self, block + 1, left - c);
      }
      counts[block] = 0;
    };
    rec(rec, 0, extra_max);
  }
  return out;
}

struct TableSearch {
  const Skeleton& sk;
  int m;
  std::vector<std::vector<int>> table;
  std::vector<std::pair<int, int>> slots; // composable non-identity pairs
  std::vector<FinCategory>& results;
  std::set<std::string>& seen;

  TableSearch(const Skeleton& s, std::vector<FinCategory>& res, std::set<std::string>& sn)
      : sk(s), m(static_cast<int>(s.ends.size())), results(res), seen(sn) {
    table.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), -1));
    for (int g = 0; g < m; ++g)
      for (int f = 0; f < m; ++f) {
        if (sk.ends[static_cast<std::size_t>(f)].second !=
            sk.ends[static_cast<std::size_t>(g)].first)
          continue;
        if (is_id(g)) table[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)] = f;
        else if (is_id(f)) table[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)] = g;
        else slots.emplace_back(g, f);
      }
  }

  bool is_id(int f) const { return f < sk.objects; }
  int entry(int g, int f) const {
    return table[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)];
  }

  bool assoc_ok(int g, int f) const {
    for (int h = 0; h < m; ++h) {
      if (sk.ends[static_cast<std::size_t>(g)].second ==
          sk.ends[static_cast<std::size_t>(h)].first) {
        int hg = entry(h, g), gf = entry(g, f);
        if (hg >= 0 && gf >= 0) {
          int l = entry(hg, f), r = entry(h, gf);
          if (l >= 0 && r >= 0 && l != r) return false;
        }
      }
      if (sk.ends[static_cast<std::size_t>(h)].second ==
          sk.ends[static_cast<std::size_t>(f)].first) {
        int gf = entry(g, f), fh = entry(f, h);
        if (gf >= 0 && fh >= 0) {
          int l = entry(gf, h), r = entry(g, fh);
          if (l >= 0 && r >= 0 && l != r) return false;
        }
      }
    }
    return true;
  }

  void run(std::size_t slot) {
    if (slot == slots.size()) {
      emit();
      return;
    }
    auto [g, f] = slots[slot];
    int s = sk.ends[static_cast<std::size_t>(f)].first;
    int d = sk.ends[static_cast<std::size_t>(g)].second;
    for (int r = 0; r < m; ++r) {
      if (sk.ends[static_cast<std::size_t>(r)] != std::make_pair(s, d)) continue;
      table[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)] = r;
      if (assoc_ok(g, f)) run(slot + 1);
    }
    table[static_cast<std::size_t>(g)][static_cast<std::size_t>(f)] = -1;
  }

  void emit() {
    std::string canon = canonical_string();
    if (!seen.insert(canon).second) return;
    FinCategory c;
    c.name = "cat" + std::to_string(results.size());
    for (int i = 0; i < sk.objects; ++i) c.objects.push_back("o" + std::to_string(i));
    for (int f = 0; f < m; ++f)
      c.morphisms.push_back({sk.ends[static_cast<std::size_t>(f)].first,
                             sk.ends[static_cast<std::size_t>(f)].second,
                             "m" + std::to_string(f)});
    c.identity = sk.identity;
    c.table = table;
    c.validate();
    results.push_back(std::move(c));
  }

  // lexicographically least relabeling over object permutations combined
  // with per-block morphism permutations (identities pinned)
  std::string canonical_string() {
    std::vector<int> objperm(static_cast<std::size_t>(sk.objects));
    for (int i = 0; i < sk.objects; ++i) objperm[static_cast<std::size_t>(i)] = i;
    std::sort(objperm.begin(), objperm.end());
    std::string best;
    do {
      relabel_morphisms(objperm, best);
    } while (std::next_permutation(objperm.begin(), objperm.end()));
    return best;
  }

  void relabel_morphisms(const std::vector<int>& objperm, std::string& best) {
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(sk.objects * sk.objects));
    for (int f = sk.objects; f < m; ++f) {
      auto [s, d] = sk.ends[static_cast<std::size_t>(f)];
      int ns = objperm[static_cast<std::size_t>(s)], nd = objperm[static_cast<std::size_t>(d)];
      blocks[static_cast<std::size_t>(ns * sk.objects + nd)].push_back(f);
    }
    std::vector<int> old_of_new(static_cast<std::size_t>(m), -1);
    for (int i = 0; i < sk.objects; ++i)
      for (int j = 0; j < sk.objects; ++j)
        if (objperm[static_cast<std::size_t>(j)] == i)
          old_of_new[static_cast<std::size_t>(i)] = sk.identity[static_cast<std::size_t>(j)];

    auto rec = [&](auto&& self, std::size_t block, int base) -> void {
      if (block == blocks.size()) {
        std::vector<int> new_of_old(static_cast<std::size_t>(m));
        for (int nf = 0; nf < m; ++nf)
          new_of_old[static_cast<std::size_t>(old_of_new[static_cast<std::size_t>(nf)])] = nf;
        std::string s;
        s.reserve(static_cast<std::size_t>(m * m + 2 * m));
        for (int f = 0; f < m; ++f) {
          auto [a, b] = sk.ends[static_cast<std::size_t>(old_of_new[static_cast<std::size_t>(f)])];
          s += static_cast<char>('0' + objperm[static_cast<std::size_t>(a)]);
          s += static_cast<char>('0' + objperm[static_cast<std::size_t>(b)]);
        }
        for (int g = 0; g < m; ++g)
          for (int f = 0; f < m; ++f) {
            int e = entry(old_of_new[static_cast<std::size_t>(g)],
                          old_of_new[static_cast<std::size_t>(f)]);
            s += e < 0 ? '.' : static_cast<char>('A' + new_of_old[static_cast<std::size_t>(e)]);
          }
        if (best.empty() || s < best) best = s;
        return;
      }
      auto& blk = blocks[block];
      if (blk.empty()) {
        self(self, block + 1, base);
        return;
      }
      std::sort(blk.begin(), blk.end());
      do {
        for (std::size_t k = 0; k < blk.size(); ++k)
          old_of_new[static_cast<std::size_t>(base + static_cast<int>(k))] = blk[k];
        self(self, block + 1, base + static_cast<int>(blk.size()));
      } while (std::next_permutation(blk.begin(), blk.end()));
    };
    rec(rec, 0, sk.objects);
  }
};

} // namespace

std::vector<FinCategory> enumerate_categories(int max_objects, int max_morphisms) {
  std::vector<FinCategory> results;
  std::set<std::string> seen;
  for (const Skeleton& sk : skeletons(max_objects, max_morphisms)) {
    TableSearch search(sk, results, seen);
    search.run(0);
  }
  return results;
}

// ---------------------------------------------------------------------------
// json

nlohmann::json category_to_json(const FinCategory& c) {
  nlohmann::json ms = nlohmann::json::array();
  for (int f = 0; f < c.num_morphisms(); ++f)
    ms.push_back({{"id", f},
                  {"src", c.src(f)},
                  {"dst", c.dst(f)},
                  {"label", c.morphisms[static_cast<std::size_t>(f)].label}});
  nlohmann::json table = nlohmann::json::array();
  for (const auto& row : c.table) {
    nlohmann::json r = nlohmann::json::array();
    for (int e : row) {
      if (e < 0) r.push_back(nullptr);
      else r.push_back(e);
    }
    table.push_back(r);
  }
  return {{"name", c.name},
          {"objects", c.objects},
          {"morphisms", ms},
          {"compose", table},
          {"identities", c.identity}};
}

FinCategory category_from_json(const nlohmann::json& j) {
  FinCategory c;
  c.name = j.value("name", "category");
  for (const auto& o : j.at("objects")) c.objects.push_back(o.get<std::string>());
  for (const auto& mj : j.at("morphisms")) {
    FinCategory::Morphism m;
    m.src = mj.at("src").get<int>();
    m.dst = mj.at("dst").get<int>();
    m.label = mj.value("label", "m" + std::to_string(c.morphisms.size()));
    if (mj.contains("id") && mj.at("id").get<int>() != static_cast<int>(c.morphisms.size()))
      throw error("category json: morphism ids must be consecutive from 0");
    c.morphisms.push_back(m);
  }
  for (const auto& row : j.at("compose")) {
    std::vector<int> r;
    for (const auto& e : row) r.push_back(e.is_null() ? -1 : e.get<int>());
    c.table.push_back(std::move(r));
  }
  for (const auto& e : j.at("identities")) c.identity.push_back(e.get<int>());
  c.validate();
  return c;
}

} // namespace hodt::cat
