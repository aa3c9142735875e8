#include "eqc/fincat.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <set>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace eqc::fincat {

namespace {

std::uint64_t table_key(Obj s, Obj t, const std::vector<int>& tab) {
  std::uint64_t h = 1469598103934665603ULL;
  h = fnv1a(h, &s, sizeof s);
  h = fnv1a(h, &t, sizeof t);
  if (!tab.empty()) h = fnv1a(h, tab.data(), tab.size() * sizeof(int));
  return h;
}

}  // namespace

Obj FinCategory::obj_index(const std::string& id) const {
  for (int i = 0; i < num_objects(); ++i)
    if (obj_ids_[i] == id) return i;
  return -1;
}

Arr FinCategory::arr_index(const std::string& id) const {
  for (int i = 0; i < num_arrows(); ++i)
    if (arr_ids_[i] == id) return i;
  return -1;
}

void FinCategory::index_homs() {
  hom_.assign(std::size_t(num_objects()) * num_objects(), {});
  for (Arr a = 0; a < num_arrows(); ++a)
    hom_[std::size_t(src_[a]) * num_objects() + tgt_[a]].push_back(a);
  if (concrete()) {
    by_table_.clear();
    for (Arr a = 0; a < num_arrows(); ++a)
      by_table_[table_key(src_[a], tgt_[a], tab_[a])].push_back(a);
  }
}

Arr FinCategory::arrow_by_table(Obj s, Obj t, const std::vector<int>& table) const {
  auto it = by_table_.find(table_key(s, t, table));
  if (it == by_table_.end()) return -1;
  for (Arr a : it->second)
    if (src_[a] == s && tgt_[a] == t && tab_[a] == table) return a;
  return -1;
}

Arr FinCategory::compose(Arr g, Arr f) const {
  if (tgt_[f] != src_[g]) return -1;
  if (!concrete()) return comp_[std::size_t(g) * num_arrows() + f];
  std::vector<int> t(tab_[f].size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = tab_[g][tab_[f][i]];
  return arrow_by_table(src_[f], tgt_[g], t);
}

bool FinCategory::is_mono(Arr f) const {
  if (concrete()) {
    std::vector<char> seen(carrier_[tgt_[f]], 0);
    bool injective = true;
    for (int v : tab_[f]) {
      if (seen[v]) { injective = false; break; }
      seen[v] = 1;
    }
    if (injective) return true;
  }
  for (Obj z = 0; z < num_objects(); ++z)
    for (Arr u : hom(z, src_[f]))
      for (Arr v : hom(z, src_[f]))
        if (u != v && compose(f, u) == compose(f, v)) return false;
  return true;
}

FinCategory FinCategory::make_concrete(std::vector<std::string> obj_ids,
                                       std::vector<int> carriers,
                                       std::vector<std::string> arr_ids,
                                       std::vector<Obj> src, std::vector<Obj> tgt,
                                       std::vector<std::vector<int>> tables,
                                       std::vector<Arr> identities) {
  FinCategory c;
  c.obj_ids_ = std::move(obj_ids);
  c.carrier_ = std::move(carriers);
  c.arr_ids_ = std::move(arr_ids);
  c.src_ = std::move(src);
  c.tgt_ = std::move(tgt);
  c.tab_ = std::move(tables);
  c.id_ = std::move(identities);
  c.index_homs();
  return c;
}

FinCategory FinCategory::make_explicit(std::vector<std::string> obj_ids,
                                       std::vector<std::string> arr_ids,
                                       std::vector<Obj> src, std::vector<Obj> tgt,
                                       std::vector<Arr> compose_table,
                                       std::vector<Arr> identities) {
  FinCategory c;
  c.obj_ids_ = std::move(obj_ids);
  c.arr_ids_ = std::move(arr_ids);
  c.src_ = std::move(src);
  c.tgt_ = std::move(tgt);
  c.comp_ = std::move(compose_table);
  c.id_ = std::move(identities);
  c.index_homs();
  return c;
}

std::string CategoryError::describe() const {
  std::string ws;
  for (auto& w : witness) ws += (ws.empty() ? "" : ",") + w;
  switch (kind) {
    case NotAssociative: return "NotAssociative(" + ws + ")";
    case BadIdentity: return "BadIdentity(" + ws + ")";
    case MissingComposite: return "MissingComposite(" + ws + ")";
    case BadTable: return "BadTable(" + ws + ")";
  }
  return "?";
}

std::optional<CategoryError> check_category(const FinCategory& c) {
  for (Obj o = 0; o < c.num_objects(); ++o) {
    Arr i = c.identity(o);
    if (i < 0 || c.src(i) != o || c.tgt(i) != o)
      return CategoryError{CategoryError::BadIdentity, {c.obj_id(o)}};
    if (c.concrete())
      for (std::size_t k = 0; k < c.table(i).size(); ++k)
        if (c.table(i)[k] != int(k))
          return CategoryError{CategoryError::BadIdentity, {c.obj_id(o)}};
  }
  for (Arr a = 0; a < c.num_arrows(); ++a) {
    if (c.concrete()) {
      if (int(c.table(a).size()) != c.carrier(c.src(a)))
        return CategoryError{CategoryError::BadTable, {c.arr_id(a)}};
      for (int v : c.table(a))
        if (v < 0 || v >= c.carrier(c.tgt(a)))
          return CategoryError{CategoryError::BadTable, {c.arr_id(a)}};
    }
    if (c.compose(a, c.identity(c.src(a))) != a ||
        c.compose(c.identity(c.tgt(a)), a) != a)
      return CategoryError{CategoryError::BadIdentity, {c.arr_id(a)}};
  }
  // closure: every composable pair has its composite in the arrow set
  for (Arr f = 0; f < c.num_arrows(); ++f)
    for (Obj z = 0; z < c.num_objects(); ++z)
      for (Arr g : c.hom(c.tgt(f), z))
        if (c.compose(g, f) < 0)
          return CategoryError{CategoryError::MissingComposite, {c.arr_id(f), c.arr_id(g)}};
  // for concrete arrows composition is function composition, which is
  // associative outright; explicit tables get the full triple scan
  if (c.concrete()) return std::nullopt;
  for (Arr f = 0; f < c.num_arrows(); ++f)
    for (Obj z1 = 0; z1 < c.num_objects(); ++z1)
      for (Arr g : c.hom(c.tgt(f), z1))
        for (Obj z2 = 0; z2 < c.num_objects(); ++z2)
          for (Arr h : c.hom(z1, z2))
            if (c.compose(h, c.compose(g, f)) != c.compose(c.compose(h, g), f))
              return CategoryError{CategoryError::NotAssociative,
                                   {c.arr_id(f), c.arr_id(g), c.arr_id(h)}};
  return std::nullopt;
}

Arr pairing(const FinCategory& c, const ProductChoice& p, Arr f, Arr g) {
  if (c.src(f) != c.src(g)) return -1;
  Obj a = c.tgt(f), b = c.tgt(g);
  if (!p.has(a, b)) return -1;
  const Product& pr = p.at(a, b);
  if (c.concrete()) {
    // invert the joint projection pointwise
    std::vector<int> joint(std::size_t(c.carrier(a)) * std::max(c.carrier(b), 1), -1);
    for (int w = 0; w < c.carrier(pr.prod); ++w)
      joint[std::size_t(c.table(pr.pr1)[w]) * std::max(c.carrier(b), 1) +
            c.table(pr.pr2)[w]] = w;
    std::vector<int> t(c.table(f).size());
    for (std::size_t z = 0; z < t.size(); ++z) {
      int w = joint[std::size_t(c.table(f)[z]) * std::max(c.carrier(b), 1) + c.table(g)[z]];
      if (w < 0) return -1;
      t[z] = w;
    }
    return c.arrow_by_table(c.src(f), pr.prod, t);
  }
  for (Arr h : c.hom(c.src(f), pr.prod))
    if (c.compose(pr.pr1, h) == f && c.compose(pr.pr2, h) == g) return h;
  return -1;
}

Arr product_of_arrows(const FinCategory& c, const ProductChoice& p, Arr f, Arr g) {
  if (!p.has(c.src(f), c.src(g))) return -1;
  const Product& d = p.at(c.src(f), c.src(g));
  Arr fp = c.compose(f, d.pr1);
  Arr gp = c.compose(g, d.pr2);
  if (fp < 0 || gp < 0) return -1;
  return pairing(c, p, fp, gp);
}

std::optional<ProductError> check_products(const FinCategory& c, const ProductChoice& p) {
  if (p.terminal < 0) return ProductError{"no terminal object chosen"};
  for (Obj z = 0; z < c.num_objects(); ++z) {
    if (c.hom(z, p.terminal).size() != 1)
      return ProductError{"terminal receives " + std::to_string(c.hom(z, p.terminal).size()) +
                          " arrows from " + c.obj_id(z)};
    if (p.bang[z] != c.hom(z, p.terminal)[0]) return ProductError{"bang arrow mismatch"};
  }
  for (auto& [ab, pr] : p.pairs) {
    auto [a, b] = ab;
    if (c.src(pr.pr1) != pr.prod || c.tgt(pr.pr1) != a || c.src(pr.pr2) != pr.prod ||
        c.tgt(pr.pr2) != b)
      return ProductError{"projection endpoints wrong for " + c.obj_id(a) + "x" + c.obj_id(b)};
    if (pairing(c, p, pr.pr1, pr.pr2) != c.identity(pr.prod))
      return ProductError{"<pr1,pr2> != id at " + c.obj_id(pr.prod)};
    // jointly injective projections give uniqueness wholesale
    bool joint_monic = false;
    if (c.concrete()) {
      std::set<std::pair<int, int>> seen;
      joint_monic = true;
      for (int w = 0; w < c.carrier(pr.prod); ++w)
        if (!seen.insert({c.table(pr.pr1)[w], c.table(pr.pr2)[w]}).second) joint_monic = false;
    }
    for (Obj z = 0; z < c.num_objects(); ++z)
      for (Arr f : c.hom(z, a))
        for (Arr g : c.hom(z, b)) {
          Arr h = pairing(c, p, f, g);
          if (h < 0)
            return ProductError{"no pairing for cospan (" + c.arr_id(f) + "," + c.arr_id(g) + ")"};
          if (c.compose(pr.pr1, h) != f || c.compose(pr.pr2, h) != g)
            return ProductError{"pairing equations fail at " + c.arr_id(h)};
          if (!joint_monic) {
            int count = 0;
            for (Arr h2 : c.hom(z, pr.prod))
              if (c.compose(pr.pr1, h2) == f && c.compose(pr.pr2, h2) == g) ++count;
            if (count != 1)
              return ProductError{"pairing not unique for (" + c.arr_id(f) + "," +
                                  c.arr_id(g) + ")"};
          }
        }
  }
  return std::nullopt;
}

std::optional<ProductError> check_weak_pullbacks(const FinCategory& c,
                                                 const WeakPullbackChoice& w) {
  for (auto& [fg, sq] : w.squares) {
    auto [f, g] = fg;
    if (c.compose(f, sq.p) != c.compose(g, sq.q))
      return ProductError{"square does not commute at (" + c.arr_id(f) + "," + c.arr_id(g) + ")"};
    for (Obj z = 0; z < c.num_objects(); ++z)
      for (Arr h : c.hom(z, c.src(f)))
        for (Arr k : c.hom(z, c.src(g))) {
          if (c.compose(f, h) != c.compose(g, k)) continue;
          bool factors = false;
          for (Arr u : c.hom(z, sq.apex))
            if (c.compose(sq.p, u) == h && c.compose(sq.q, u) == k) { factors = true; break; }
          if (!factors)
            return ProductError{"cone (" + c.arr_id(h) + "," + c.arr_id(k) +
                                ") does not factor through the chosen square"};
        }
  }
  return std::nullopt;
}

Obj ConcreteBuilder::add_object(const std::string& id, int carrier) {
  obj_ids.push_back(id);
  carriers.push_back(carrier);
  return Obj(obj_ids.size() - 1);
}

int ConcreteBuilder::find(Obj s, Obj t, const std::vector<int>& tab) const {
  auto it = index.find(table_key(s, t, tab));
  if (it == index.end()) return -1;
  for (int a : it->second)
    if (src[a] == s && tgt[a] == t && tabs[a] == tab) return a;
  return -1;
}

int ConcreteBuilder::add(Obj s, Obj t, std::vector<int> tab) {
  int found = find(s, t, tab);
  if (found >= 0) return found;
  int a = int(arr_ids.size());
  arr_ids.push_back(obj_ids[s] + ">" + obj_ids[t] + "#" + std::to_string(a));
  src.push_back(s);
  tgt.push_back(t);
  index[table_key(s, t, tab)].push_back(a);
  tabs.push_back(std::move(tab));
  return a;
}

std::vector<int> ConcreteBuilder::identity_table(Obj o) const {
  std::vector<int> t(carriers[o]);
  for (int i = 0; i < carriers[o]; ++i) t[i] = i;
  return t;
}

FinCategory ConcreteBuilder::finish() {
  std::vector<Arr> ids(obj_ids.size());
  for (Obj o = 0; o < Obj(obj_ids.size()); ++o) ids[o] = add(o, o, identity_table(o));
  return FinCategory::make_concrete(obj_ids, carriers, arr_ids, src, tgt, tabs, ids);
}

void saturate_closure(ConcreteBuilder& bld, const std::vector<SaturateProduct>& prods,
                      std::size_t arrow_budget) {
  const int nobj = int(bld.obj_ids.size());
  for (Obj o = 0; o < nobj; ++o) bld.add(o, o, bld.identity_table(o));
  std::vector<std::vector<int>> bucket(std::size_t(nobj) * nobj);
  auto bucket_of = [&](Obj s, Obj t) -> std::vector<int>& {
    return bucket[std::size_t(s) * nobj + t];
  };
  std::vector<std::size_t> queue;
  for (std::size_t a = 0; a < bld.arr_ids.size(); ++a) {
    bucket_of(bld.src[a], bld.tgt[a]).push_back(int(a));
    queue.push_back(a);
  }
  auto add_tracked = [&](Obj s, Obj t, std::vector<int> tab) {
    std::size_t before = bld.arr_ids.size();
    int a = bld.add(s, t, std::move(tab));
    if (bld.arr_ids.size() != before) {
      bucket_of(s, t).push_back(a);
      queue.push_back(std::size_t(a));
    }
  };
  std::vector<std::vector<int>> prod_sides(nobj);
  for (std::size_t i = 0; i < prods.size(); ++i) {
    prod_sides[prods[i].a].push_back(int(i));
    if (prods[i].b != prods[i].a) prod_sides[prods[i].b].push_back(int(i));
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::size_t w = queue[head];
    Obj ws = bld.src[w], wt = bld.tgt[w];
    for (Obj z = 0; z < nobj; ++z) {
      auto& out = bucket_of(wt, z);
      for (std::size_t i = 0, n = out.size(); i < n; ++i) {
        int g = out[i];
        std::vector<int> t(bld.tabs[w].size());
        for (std::size_t j = 0; j < t.size(); ++j) t[j] = bld.tabs[g][bld.tabs[w][j]];
        add_tracked(ws, z, std::move(t));
      }
    }
    for (Obj z = 0; z < nobj; ++z) {
      auto& in = bucket_of(z, ws);
      for (std::size_t i = 0, n = in.size(); i < n; ++i) {
        int f = in[i];
        std::vector<int> t(bld.tabs[f].size());
        for (std::size_t j = 0; j < t.size(); ++j) t[j] = bld.tabs[w][bld.tabs[f][j]];
        add_tracked(z, wt, std::move(t));
      }
    }
    for (int pi : prod_sides[wt]) {
      const auto& pp = prods[pi];
      long nb = bld.carriers[pp.b];
      if (pp.a == wt) {
        auto& sib = bucket_of(ws, pp.b);
        for (std::size_t i = 0, n = sib.size(); i < n; ++i) {
          int g = sib[i];
          std::vector<int> t(bld.tabs[w].size());
          for (std::size_t j = 0; j < t.size(); ++j)
            t[j] = int(bld.tabs[w][j] * nb + bld.tabs[g][j]);
          add_tracked(ws, pp.p, std::move(t));
        }
      }
      if (pp.b == wt) {
        auto& sib = bucket_of(ws, pp.a);
        for (std::size_t i = 0, n = sib.size(); i < n; ++i) {
          int f = sib[i];
          std::vector<int> t(bld.tabs[w].size());
          for (std::size_t j = 0; j < t.size(); ++j)
            t[j] = int(bld.tabs[f][j] * nb + bld.tabs[w][j]);
          add_tracked(ws, pp.p, std::move(t));
        }
      }
    }
    if (bld.arr_ids.size() > arrow_budget) {
      if (getenv("EQC_DEBUG_CLOSURE")) {
        std::map<std::pair<Obj, Obj>, int> cnt;
        for (std::size_t a = 0; a < bld.arr_ids.size(); ++a) cnt[{bld.src[a], bld.tgt[a]}]++;
        for (auto& [k, v] : cnt)
          if (v > 500)
            fprintf(stderr, "%s -> %s : %d\n", bld.obj_ids[k.first].c_str(),
                    bld.obj_ids[k.second].c_str(), v);
      }
      throw std::runtime_error("saturate_closure: closure exceeded the arrow budget");
    }
  }
}

namespace {

void enumerate_tables(int dom, int cod, const std::function<void(const std::vector<int>&)>& f) {
  if (dom == 0) {
    f({});
    return;
  }
  if (cod == 0) return;  // no functions from nonempty to empty
  std::vector<int> t(dom, 0);
  while (true) {
    f(t);
    int i = 0;
    while (i < dom && ++t[i] == cod) t[i++] = 0;
    if (i == dom) break;
  }
}

}  // namespace

Result<FinSetFragment, NotClosed> finset_category(std::vector<long> sizes, long cap) {
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  if (std::find(sizes.begin(), sizes.end(), 1) == sizes.end())
    throw std::invalid_argument("finset_category: 1 must be a size");
  auto member = [&](long n) { return std::binary_search(sizes.begin(), sizes.end(), n); };
  for (long a : sizes)
    for (long b : sizes)
      if (a * b <= cap && !member(a * b)) return NotClosed{a, b};

  ConcreteBuilder bld;
  for (long n : sizes) bld.add_object("N" + std::to_string(n), int(n));
  auto obj_of = [&](long n) {
    return Obj(std::lower_bound(sizes.begin(), sizes.end(), n) - sizes.begin());
  };
  for (Obj a = 0; a < Obj(sizes.size()); ++a)
    for (Obj b = 0; b < Obj(sizes.size()); ++b)
      enumerate_tables(int(sizes[a]), int(sizes[b]),
                       [&](const std::vector<int>& t) { bld.add(a, b, t); });

  FinSetFragment frag;
  ProductChoice& pc = frag.products;
  pc.terminal = obj_of(1);
  pc.bang.resize(sizes.size());
  for (Obj z = 0; z < Obj(sizes.size()); ++z)
    pc.bang[z] = bld.add(z, pc.terminal, std::vector<int>(sizes[z], 0));
  for (Obj a = 0; a < Obj(sizes.size()); ++a)
    for (Obj b = 0; b < Obj(sizes.size()); ++b) {
      long na = sizes[a], nb = sizes[b];
      if (na * nb > cap) continue;
      Obj p = obj_of(na * nb);
      std::vector<int> t1(na * nb), t2(na * nb);
      for (long k = 0; k < na * nb; ++k) {
        t1[k] = int(k / std::max(nb, 1L));
        t2[k] = int(k % std::max(nb, 1L));
      }
      pc.pairs[{a, b}] = Product{p, bld.add(p, a, t1), bld.add(p, b, t2)};
    }

  FinCategory cat = bld.finish();

  // pullbacks for mono-legged cospans: the equalizing subset in
  // lexicographic order, whenever its size is one of the fragment's
  for (Arr f = 0; f < cat.num_arrows(); ++f) {
    bool fm = cat.is_mono(f);
    for (Arr g = 0; g < cat.num_arrows(); ++g) {
      if (cat.tgt(f) != cat.tgt(g)) continue;
      if (!fm && !cat.is_mono(g)) continue;
      std::vector<std::pair<int, int>> w;
      for (int x = 0; x < cat.carrier(cat.src(f)); ++x)
        for (int y = 0; y < cat.carrier(cat.src(g)); ++y)
          if (cat.table(f)[x] == cat.table(g)[y]) w.push_back({x, y});
      if (!member(long(w.size()))) continue;
      Obj apex = obj_of(long(w.size()));
      std::vector<int> tp(w.size()), tq(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) {
        tp[i] = w[i].first;
        tq[i] = w[i].second;
      }
      Arr p = cat.arrow_by_table(apex, cat.src(f), tp);
      Arr q = cat.arrow_by_table(apex, cat.src(g), tq);
      assert(p >= 0 && q >= 0);
      frag.pullbacks.squares[{f, g}] = WeakPullback{apex, p, q};
    }
  }

  frag.cat = std::make_shared<const FinCategory>(std::move(cat));
  return frag;
}

FinSetFragment finset_generated(std::vector<long> base_sizes) {
  std::sort(base_sizes.begin(), base_sizes.end());
  base_sizes.erase(std::unique(base_sizes.begin(), base_sizes.end()), base_sizes.end());
  if (base_sizes.empty() || base_sizes.front() < 1 ||
      std::find(base_sizes.begin(), base_sizes.end(), 1) == base_sizes.end())
    throw std::invalid_argument("finset_generated: base sizes must include 1");

  // Each ordered product (a,b) gets its own object even when carriers
  // coincide.  Sharing one carrier object between two product
  // structures lets a pairing in one indexing compose with a
  // projection of the other, which generates coordinate-mixing maps
  // and degenerates the fragment towards the full function category.
  ConcreteBuilder bld;
  std::vector<int> base_obj;
  for (long n : base_sizes) base_obj.push_back(bld.add_object("N" + std::to_string(n), int(n)));
  auto obj_of = [&](long n) {
    for (std::size_t i = 0; i < base_sizes.size(); ++i)
      if (base_sizes[i] == n) return base_obj[i];
    return -1;
  };

  for (long a : base_sizes)
    for (long b : base_sizes)
      enumerate_tables(int(a), int(b),
                       [&](const std::vector<int>& t) { bld.add(obj_of(a), obj_of(b), t); });

  struct PendingProduct { Obj a, b, p; };
  std::vector<PendingProduct> prods;
  std::vector<std::pair<std::pair<Obj, Obj>, Obj>> prod_objs;
  for (long a : base_sizes)
    for (long b : base_sizes) {
      if (a == 1 || b == 1) continue;
      Obj o = bld.add_object("P" + std::to_string(a) + "x" + std::to_string(b), int(a * b));
      prod_objs.push_back({{obj_of(a), obj_of(b)}, o});
    }

  ProductChoice pc;
  pc.terminal = obj_of(1);
  pc.bang.resize(bld.obj_ids.size());
  for (Obj z = 0; z < Obj(bld.obj_ids.size()); ++z)
    pc.bang[z] = bld.add(z, pc.terminal, std::vector<int>(bld.carriers[z], 0));

  // products with the terminal are the object itself (pr2 = id)
  for (Obj z = 0; z < Obj(bld.obj_ids.size()); ++z) {
    Arr idz = bld.add(z, z, bld.identity_table(z));
    pc.pairs[{pc.terminal, z}] = Product{z, pc.bang[z], idz};
    pc.pairs[{z, pc.terminal}] = Product{z, idz, pc.bang[z]};
  }
  for (auto& [ab, op] : prod_objs) {
    auto [oa, ob] = ab;
    long na = bld.carriers[oa], nb = bld.carriers[ob];
    std::vector<int> t1(na * nb), t2(na * nb);
    for (long k = 0; k < na * nb; ++k) {
      t1[k] = int(k / nb);
      t2[k] = int(k % nb);
    }
    pc.pairs[{oa, ob}] = Product{op, bld.add(op, oa, t1), bld.add(op, ob, t2)};
    prods.push_back({oa, ob, op});
  }
  std::vector<long> all(bld.carriers.begin(), bld.carriers.end());

  std::vector<SaturateProduct> sat;
  for (auto& pp : prods) sat.push_back({pp.a, pp.b, pp.p});
  saturate_closure(bld, sat);

  FinSetFragment frag;
  frag.products = pc;
  frag.cat = std::make_shared<const FinCategory>(bld.finish());
  return frag;
}

FinSetFragment tuple_category(int max_degree, int carrier) {
  ConcreteBuilder bld;
  std::vector<long> pow(max_degree + 1, 1);
  for (int d = 1; d <= max_degree; ++d) pow[d] = pow[d - 1] * carrier;
  for (int d = 0; d <= max_degree; ++d) bld.add_object("a" + std::to_string(d), int(pow[d]));

  // hom(a^m, a^n) = coordinate substitutions u: [n] -> [m], realized
  // pointwise on carriers {0..k-1}^m (coordinate 0 least significant)
  auto sub_table = [&](int m, int n, const std::vector<int>& u) {
    std::vector<int> t(pow[m]);
    for (long x = 0; x < pow[m]; ++x) {
      long y = 0;
      for (int j = n - 1; j >= 0; --j) {
        long coord = (x / pow[u[j]]) % carrier;
        y = y * carrier + coord;
      }
      t[x] = int(y);
    }
    return t;
  };

  for (int m = 0; m <= max_degree; ++m)
    for (int n = 0; n <= max_degree; ++n) {
      if (n > 0 && m == 0) continue;  // no substitutions [n] -> [0]
      enumerate_tables(n, m,
                       [&](const std::vector<int>& u) { bld.add(m, n, sub_table(m, n, u)); });
    }

  ProductChoice pc;
  pc.terminal = 0;
  pc.bang.resize(max_degree + 1);
  for (Obj z = 0; z <= max_degree; ++z) pc.bang[z] = bld.add(z, 0, std::vector<int>(pow[z], 0));
  for (int i = 0; i <= max_degree; ++i)
    for (int j = 0; j <= max_degree; ++j) {
      if (i + j > max_degree) continue;
      std::vector<int> t1(pow[i + j]), t2(pow[i + j]);
      for (long x = 0; x < pow[i + j]; ++x) {
        t1[x] = int(x % pow[i]);
        t2[x] = int(x / pow[i]);
      }
      pc.pairs[{Obj(i), Obj(j)}] =
          Product{Obj(i + j), bld.add(i + j, i, t1), bld.add(i + j, j, t2)};
    }

  FinSetFragment frag;
  frag.products = pc;
  frag.cat = std::make_shared<const FinCategory>(bld.finish());
  return frag;
}

PnnoReport check_pnno(const FinCategory& c, const ProductChoice& p, Obj n, Arr z, Arr s,
                      long bound) {
  PnnoReport rep{PnnoReport::Holds, "", 0, 0};
  if (c.src(z) != p.terminal || c.tgt(z) != n || c.src(s) != n || c.tgt(s) != n) {
    rep.verdict = PnnoReport::BadShape;
    return rep;
  }
  for (Obj a = 0; a < c.num_objects(); ++a) {
    if (!p.has(a, n)) {
      ++rep.pairs_skipped;
      continue;
    }
    const Product& an = p.at(a, n);
    Arr z_bang = c.compose(z, p.bang[a]);                  // A -> N
    Arr seed = pairing(c, p, c.identity(a), z_bang);       // <id, z!> : A -> AxN
    Arr step = product_of_arrows(c, p, c.identity(a), s);  // id x s
    if (seed < 0 || step < 0) {
      ++rep.pairs_skipped;
      continue;
    }
    for (Obj x = 0; x < c.num_objects(); ++x) {
      if (long(c.hom(an.prod, x).size()) > bound) {
        rep.pairs_skipped += long(c.hom(a, x).size()) * long(c.hom(x, x).size());
        continue;
      }
      for (Arr a0 : c.hom(a, x))
        for (Arr f : c.hom(x, x)) {
          ++rep.pairs_checked;
          int count = 0;
          for (Arr k : c.hom(an.prod, x)) {
            if (c.compose(k, seed) != a0) continue;
            if (c.compose(k, step) != c.compose(f, k)) continue;
            if (++count > 1) break;
          }
          if (count == 0) {
            rep.verdict = PnnoReport::FailsExistence;
            rep.witness = c.arr_id(a0) + ";" + c.arr_id(f);
            return rep;
          }
          if (count > 1) {
            rep.verdict = PnnoReport::FailsUniqueness;
            rep.witness = c.arr_id(a0) + ";" + c.arr_id(f);
            return rep;
          }
        }
    }
  }
  return rep;
}

}  // namespace eqc::fincat
