#include "eqc/corpus.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "eqc/order.hpp"

namespace eqc::corpus {

using doctrine::ClassedDoctrine;
using doctrine::ConcreteFibers;
using doctrine::Doctrine;
using fincat::Arr;
using fincat::FinCategory;
using fincat::FinSetFragment;
using fincat::Obj;
using order::Elem;
using order::FinPoset;
using order::InfSemilattice;
using order::MonotoneMap;

const FinSetFragment& finset_small() {
  static FinSetFragment frag = [] {
    auto r = fincat::finset_category({0, 1, 2, 3, 4}, 4);
    if (!r.ok()) throw std::logic_error("finset_small: " + r.error().describe());
    return r.value();
  }();
  return frag;
}

const FinSetFragment& bell_fragment() {
  static FinSetFragment frag = fincat::finset_generated({1, 2, 3});
  return frag;
}

const FinSetFragment& tuple4() {
  static FinSetFragment frag = fincat::tuple_category(4, 3);
  return frag;
}

const ClassedDoctrine& sub_finset() {
  static ClassedDoctrine d = [] {
    auto r = doctrine::subobject_doctrine(finset_small().cat, finset_small().products,
                                          finset_small().pullbacks);
    if (!r.ok()) throw std::logic_error("sub_finset: " + r.error().describe());
    return r.value();
  }();
  return d;
}

const ClassedDoctrine& wsb_finset() {
  static ClassedDoctrine d = [] {
    auto r = doctrine::variation_doctrine(finset_small().cat, finset_small().products,
                                          finset_small().pullbacks);
    if (!r.ok()) throw std::logic_error("wsb_finset: " + r.error().describe());
    return r.value();
  }();
  return d;
}

const Doctrine& bell_powerset() {
  static Doctrine d = doctrine::powerset_doctrine(bell_fragment().cat, bell_fragment().products);
  return d;
}

namespace {

/// Partitions of {0..n-1} as restricted growth strings.
std::vector<std::vector<int>> partitions_of(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> block(n, 0);
  std::function<void(int, int)> rec = [&](int i, int maxb) {
    if (i == n) {
      out.push_back(block);
      return;
    }
    for (int b = 0; b <= maxb + 1; ++b) {
      block[i] = b;
      rec(i + 1, std::max(maxb, b));
    }
  };
  if (n == 0) out.push_back({});
  else rec(0, -1);
  return out;
}

}  // namespace

const Doctrine& kernel_doctrine() {
  static Doctrine d = [] {
    const auto& frag = tuple4();
    const FinCategory& c = *frag.cat;
    const int carrier = 3;  // matches tuple4's realization
    Doctrine p;
    p.base = frag.cat;
    p.products = frag.products;
    ConcreteFibers conc;
    conc.masks.resize(c.num_objects());
    for (Obj o = 0; o < c.num_objects(); ++o) {
      int degree = o;  // tuple4 object o is the o-th power
      auto parts = partitions_of(degree);
      std::vector<Bits> masks;
      for (auto& part : parts) {
        Bits m(c.carrier(o));
        for (int x = 0; x < c.carrier(o); ++x) {
          // decode coordinates of x (little-endian base `carrier`)
          bool in = true;
          std::vector<int> coord(degree);
          for (int i = 0, v = x; i < degree; ++i, v /= carrier) coord[i] = v % carrier;
          for (int i = 0; i < degree && in; ++i)
            for (int j = i + 1; j < degree; ++j)
              if (part[i] == part[j] && coord[i] != coord[j]) {
                in = false;
                break;
              }
          if (in) m.set(x);
        }
        // dedupe identical masks (different strings can cut equal sets
        // only when degree < 2, where all partitions coincide)
        bool dup = false;
        for (auto& prev : masks)
          if (prev == m) dup = true;
        if (!dup) masks.push_back(std::move(m));
      }
      int n = int(masks.size());
      std::vector<std::string> ids(n);
      std::vector<Bits> up(n, Bits(n));
      for (int i = 0; i < n; ++i) {
        ids[i] = c.obj_id(o) + ":" + std::to_string(i);
        for (int j = 0; j < n; ++j)
          if (masks[i].subset_of(masks[j])) up[i].set(j);
      }
      auto lat = order::inf_semilattice(
          std::make_shared<const FinPoset>(FinPoset(std::move(ids), std::move(up))));
      if (!lat.ok()) throw std::logic_error("kernel fiber: " + lat.error().describe());
      p.fibers.push_back(lat.value());
      conc.masks[o] = std::move(masks);
    }
    for (Arr a = 0; a < c.num_arrows(); ++a) {
      Obj s = c.src(a), t = c.tgt(a);
      MonotoneMap m{p.fibers[t].poset_ptr(), p.fibers[s].poset_ptr(),
                    std::vector<Elem>(p.fibers[t].size(), -1)};
      for (int e = 0; e < p.fibers[t].size(); ++e) {
        Bits pre(c.carrier(s));
        for (int x = 0; x < c.carrier(s); ++x)
          if (conc.masks[t][e].test(c.table(a)[x])) pre.set(x);
        for (int e2 = 0; e2 < p.fibers[s].size(); ++e2)
          if (conc.masks[s][e2] == pre) {
            m.graph[e] = e2;
            break;
          }
        if (m.graph[e] < 0)
          throw std::logic_error("kernel doctrine: preimage escapes the pattern fibers");
      }
      p.reindex.push_back(std::move(m));
    }
    p.conc = std::move(conc);
    return p;
  }();
  return d;
}

const Doctrine& affine_doctrine() {
  static Doctrine d = [] {
    const auto& frag = tuple4();
    const FinCategory& c = *frag.cat;
    const int carrier = 3;
    Doctrine p;
    p.base = frag.cat;
    p.products = frag.products;
    ConcreteFibers conc;
    conc.masks.resize(c.num_objects());

    // base masks on a^2: the three shift constraints y = x + d
    const Obj a2 = 2;
    std::vector<Bits> shifts;
    for (int dlt = 0; dlt < carrier; ++dlt) {
      Bits m(c.carrier(a2));
      for (int x = 0; x < c.carrier(a2); ++x) {
        int lo = x % carrier, hi = x / carrier;
        if (hi == (lo + dlt) % carrier) m.set(x);
      }
      shifts.push_back(std::move(m));
    }

    for (Obj o = 0; o < c.num_objects(); ++o) {
      // generators: preimages of the shift masks along substitutions
      // into a^2, plus top; then close under intersection
      std::vector<Bits> masks;
      Bits top(c.carrier(o));
      for (int x = 0; x < c.carrier(o); ++x) top.set(x);
      masks.push_back(top);
      auto push = [&](const Bits& m) {
        for (auto& prev : masks)
          if (prev == m) return false;
        masks.push_back(m);
        return true;
      };
      for (Arr s : c.hom(o, a2))
        for (auto& base : shifts) {
          Bits pre(c.carrier(o));
          for (int x = 0; x < c.carrier(o); ++x)
            if (base.test(c.table(s)[x])) pre.set(x);
          push(pre);
        }
      for (std::size_t i = 0; i < masks.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) push(masks[i] & masks[j]);

      int n = int(masks.size());
      std::vector<std::string> ids(n);
      std::vector<Bits> up(n, Bits(n));
      for (int i = 0; i < n; ++i) {
        ids[i] = c.obj_id(o) + ":" + std::to_string(i);
        for (int j = 0; j < n; ++j)
          if (masks[i].subset_of(masks[j])) up[i].set(j);
      }
      auto lat = order::inf_semilattice(
          std::make_shared<const FinPoset>(FinPoset(std::move(ids), std::move(up))));
      if (!lat.ok()) throw std::logic_error("affine fiber: " + lat.error().describe());
      p.fibers.push_back(lat.value());
      conc.masks[o] = std::move(masks);
    }
    for (Arr f = 0; f < c.num_arrows(); ++f) {
      Obj s = c.src(f), t = c.tgt(f);
      MonotoneMap m{p.fibers[t].poset_ptr(), p.fibers[s].poset_ptr(),
                    std::vector<Elem>(p.fibers[t].size(), -1)};
      for (int e = 0; e < p.fibers[t].size(); ++e) {
        Bits pre(c.carrier(s));
        for (int x = 0; x < c.carrier(s); ++x)
          if (conc.masks[t][e].test(c.table(f)[x])) pre.set(x);
        for (int e2 = 0; e2 < p.fibers[s].size(); ++e2)
          if (conc.masks[s][e2] == pre) {
            m.graph[e] = e2;
            break;
          }
        if (m.graph[e] < 0)
          throw std::logic_error("affine doctrine: preimage escapes the fibers");
      }
      p.reindex.push_back(std::move(m));
    }
    p.conc = std::move(conc);
    return p;
  }();
  return d;
}

const Doctrine& constant_small() {
  static Doctrine d = [] {
    auto r = fincat::finset_category({1, 2}, 2);
    if (!r.ok()) throw std::logic_error("constant_small base");
    static auto frag = r.value();
    return doctrine::constant_doctrine(frag.cat, frag.products);
  }();
  return d;
}

Doctrine broken_meet_fixture() {
  // two objects, one non-identity arrow h: A -> B, diamond fibers
  std::vector<Arr> comp(9, -1);
  auto at = [](Arr g, Arr f) { return std::size_t(g) * 3 + f; };
  comp[at(0, 0)] = 0;  // idA o idA
  comp[at(1, 1)] = 1;  // idB o idB
  comp[at(2, 0)] = 2;  // h o idA
  comp[at(1, 2)] = 2;  // idB o h
  auto cat = std::make_shared<const FinCategory>(FinCategory::make_explicit(
      {"A", "B"}, {"idA", "idB", "h"}, {0, 1, 0}, {0, 1, 1}, comp, {0, 1}));

  std::vector<std::string> els{"bot", "x", "y", "top"};
  std::vector<std::pair<std::string, std::string>> rel;
  for (auto& e : els) rel.push_back({e, e});
  rel.insert(rel.end(), {{"bot", "x"}, {"bot", "y"}, {"bot", "top"}, {"x", "top"}, {"y", "top"}});
  auto dia = order::check_poset(els, rel);
  auto lat = order::inf_semilattice(std::make_shared<const FinPoset>(dia.value()));

  Doctrine p;
  p.base = cat;
  p.fibers = {lat.value(), lat.value()};
  auto poset = lat.value().poset_ptr();
  p.reindex.push_back(order::identity_map(poset));
  p.reindex.push_back(order::identity_map(poset));
  // monotone but kills the meet of the two middles: x,y |-> top
  p.reindex.push_back(MonotoneMap{poset, poset, {0, 3, 3, 3}});
  return p;
}

Doctrine bc_failure_fixture() {
  // objects T, A, B, X, P = AxB, Q = XxB; f: X -> A induces the
  // comparison square whose exists-side fails at the middle of P(P)
  enum { T, A, B, X, P, Q };
  std::vector<std::string> objs{"T", "A", "B", "X", "P", "Q"};
  enum {
    IdT, IdA, IdB, IdX, IdP, IdQ,
    BangA, BangB, BangX, BangP, BangQ,
    Pr1, Pr2, Pr1q, Pr2q, F, Fid, Fpr,
    NARR
  };
  std::vector<std::string> arrs{"idT", "idA", "idB", "idX", "idP", "idQ",
                                "!A",  "!B",  "!X",  "!P",  "!Q",
                                "pr1", "pr2", "pr1q", "pr2q", "f", "fxid", "fpr"};
  std::vector<Obj> src{T, A, B, X, P, Q, A, B, X, P, Q, P, P, Q, Q, X, Q, Q};
  std::vector<Obj> tgt{T, A, B, X, P, Q, T, T, T, T, T, A, B, X, B, A, P, A};
  std::vector<Arr> ids{IdT, IdA, IdB, IdX, IdP, IdQ};
  std::vector<Arr> comp(std::size_t(NARR) * NARR, -1);
  auto bang_of = [&](Obj o) {
    switch (o) {
      case T: return int(IdT);
      case A: return int(BangA);
      case B: return int(BangB);
      case X: return int(BangX);
      case P: return int(BangP);
      default: return int(BangQ);
    }
  };
  auto set = [&](Arr g, Arr f, Arr gf) { comp[std::size_t(g) * NARR + f] = gf; };
  for (Arr f = 0; f < NARR; ++f) {
    set(ids[tgt[f]], f, f);
    set(f, ids[src[f]], f);
  }
  for (Arr f = 0; f < NARR; ++f)
    set(bang_of(tgt[f]), f, bang_of(src[f]));
  set(Pr1, Fid, Fpr);
  set(Pr2, Fid, Pr2q);
  set(F, Pr1q, Fpr);
  auto cat = std::make_shared<const FinCategory>(
      FinCategory::make_explicit(objs, arrs, src, tgt, comp, ids));

  fincat::ProductChoice pc;
  pc.terminal = T;
  pc.bang = {IdT, BangA, BangB, BangX, BangP, BangQ};
  pc.pairs[{A, B}] = fincat::Product{P, Pr1, Pr2};
  pc.pairs[{X, B}] = fincat::Product{Q, Pr1q, Pr2q};

  auto two = std::make_shared<const FinPoset>(order::chain_poset(2));
  auto three = std::make_shared<const FinPoset>(order::chain_poset(3));
  InfSemilattice lat2 = order::inf_semilattice(two).value();
  InfSemilattice lat3 = order::inf_semilattice(three).value();

  Doctrine p;
  p.base = cat;
  p.products = pc;
  p.fibers = {lat2, lat2, lat2, lat2, lat3, lat2};
  p.reindex.resize(NARR);
  auto up2 = [&](order::PosetPtr from) { return MonotoneMap{from, two, {0, 1}}; };
  p.reindex[IdT] = order::identity_map(two);
  p.reindex[IdA] = order::identity_map(two);
  p.reindex[IdB] = order::identity_map(two);
  p.reindex[IdX] = order::identity_map(two);
  p.reindex[IdP] = order::identity_map(three);
  p.reindex[IdQ] = order::identity_map(two);
  p.reindex[BangA] = up2(two);
  p.reindex[BangB] = up2(two);
  p.reindex[BangX] = up2(two);
  p.reindex[BangP] = MonotoneMap{two, three, {0, 2}};
  p.reindex[BangQ] = up2(two);
  p.reindex[Pr1] = MonotoneMap{two, three, {0, 2}};
  p.reindex[Pr2] = MonotoneMap{two, three, {0, 2}};
  p.reindex[Pr1q] = order::identity_map(two);
  p.reindex[Pr2q] = order::identity_map(two);
  p.reindex[F] = order::identity_map(two);
  p.reindex[Fid] = MonotoneMap{three, two, {0, 0, 1}};  // the middle collapses downward
  p.reindex[Fpr] = order::identity_map(two);
  return p;
}

Doctrine sparse_choice_fixture() {
  // two-point object A whose endomaps lack the swap; P = A x A
  fincat::ConcreteBuilder bld;
  Obj t = bld.add_object("T", 1);
  Obj a = bld.add_object("A", 2);
  Obj p = bld.add_object("P", 4);
  bld.add(a, a, {0, 0});
  bld.add(a, a, {1, 1});
  bld.add(t, a, {0});
  bld.add(t, a, {1});
  bld.add(a, t, {0, 0});
  bld.add(p, t, {0, 0, 0, 0});
  bld.add(p, a, {0, 0, 1, 1});  // pr1
  bld.add(p, a, {0, 1, 0, 1});  // pr2
  fincat::saturate_closure(bld, {{a, a, p}});
  auto cat = std::make_shared<const FinCategory>(bld.finish());

  fincat::ProductChoice pc;
  pc.terminal = t;
  pc.bang = {cat->identity(t), cat->arrow_by_table(a, t, {0, 0}),
             cat->arrow_by_table(p, t, {0, 0, 0, 0})};
  pc.pairs[{a, a}] = fincat::Product{p, cat->arrow_by_table(p, a, {0, 0, 1, 1}),
                                     cat->arrow_by_table(p, a, {0, 1, 0, 1})};
  pc.pairs[{t, t}] = fincat::Product{t, cat->identity(t), cat->identity(t)};
  pc.pairs[{t, a}] = fincat::Product{a, cat->arrow_by_table(a, t, {0, 0}), cat->identity(a)};
  pc.pairs[{a, t}] = fincat::Product{a, cat->identity(a), cat->arrow_by_table(a, t, {0, 0})};
  return doctrine::powerset_doctrine(cat, pc);
}

Doctrine trivial_delta_fixture() {
  static auto frag = fincat::finset_category({1, 2, 4}, 4).value();
  return doctrine::constant_doctrine(frag.cat, frag.products);
}

}  // namespace eqc::corpus
