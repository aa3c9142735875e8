#include "eqc/pasm.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <cmath>
#include <set>
#include <stdexcept>

#include "eqc/completion.hpp"

namespace eqc::pasm {

using fincat::Arr;
using fincat::ConcreteBuilder;
using fincat::Obj;
using pca::apply_code;
using pca::pair_encode;
using pca::RunResult;
using pca::t_app;
using pca::t_lam;
using pca::t_num;
using pca::t_var;

Assembly canonical_assembly(int n) {
  Assembly a;
  a.name = "K" + std::to_string(n);
  for (int i = 0; i < n; ++i) {
    a.points.push_back(std::to_string(i));
    a.codes.push_back({Nat(i)});
  }
  return a;
}

Assembly naturals_assembly(long bound) {
  Assembly a = canonical_assembly(int(bound + 1));
  a.name = "Nle" + std::to_string(bound);
  return a;
}

Assembly product_assembly(const Assembly& a, const Assembly& b) {
  Assembly p;
  p.name = "(" + a.name + "x" + b.name + ")";
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) {
      p.points.push_back("(" + a.points[i] + "," + b.points[j] + ")");
      std::vector<Nat> cs;
      for (const Nat& n : a.codes[i])
        for (const Nat& m : b.codes[j]) cs.push_back(pair_encode(n, m));
      std::sort(cs.begin(), cs.end());
      cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
      p.codes.push_back(std::move(cs));
    }
  return p;
}

TrackWitness check_tracked(const std::vector<int>& table, const Assembly& src,
                           const Assembly& tgt, const TermPtr& tracker, long fuel) {
  for (int x = 0; x < src.size(); ++x)
    for (const Nat& n : src.codes[x]) {
      RunResult r = pca::run(t_app(tracker, t_num(n)), fuel);
      const auto& out = tgt.codes[table[x]];
      if (r.kind != RunResult::Halted ||
          std::find(out.begin(), out.end(), r.value) == out.end())
        return {false, x, n};
    }
  return {};
}

std::optional<Nat> find_tracker(const std::vector<int>& table, const Assembly& src,
                                const Assembly& tgt, const Nat& code_bound, long fuel) {
  for (Nat t = 0; t <= code_bound; ++t)
    if (check_tracked(table, src, tgt, pca::decode(t), fuel).ok) return t;
  return std::nullopt;
}

std::optional<TermPtr> track_table(const std::vector<int>& table, const Assembly& src,
                                   const Assembly& tgt) {
  // per source code, a target code shared by every point it realizes
  std::map<Nat, Nat> prog;
  std::map<Nat, std::vector<int>> points_of;
  for (int x = 0; x < src.size(); ++x)
    for (const Nat& n : src.codes[x]) points_of[n].push_back(x);
  for (auto& [n, pts] : points_of) {
    std::vector<Nat> common = tgt.codes[table[pts[0]]];
    for (std::size_t i = 1; i < pts.size(); ++i) {
      std::vector<Nat> next;
      for (const Nat& c : common) {
        const auto& cs = tgt.codes[table[pts[i]]];
        if (std::find(cs.begin(), cs.end(), c) != cs.end()) next.push_back(c);
      }
      common = std::move(next);
    }
    if (common.empty()) return std::nullopt;
    prog[n] = common.front();
  }
  return pca::table_term(prog);
}

bool is_tracked(const std::vector<int>& table, const Assembly& src, const Assembly& tgt) {
  std::map<Nat, int> rep_point;  // code -> first point seen
  for (int x = 0; x < src.size(); ++x)
    for (const Nat& n : src.codes[x]) {
      auto it = rep_point.find(n);
      if (it == rep_point.end()) {
        rep_point.emplace(n, x);
        continue;
      }
      // a shared code forces a shared target code
      const auto& c1 = tgt.codes[table[it->second]];
      const auto& c2 = tgt.codes[table[x]];
      bool common = false;
      for (const Nat& c : c1)
        if (std::find(c2.begin(), c2.end(), c) != c2.end()) { common = true; break; }
      if (!common) return false;
    }
  return true;
}

namespace {

void enumerate_tables(int dom, int cod, const std::function<void(const std::vector<int>&)>& f) {
  if (dom == 0) {
    f({});
    return;
  }
  if (cod == 0) return;
  std::vector<int> t(dom, 0);
  while (true) {
    f(t);
    int i = 0;
    while (i < dom && ++t[i] == cod) t[i++] = 0;
    if (i == dom) break;
  }
}

long pow_cap(long base, long exp, long cap) {
  long r = 1;
  for (long i = 0; i < exp; ++i) {
    r *= std::max(base, 1L);
    if (r > cap) return cap + 1;
  }
  return r;
}

}  // namespace

FragmentCategory fragment_category(const Fragment& frag) {
  FragmentCategory out;
  ConcreteBuilder bld;
  for (auto& a : frag.objects) {
    assert(a.partitioned());
    bld.add_object(a.name, a.size());
  }

  // A map from a partitioned assembly is tracked exactly when each
  // source code group lands inside one target code group.  Pairs whose
  // tracked hom set is small are seeded in full; the rest (squares of
  // collision-coded assemblies can have millions) come from the
  // composition/pairing closure below.
  const long kSeedCap = 300;
  for (int i = 0; i < int(frag.objects.size()); ++i) {
    const Assembly& srca = frag.objects[i];
    std::vector<std::vector<int>> sgroups;
    {
      std::map<Nat, int> group_of;
      for (int x = 0; x < srca.size(); ++x) {
        auto [it, fresh] = group_of.emplace(srca.codes[x].front(), int(sgroups.size()));
        if (fresh) sgroups.push_back({});
        sgroups[it->second].push_back(x);
      }
    }
    for (int j = 0; j < int(frag.objects.size()); ++j) {
      const Assembly& tgta = frag.objects[j];
      std::vector<std::vector<int>> tgroups;
      {
        std::map<Nat, int> group_of;
        for (int y = 0; y < tgta.size(); ++y) {
          auto [it, fresh] = group_of.emplace(tgta.codes[y].front(), int(tgroups.size()));
          if (fresh) tgroups.push_back({});
          tgroups[it->second].push_back(y);
        }
      }
      if (srca.size() == 0) {
        bld.add(i, j, {});
        continue;
      }
      if (tgta.size() == 0) continue;
      // count = prod over source groups of sum over target groups of
      // |target group| ^ |source group|
      double count = 1;
      for (auto& g : sgroups) {
        double per = 0;
        for (auto& h : tgroups) per += std::pow(double(h.size()), double(g.size()));
        count *= per;
        if (count > double(kSeedCap)) break;
      }
      if (count > double(kSeedCap)) continue;
      // enumerate: per source group, a target group and a pointwise map
      std::vector<int> table(srca.size());
      std::function<void(std::size_t)> rec = [&](std::size_t gi) {
        if (gi == sgroups.size()) {
          bld.add(i, j, table);
          return;
        }
        const auto& g = sgroups[gi];
        for (auto& h : tgroups) {
          std::vector<std::size_t> pick(g.size(), 0);
          while (true) {
            for (std::size_t k = 0; k < g.size(); ++k) table[g[k]] = h[pick[k]];
            rec(gi + 1);
            std::size_t k = 0;
            while (k < g.size() && ++pick[k] == h.size()) pick[k++] = 0;
            if (k == g.size()) break;
          }
        }
      };
      rec(0);
    }
  }
  // bangs and the chosen projections must be present before the
  // closure so that composites out of the product objects exist
  for (int z = 0; z < int(frag.objects.size()); ++z)
    bld.add(z, frag.terminal, std::vector<int>(frag.objects[z].size(), 0));
  for (auto& [ab, p] : frag.products) {
    auto [i, j] = ab;
    int nb = frag.objects[j].size();
    std::vector<int> t1(frag.objects[p].size()), t2(frag.objects[p].size());
    for (int k = 0; k < frag.objects[p].size(); ++k) {
      t1[k] = k / std::max(nb, 1);
      t2[k] = k % std::max(nb, 1);
    }
    bld.add(p, i, t1);
    bld.add(p, j, t2);
  }
  std::vector<fincat::SaturateProduct> sat;
  for (auto& [ab, p] : frag.products) sat.push_back({ab.first, ab.second, p});
  fincat::saturate_closure(bld, sat);

  fincat::FinCategory cat = bld.finish();

  fincat::ProductChoice pc;
  pc.terminal = frag.terminal;
  pc.bang.resize(frag.objects.size());
  for (int z = 0; z < int(frag.objects.size()); ++z) {
    pc.bang[z] =
        cat.arrow_by_table(z, frag.terminal, std::vector<int>(frag.objects[z].size(), 0));
    if (pc.bang[z] < 0) throw std::logic_error("fragment_category: missing bang arrow");
  }
  for (auto& [ab, p] : frag.products) {
    auto [i, j] = ab;
    int nb = frag.objects[j].size();
    std::vector<int> t1(frag.objects[p].size()), t2(frag.objects[p].size());
    for (int k = 0; k < frag.objects[p].size(); ++k) {
      t1[k] = k / std::max(nb, 1);
      t2[k] = k % std::max(nb, 1);
    }
    Arr pr1 = cat.arrow_by_table(p, i, t1);
    Arr pr2 = cat.arrow_by_table(p, j, t2);
    if (pr1 < 0 || pr2 < 0) throw std::logic_error("fragment_category: missing projection");
    pc.pairs[{i, j}] = fincat::Product{p, pr1, pr2};
  }
  for (int z = 0; z < int(frag.objects.size()); ++z) {
    pc.pairs[{pc.terminal, z}] = fincat::Product{z, pc.bang[z], cat.identity(z)};
    pc.pairs[{z, pc.terminal}] = fincat::Product{z, cat.identity(z), pc.bang[z]};
  }

  // weak pullbacks: the equalizing subset on the canonical assembly of
  // its size
  auto canonical_of = [&](int n) {
    for (int z = 0; z < int(frag.objects.size()); ++z)
      if (frag.objects[z].name == "K" + std::to_string(n)) return z;
    return -1;
  };
  int max_canonical = 0;
  for (auto& a : frag.objects)
    if (a.name.rfind("K", 0) == 0) max_canonical = std::max(max_canonical, a.size());
  for (Arr f = 0; frag.with_pullbacks && f < cat.num_arrows(); ++f) {
    for (Arr g = 0; g < cat.num_arrows(); ++g) {
      if (cat.tgt(f) != cat.tgt(g)) continue;
      if (long(cat.carrier(cat.src(f))) * cat.carrier(cat.src(g)) > 64) continue;
      std::vector<std::pair<int, int>> w;
      for (int x = 0; x < cat.carrier(cat.src(f)); ++x)
        for (int y = 0; y < cat.carrier(cat.src(g)); ++y)
          if (cat.table(f)[x] == cat.table(g)[y]) w.push_back({x, y});
      if (int(w.size()) > max_canonical) continue;
      int apex = canonical_of(int(w.size()));
      if (apex < 0) continue;
      std::vector<int> tp(w.size()), tq(w.size());
      for (std::size_t k = 0; k < w.size(); ++k) {
        tp[k] = w[k].first;
        tq[k] = w[k].second;
      }
      Arr p = cat.arrow_by_table(apex, cat.src(f), tp);
      Arr q = cat.arrow_by_table(apex, cat.src(g), tq);
      if (p < 0 || q < 0) continue;
      out.pullbacks.squares[{f, g}] = fincat::WeakPullback{apex, p, q};
    }
  }

  out.cat = std::make_shared<const fincat::FinCategory>(std::move(cat));
  out.products = pc;
  return out;
}

doctrine::Doctrine pgamma_doctrine(const FragmentCategory& fc) {
  return doctrine::powerset_doctrine(fc.cat, fc.products);
}

Result<doctrine::ClassedDoctrine, doctrine::DoctrineError> wsb_pasm_doctrine(
    const FragmentCategory& fc) {
  return doctrine::variation_doctrine(fc.cat, fc.products, fc.pullbacks);
}

doctrine::Doctrine ssb_asm_doctrine(const FragmentCategory& fc) {
  // a strong subobject of an assembly is an inclusion of a carrier
  // subset with the restricted realizability relation, so the fibers
  // are exactly the powersets of the carriers
  return doctrine::powerset_doctrine(fc.cat, fc.products);
}

WeakExponential weak_exponential(const Assembly& a, const Assembly& b, long fuel,
                                 const Nat& code_bound) {
  WeakExponential we;
  we.w.name = "W(" + a.name + ">" + b.name + ")";
  enumerate_tables(a.size(), b.size(), [&](const std::vector<int>& t) {
    for (Nat code = 0; code <= code_bound; ++code)
      if (check_tracked(t, a, b, pca::decode(code), fuel).ok) {
        we.w.points.push_back("f" + std::to_string(we.w.points.size()));
        we.w.codes.push_back({code});
        we.tables.push_back(t);
        we.trackers.push_back(code);
      }
  });
  we.wa = product_assembly(we.w, a);
  we.ev.table.resize(we.wa.size());
  for (int k = 0; k < we.wa.size(); ++k) {
    int wi = k / std::max(a.size(), 1);
    int x = k % std::max(a.size(), 1);
    we.ev.table[k] = we.tables[wi][x];
  }
  we.ev.tracker = pca::decode(pca::eval_code());
  return we;
}

WeakExpReport check_weak_exponential(const WeakExponential& we, const Assembly& a,
                                     const Assembly& b,
                                     const std::vector<Assembly>& test_objects, long fuel) {
  WeakExpReport rep;
  if (!check_tracked(we.ev.table, we.wa, b, we.ev.tracker, fuel).ok) {
    rep.ok = false;
    rep.witness = "ev is not tracked by the universal program";
    return rep;
  }
  for (auto& cobj : test_objects) {
    Assembly ca = product_assembly(cobj, a);
    enumerate_tables(ca.size(), b.size(), [&](const std::vector<int>& g) {
      if (!is_tracked(g, ca, b)) return;
      ++rep.maps_checked;
      // factor pointwise: h(c) is a W-member whose table is the slice
      // g(c,-), chosen consistently across code collisions in C
      std::vector<int> h(cobj.size(), -1);
      std::map<Nat, int> group_choice;
      bool ok = true;
      for (int c = 0; c < cobj.size() && ok; ++c) {
        std::vector<int> slice(a.size());
        for (int x = 0; x < a.size(); ++x) slice[x] = g[c * a.size() + x];
        const Nat& ccode = cobj.codes[c].front();
        auto it = group_choice.find(ccode);
        int choice = -1;
        if (it != group_choice.end()) {
          choice = it->second;
          if (we.tables[choice] != slice) ok = false;
        } else {
          for (int wi = 0; wi < we.w.size(); ++wi)
            if (we.tables[wi] == slice) { choice = wi; break; }
          if (choice < 0) ok = false;
          else group_choice[ccode] = choice;
        }
        h[c] = choice;
      }
      if (ok && !is_tracked(h, cobj, we.w)) ok = false;
      if (ok)
        for (int c = 0; c < cobj.size(); ++c)
          for (int x = 0; x < a.size(); ++x)
            if (we.ev.table[h[c] * a.size() + x] != g[c * a.size() + x]) ok = false;
      if (!ok) {
        rep.ok = false;
        rep.fragment_too_small = true;
        if (rep.witness.empty()) rep.witness = "unfactorable map from " + cobj.name;
      }
    });
  }
  return rep;
}

ForallConstructionReport check_forall_construction(const Fragment& frag,
                                                   const FragmentCategory& fc, long fuel,
                                                   const Nat& code_bound) {
  ForallConstructionReport rep;
  auto wsbr = wsb_pasm_doctrine(fc);
  if (!wsbr.ok()) {
    rep.ok = false;
    rep.witness = "variation doctrine failed: " + wsbr.error().describe();
    return rep;
  }
  const auto& wsb = wsbr.value();
  const auto& cat = *fc.cat;

  for (auto& [ab, pr] : fc.products.pairs) {
    auto [pi, mi] = ab;
    if (pi == fc.products.terminal || mi == fc.products.terminal) continue;
    auto fa = doctrine::forall_along(wsb.d, pr.pr1);
    if (!fa) {
      rep.ok = false;
      rep.witness = "no right adjoint along a projection";
      return rep;
    }
    const Assembly& P = frag.objects[pi];
    const Assembly& M = frag.objects[mi];
    for (int cls = 0; cls < wsb.d.fiber(pr.prod).size(); ++cls) {
      Arr f = wsb.reps[pr.prod][cls];
      const Assembly& Y = frag.objects[cat.src(f)];
      // Q = { (x, h, t) : t <= bound tracks h: M -> Y, f(h(m)) = (x,m) }
      Assembly q;
      q.name = "Q";
      std::vector<int> pr1_table;
      bool skipped = false;
      enumerate_tables(M.size(), Y.size(), [&](const std::vector<int>& h) {
        int x = -1;
        for (int m = 0; m < M.size(); ++m) {
          int fm = cat.table(f)[h[m]];
          int xm = fm / std::max(M.size(), 1);
          int mm = fm % std::max(M.size(), 1);
          if (mm != m) return;
          if (x < 0) x = xm;
          else if (x != xm) return;
        }
        if (x < 0) {
          if (P.size() == 0) return;  // no point to project to
          x = 0;
        }
        bool any = false;
        for (Nat t = 0; t <= code_bound; ++t)
          if (check_tracked(h, M, Y, pca::decode(t), fuel).ok) {
            q.points.push_back(std::to_string(pr1_table.size()));
            q.codes.push_back({pair_encode(P.codes[x].front(), t)});
            pr1_table.push_back(x);
            any = true;
          }
        if (!any && track_table(h, M, Y)) skipped = true;
      });
      if (skipped) {
        // a trackable slice has no tracker below the bound, so the
        // constructed object is knowingly incomplete: skip the class
        ++rep.classes_skipped;
        continue;
      }
      ++rep.classes_checked;

      // compare [pr1: Q -> P] with the adjoint value by mutual tracked
      // factorization against the adjoint's representative
      order::Elem val = fa->graph[cls];
      Arr w = wsb.reps[pi][val];
      const Assembly& V = frag.objects[cat.src(w)];
      bool u_ok = true;
      {
        std::map<Nat, int> choice;
        for (std::size_t k = 0; k < pr1_table.size() && u_ok; ++k) {
          const Nat& code = q.codes[k].front();
          auto it = choice.find(code);
          if (it != choice.end()) {
            if (cat.table(w)[it->second] != pr1_table[k]) u_ok = false;
            continue;
          }
          int pick = -1;
          for (int v = 0; v < V.size(); ++v)
            if (cat.table(w)[v] == pr1_table[k]) { pick = v; break; }
          if (pick < 0) u_ok = false;
          else choice[code] = pick;
        }
      }
      bool v_ok = true;
      {
        std::map<Nat, int> choice;
        for (int v = 0; v < V.size() && v_ok; ++v) {
          const Nat& code = V.codes[v].front();
          auto it = choice.find(code);
          if (it != choice.end()) {
            if (pr1_table[it->second] != cat.table(w)[v]) v_ok = false;
            continue;
          }
          int pick = -1;
          for (std::size_t k = 0; k < pr1_table.size(); ++k)
            if (pr1_table[k] == cat.table(w)[v]) { pick = int(k); break; }
          if (pick < 0) v_ok = false;
          else choice[code] = pick;
        }
      }
      if (!(u_ok && v_ok)) {
        rep.ok = false;
        rep.witness = "adjoint value differs from the tracked-function construction at class " +
                      std::to_string(cls);
        return rep;
      }
    }
  }
  return rep;
}

namespace {

std::vector<std::vector<int>> tracked_tables(const Assembly& a, const Assembly& b) {
  std::vector<std::vector<int>> out;
  enumerate_tables(a.size(), b.size(), [&](const std::vector<int>& t) {
    if (is_tracked(t, a, b)) out.push_back(t);
  });
  return out;
}

bool assemblies_isomorphic(const Assembly& a, const Assembly& b) {
  if (a.size() != b.size()) return false;
  for (auto& ta : tracked_tables(a, b)) {
    std::set<int> img(ta.begin(), ta.end());
    if (int(img.size()) != a.size()) continue;
    for (auto& tb : tracked_tables(b, a)) {
      bool inv = true;
      for (int x = 0; x < a.size() && inv; ++x)
        if (tb[ta[x]] != x) inv = false;
      for (int y = 0; y < b.size() && inv; ++y)
        if (ta[tb[y]] != y) inv = false;
      if (inv) return true;
    }
  }
  return false;
}

}  // namespace

CarfurReport check_carfur_fragment(const Fragment& frag, const FragmentCategory& fc,
                                   int carrier_bound, const std::vector<Nat>& code_universe,
                                   long fuel) {
  CarfurReport rep;
  auto pg = std::make_shared<const doctrine::Doctrine>(pgamma_doctrine(fc));
  auto es = doctrine::find_elementary(*pg);
  if (!es.ok()) {
    rep.ok = false;
    rep.failure = "global-sections doctrine has no equality predicate";
    return rep;
  }
  auto qr = completion::complete(pg, es.value());
  if (!qr.ok()) {
    rep.ok = false;
    rep.failure = "completion failed: " + qr.error().describe();
    return rep;
  }
  const auto& qp = qr.value();
  const auto& qc = *qp.q.base;

  // the functor image: quotient carrier with unioned codes
  std::vector<Assembly> image(qp.objects.size());
  for (int qo = 0; qo < int(qp.objects.size()); ++qo) {
    const Assembly& base = frag.objects[qp.objects[qo].carrier];
    const auto& sq = pg->products.at(qp.objects[qo].carrier, qp.objects[qo].carrier);
    const Bits& m = pg->conc->masks[sq.prod][qp.objects[qo].rho];
    std::vector<int> cls(base.size(), -1);
    int count = 0;
    for (int x = 0; x < base.size(); ++x) {
      if (cls[x] >= 0) continue;
      cls[x] = count;
      for (int w = 0; w < fc.cat->carrier(sq.prod); ++w)
        if (m.test(w) && fc.cat->table(sq.pr1)[w] == x) cls[fc.cat->table(sq.pr2)[w]] = count;
      ++count;
    }
    Assembly img;
    img.name = qc.obj_id(qo);
    img.points.resize(count);
    img.codes.resize(count);
    for (int x = 0; x < base.size(); ++x) {
      img.points[cls[x]] = "q" + std::to_string(cls[x]);
      for (const Nat& n : base.codes[x]) img.codes[cls[x]].push_back(n);
    }
    for (auto& cs : img.codes) {
      std::sort(cs.begin(), cs.end());
      cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    }
    image[qo] = std::move(img);
  }

  for (int qa = 0; qa < int(qp.objects.size()); ++qa)
    for (int qb = 0; qb < int(qp.objects.size()); ++qb) {
      std::set<std::vector<int>> induced;
      for (Arr cl : qc.hom(qa, qb)) {
        if (!induced.insert(qc.table(cl)).second) {
          rep.faithful = false;
          rep.ok = false;
          rep.failure = "two classes induce the same assembly map";
          return rep;
        }
        if (!is_tracked(qc.table(cl), image[qa], image[qb])) {
          rep.ok = false;
          rep.failure = "induced map is not tracked";
          return rep;
        }
      }
      for (auto& t : tracked_tables(image[qa], image[qb]))
        if (!induced.count(t)) {
          rep.full = false;
          rep.ok = false;
          rep.failure = "tracked map " + image[qa].name + ">" + image[qb].name +
                        " has no preimage class";
          return rep;
        }
    }

  // essential surjectivity onto the bounded assemblies
  std::vector<std::vector<Nat>> subsets;
  for (std::size_t mask = 1; mask < (std::size_t(1) << code_universe.size()); ++mask) {
    std::vector<Nat> cs;
    for (std::size_t i = 0; i < code_universe.size(); ++i)
      if (mask & (std::size_t(1) << i)) cs.push_back(code_universe[i]);
    subsets.push_back(cs);
  }
  std::function<void(Assembly&, int, std::size_t)> enumerate = [&](Assembly& cur, int remaining,
                                                                   std::size_t min_choice) {
    bool hit = false;
    for (int qo = 0; qo < int(qp.objects.size()) && !hit; ++qo)
      if (assemblies_isomorphic(image[qo], cur)) hit = true;
    if (hit) ++rep.surjective_hits;
    else {
      // a miss is genuine when the partitioned cover of the target is
      // in the fragment, since its quotient would have to match
      std::vector<Nat> cover_codes;
      for (auto& cs : cur.codes)
        for (auto& n : cs) cover_codes.push_back(n);
      std::sort(cover_codes.begin(), cover_codes.end());
      bool cover_present = false;
      for (auto& obj : frag.objects) {
        if (!obj.partitioned() || obj.size() != int(cover_codes.size())) continue;
        std::vector<Nat> oc;
        for (auto& cs : obj.codes) oc.push_back(cs.front());
        std::sort(oc.begin(), oc.end());
        if (oc == cover_codes) { cover_present = true; break; }
      }
      if (cover_present) ++rep.genuine_misses;
      else ++rep.surjective_misses;
      std::string sig = "{";
      for (auto& cs : cur.codes) {
        sig += "{";
        for (auto& n : cs) sig += n.get_str() + ",";
        sig += "}";
      }
      rep.missed.push_back(sig + "}");
    }
    if (remaining == 0) return;
    for (std::size_t choice = min_choice; choice < subsets.size(); ++choice) {
      cur.points.push_back("p" + std::to_string(cur.points.size()));
      cur.codes.push_back(subsets[choice]);
      enumerate(cur, remaining - 1, choice);  // nondecreasing code sets: up to iso
      cur.points.pop_back();
      cur.codes.pop_back();
    }
  };
  Assembly seed;
  seed.name = "target";
  enumerate(seed, carrier_bound, 0);
  if (rep.genuine_misses > 0) {
    rep.ok = false;
    rep.failure = "a covered assembly has no matching quotient";
  }
  (void)fuel;
  return rep;
}

TctReport check_tct_pgamma(long quantifier_bound, long fuel, const Nat& code_bound) {
  TctReport rep;
  for (Nat t = 0; t <= code_bound; ++t) {
    std::vector<Nat> g(quantifier_bound + 1);
    bool member = true;
    for (long x = 0; x <= quantifier_bound && member; ++x) {
      auto r = apply_code(t, x, fuel);
      if (r.kind != RunResult::Halted) member = false;
      else g[x] = r.value;
    }
    if (!member) continue;
    ++rep.members;
    // e := t is the recursiveness witness, via the halting-trace test
    for (long x = 0; x <= quantifier_bound; ++x) {
      auto r = apply_code(t, x, fuel);
      Nat y = pca::trace_code(r.steps, r.value);
      if (pca::kleene_T(t, x, y) != 1 || pca::kleene_U(y) != g[x]) {
        rep.ok = false;
        rep.witness =
            "trace test fails for tracker " + t.get_str() + " at x=" + std::to_string(x);
        return rep;
      }
    }
  }
  return rep;
}

CtReport check_ct_instance(const Nat& relation_program, long bound, long fuel,
                           const Nat& code_bound, long witness_bound) {
  CtReport rep;
  if (witness_bound < 0) witness_bound = bound;
  auto holds = [&](long x, const Nat& n) {
    auto r = apply_code(relation_program, pair_encode(x, n), fuel);
    return r.kind == RunResult::Halted && r.value == 1;
  };
  std::vector<Nat> choice(bound + 1);
  for (long x = 0; x <= bound; ++x) {
    long n = -1;
    for (long cand = 0; cand <= witness_bound; ++cand)
      if (holds(x, cand)) { n = cand; break; }
    if (n < 0) {
      rep.ok = false;
      rep.witness = "relation is not entire at x=" + std::to_string(x);
      return rep;
    }
    choice[x] = n;
  }
  Assembly nat = naturals_assembly(bound);
  Assembly wit = naturals_assembly(witness_bound);
  std::vector<int> table(bound + 1);
  for (long x = 0; x <= bound; ++x) table[x] = int(choice[x].get_ui());
  TermPtr tracker;
  if (auto found = find_tracker(table, nat, wit, code_bound, fuel)) {
    rep.code = *found;
    tracker = pca::decode(*found);
  } else {
    tracker = *track_table(table, nat, wit);
    rep.code = pca::encode(tracker);
  }
  for (long x = 0; x <= bound; ++x) {
    auto r = pca::run(t_app(tracker, t_num(x)), fuel);
    if (r.kind != RunResult::Halted) {
      rep.ok = false;
      rep.witness = "choice code diverges at x=" + std::to_string(x);
      return rep;
    }
    Nat y = pca::trace_code(r.steps, r.value);
    if (pca::kleene_T(rep.code, x, y) != 1 || !holds(x, pca::kleene_U(y))) {
      rep.ok = false;
      rep.witness = "trace output fails the relation at x=" + std::to_string(x);
      return rep;
    }
  }
  return rep;
}

SkolemReport skolem_min_search(long nat_bound, long fuel, const Nat& code_bound) {
  SkolemReport rep;
  std::vector<Nat> trackers;
  std::vector<std::vector<Nat>> tables;
  for (Nat t = 0; t <= code_bound; ++t) {
    std::vector<Nat> g(nat_bound + 1);
    bool member = true;
    for (long x = 0; x <= nat_bound && member; ++x) {
      auto r = apply_code(t, x, fuel);
      if (r.kind != RunResult::Halted) member = false;
      else g[x] = r.value;
    }
    if (member) {
      trackers.push_back(t);
      tables.push_back(g);
    }
  }
  // the minimal-trace map on the grid W x N x N; by determinism of the
  // machine the only accepted trace is the halting one, so the minimum
  // is that trace where it exists (0 as the off-grid default)
  std::map<Nat, std::map<Nat, std::map<Nat, Nat>>> eps;  // t -> e -> x -> y
  for (std::size_t wi = 0; wi < trackers.size(); ++wi)
    for (long e = 0; e <= nat_bound; ++e)
      for (long x = 0; x <= nat_bound; ++x) {
        auto r = apply_code(e, x, fuel);
        Nat y = 0;
        if (r.kind == RunResult::Halted && r.value == tables[wi][x])
          y = pca::trace_code(r.steps, r.value);
        else if (r.kind == RunResult::OutOfFuel)
          ++rep.fuel_bound_hits;
        eps[trackers[wi]][Nat(e)][Nat(x)] = y;
        ++rep.grid_checked;
        // the Skolem equation pointwise: some y passes the trace test
        // with the right output iff the chosen y does
        bool lhs = r.kind == RunResult::Halted && r.value == tables[wi][x];
        bool rhs = pca::kleene_T(e, x, y) == 1 && pca::kleene_U(y) == tables[wi][x];
        if (lhs != rhs) {
          rep.ok = false;
          rep.witness = "pointwise mismatch at t=" + trackers[wi].get_str() +
                        " e=" + std::to_string(e) + " x=" + std::to_string(x);
          return rep;
        }
        if (Nat(e) == trackers[wi] && !rhs) {
          rep.ok = false;
          rep.witness = "own tracker rejected at t=" + trackers[wi].get_str();
          return rep;
        }
      }
  // the map is tracked by nested finite tables selected by application
  std::map<Nat, TermPtr> outer;
  for (auto& [t, mid] : eps) {
    std::map<Nat, TermPtr> mid_terms;
    for (auto& [e, row] : mid) mid_terms[e] = pca::table_term(row);
    outer[t] = pca::table_term_terms(mid_terms);
  }
  TermPtr chain = pca::table_term_terms(outer);
  TermPtr eps_term = t_lam(t_app(
      t_app(t_app(chain, pca::t_fst(pca::t_fst(t_var(0)))), pca::t_snd(pca::t_fst(t_var(0)))),
      pca::t_snd(t_var(0))));
  for (auto& [t, mid] : eps)
    for (auto& [e, row] : mid)
      for (auto& [x, y] : row) {
        Nat code = pair_encode(pair_encode(t, e), x);
        auto r = pca::run(t_app(eps_term, t_num(code)), 1L << 22);
        if (r.kind != RunResult::Halted || r.value != y) {
          rep.ok = false;
          rep.witness = "table tracker fails on a grid code";
          return rep;
        }
      }
  return rep;
}

SkolemReport skolem_projection(long nat_bound, long fuel, const Nat& code_bound) {
  SkolemReport rep;
  for (Nat t = 0; t <= code_bound; ++t) {
    std::vector<Nat> g(nat_bound + 1);
    bool member = true;
    for (long x = 0; x <= nat_bound && member; ++x) {
      auto r = apply_code(t, x, fuel);
      if (r.kind != RunResult::Halted) member = false;
      else g[x] = r.value;
    }
    if (!member) continue;
    ++rep.grid_checked;
    // epsilon(f) = V(f) = t: the member certifies itself
    bool rhs = true;
    for (long x = 0; x <= nat_bound && rhs; ++x) {
      auto r = apply_code(t, x, fuel);
      Nat y = pca::trace_code(r.steps, r.value);
      rhs = pca::kleene_T(t, x, y) == 1 && pca::kleene_U(y) == g[x];
    }
    if (!rhs) {
      rep.ok = false;
      rep.witness = "projection Skolem arrow fails at t=" + t.get_str();
      return rep;
    }
  }
  return rep;
}

namespace {

Fragment make_basic() {
  Fragment f;
  for (int n = 0; n <= 4; ++n) f.objects.push_back(canonical_assembly(n));
  Assembly p4 = product_assembly(f.objects[2], f.objects[2]);
  f.objects.push_back(p4);
  f.terminal = 1;
  f.products[{2, 2}] = 5;
  f.products[{0, 0}] = 0;
  return f;
}

Fragment make_collision() {
  Fragment f = make_basic();
  Assembly c2;
  c2.name = "C2";
  c2.points = {"x", "y"};
  c2.codes = {{Nat(7)}, {Nat(7)}};
  int c2i = int(f.objects.size());
  f.objects.push_back(c2);
  int pm = int(f.objects.size());
  f.objects.push_back(product_assembly(f.objects[2], c2));
  int pm2 = int(f.objects.size());
  f.objects.push_back(product_assembly(c2, f.objects[2]));
  f.products[{2, c2i}] = pm;
  f.products[{c2i, 2}] = pm2;
  return f;
}

Assembly multiset_assembly(const std::vector<int>& ms) {
  Assembly a;
  a.name = "A";
  for (std::size_t i = 0; i < ms.size(); ++i) {
    a.name += std::to_string(ms[i]);
    a.points.push_back("p" + std::to_string(i));
    a.codes.push_back({Nat(ms[i])});
  }
  return a;
}

Fragment make_carfur(const std::vector<std::vector<int>>& multisets) {
  Fragment f;
  f.with_pullbacks = false;
  f.objects.push_back(canonical_assembly(0));
  int terminal = -1;
  std::vector<int> small;
  for (auto& ms : multisets) {
    small.push_back(int(f.objects.size()));
    if (ms.size() == 1 && ms[0] == 0) terminal = int(f.objects.size());
    f.objects.push_back(multiset_assembly(ms));
  }
  f.terminal = terminal;
  f.products[{0, 0}] = 0;
  for (int i : small) {
    int sq = int(f.objects.size());
    f.objects.push_back(product_assembly(f.objects[i], f.objects[i]));
    f.products[{i, i}] = sq;
  }
  return f;
}

}  // namespace

const Fragment& basic_fragment() {
  static Fragment f = make_basic();
  return f;
}
const FragmentCategory& basic_category() {
  static FragmentCategory fc = fragment_category(basic_fragment());
  return fc;
}
const Fragment& collision_fragment() {
  static Fragment f = make_collision();
  return f;
}
const FragmentCategory& collision_category() {
  static FragmentCategory fc = fragment_category(collision_fragment());
  return fc;
}
const Fragment& carfur_fixture() {
  static Fragment f = make_carfur({{0}, {1}, {0, 0}, {0, 1}, {1, 1}});
  return f;
}
const FragmentCategory& carfur_category() {
  static FragmentCategory fc = fragment_category(carfur_fixture());
  return fc;
}
const Fragment& carfur3_fixture() {
  static Fragment f = make_carfur({{0}, {0, 0, 1}});
  return f;
}
const FragmentCategory& carfur3_category() {
  static FragmentCategory fc = fragment_category(carfur3_fixture());
  return fc;
}

}  // namespace eqc::pasm
