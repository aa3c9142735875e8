#include "eqc/completion.hpp"

#include <algorithm>
#include <cassert>

#include "eqc/fincat.hpp"

namespace eqc::completion {

using doctrine::check_equivalence_relation;
using doctrine::ConcreteFibers;
using fincat::FinCategory;
using fincat::pairing;
using fincat::Product;
using fincat::ProductChoice;
using order::FinPoset;
using order::InfSemilattice;
using order::MonotoneMap;

int QuotDoctrine::object_index(Obj carrier, Elem rho) const {
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i].carrier == carrier && objects[i].rho == rho) return int(i);
  return -1;
}

int QuotDoctrine::class_index(int qa, int qb, Arr f) const {
  const FinCategory& qc = *q.base;
  for (Arr a : qc.hom(qa, qb))
    if (std::find(arrow_class[a].begin(), arrow_class[a].end(), f) != arrow_class[a].end())
      return a;
  return -1;
}

int QuotDoctrine::descent_index(int qo, Elem alpha) const {
  for (std::size_t i = 0; i < fiber_elem[qo].size(); ++i)
    if (fiber_elem[qo][i] == alpha) return int(i);
  return -1;
}

namespace {

struct Builder {
  const Doctrine& p;
  const FinCategory& c;

  // similarity of compatible arrows f, g: (A,rho) -> (B,sigma)
  bool sim(const QuotObject& qa, const QuotObject& qb, Arr f, Arr g) const {
    const auto& sqa = p.products.at(qa.carrier, qa.carrier);
    Arr w = pairing(c, p.products, c.compose(f, sqa.pr1), c.compose(g, sqa.pr2));
    if (w < 0) return false;
    return p.leq(sqa.prod, qa.rho, p.rx1(w, qb.rho));
  }

  // rho-classes of the concrete carrier, for the concrete quotient base
  std::vector<int> carrier_classes(const QuotObject& qo, int& count) const {
    const auto& sq = p.products.at(qo.carrier, qo.carrier);
    const Bits& m = p.conc->masks[sq.prod][qo.rho];
    int n = c.carrier(qo.carrier);
    std::vector<int> cls(n, -1);
    count = 0;
    for (int x = 0; x < n; ++x) {
      if (cls[x] >= 0) continue;
      cls[x] = count;
      for (int w = 0; w < c.carrier(sq.prod); ++w)
        if (m.test(w) && c.table(sq.pr1)[w] == x) cls[c.table(sq.pr2)[w]] = count;
      ++count;
    }
    return cls;
  }
};

}  // namespace

Result<QuotDoctrine, CompletionError> complete(std::shared_ptr<const Doctrine> pp,
                                               const ElementaryStructure& delta) {
  const Doctrine& p = *pp;
  const FinCategory& c = *p.base;
  QuotDoctrine out;
  out.base = pp;
  out.base_delta = delta;
  Builder bld{p, c};

  // objects: every equivalence relation in every fiber over a square
  for (Obj a = 0; a < c.num_objects(); ++a) {
    if (!p.products.has(a, a) || !delta.has(a)) continue;
    Obj sq = p.products.at(a, a).prod;
    for (int rho = 0; rho < p.fiber(sq).size(); ++rho)
      if (check_equivalence_relation(p, delta, a, rho).ok())
        out.objects.push_back({a, Elem(rho)});
  }
  const int nq = int(out.objects.size());
  if (nq == 0) return CompletionError{"no equivalence relations found"};

  // arrow classes per object pair
  std::vector<std::vector<std::vector<Arr>>> classes(std::size_t(nq) * nq);
  for (int qa = 0; qa < nq; ++qa)
    for (int qb = 0; qb < nq; ++qb) {
      auto& cl = classes[std::size_t(qa) * nq + qb];
      for (Arr f : c.hom(out.objects[qa].carrier, out.objects[qb].carrier)) {
        if (!bld.sim(out.objects[qa], out.objects[qb], f, f)) continue;
        bool placed = false;
        for (auto& members : cl)
          if (bld.sim(out.objects[qa], out.objects[qb], f, members[0])) {
            if (!bld.sim(out.objects[qa], out.objects[qb], members[0], f))
              return CompletionError{"similarity not symmetric at " + c.arr_id(f)};
            members.push_back(f);
            placed = true;
            break;
          }
        if (!placed) cl.push_back({f});
      }
      for (auto& members : cl)
        for (Arr f : members)
          for (Arr g : members)
            if (!bld.sim(out.objects[qa], out.objects[qb], f, g))
              return CompletionError{"similarity not transitive at " + c.arr_id(f)};
    }

  std::vector<std::string> obj_ids(nq);
  for (int i = 0; i < nq; ++i)
    obj_ids[i] = c.obj_id(out.objects[i].carrier) + "|r" + std::to_string(out.objects[i].rho);

  std::vector<std::string> arr_ids;
  std::vector<Obj> src, tgt;
  std::vector<int> first_index(std::size_t(nq) * nq, 0);
  for (int qa = 0; qa < nq; ++qa)
    for (int qb = 0; qb < nq; ++qb) {
      first_index[std::size_t(qa) * nq + qb] = int(arr_ids.size());
      auto& cl = classes[std::size_t(qa) * nq + qb];
      for (std::size_t k = 0; k < cl.size(); ++k) {
        arr_ids.push_back(obj_ids[qa] + ">" + obj_ids[qb] + "#" + std::to_string(k));
        src.push_back(qa);
        tgt.push_back(qb);
        out.arrow_class.push_back(cl[k]);
      }
    }
  const int narr = int(arr_ids.size());
  auto find_class = [&](int qa, int qb, Arr f) -> int {
    auto& cl = classes[std::size_t(qa) * nq + qb];
    for (std::size_t k = 0; k < cl.size(); ++k)
      if (bld.sim(out.objects[qa], out.objects[qb], f, cl[k][0]) &&
          bld.sim(out.objects[qa], out.objects[qb], cl[k][0], f))
        return first_index[std::size_t(qa) * nq + qb] + int(k);
    return -1;
  };

  std::vector<Arr> identities(nq, -1);
  for (int qa = 0; qa < nq; ++qa) {
    identities[qa] = find_class(qa, qa, c.identity(out.objects[qa].carrier));
    if (identities[qa] < 0) return CompletionError{"identity class missing at " + obj_ids[qa]};
  }

  // composition by representatives, re-checked well defined on members
  std::vector<Arr> comp(std::size_t(narr) * narr, -1);
  for (Arr f = 0; f < narr; ++f)
    for (Arr g = 0; g < narr; ++g) {
      if (tgt[f] != src[g]) continue;
      Arr base = c.compose(out.arrow_class[g][0], out.arrow_class[f][0]);
      int cls = find_class(src[f], tgt[g], base);
      if (cls < 0) return CompletionError{"composite escapes the classes"};
      for (Arr fm : out.arrow_class[f])
        for (Arr gm : out.arrow_class[g])
          if (find_class(src[f], tgt[g], c.compose(gm, fm)) != cls)
            return CompletionError{"composition not well defined on representatives"};
      comp[std::size_t(g) * narr + f] = cls;
    }

  std::shared_ptr<const FinCategory> qcat;
  if (p.conc && c.concrete()) {
    // concrete quotient base: carriers are rho-classes, arrows the
    // induced maps; distinct classes induce distinct tables
    std::vector<int> carriers(nq);
    std::vector<std::vector<int>> cls_of(nq);
    for (int i = 0; i < nq; ++i) cls_of[i] = bld.carrier_classes(out.objects[i], carriers[i]);
    std::vector<std::vector<int>> tables(narr);
    for (Arr a = 0; a < narr; ++a) {
      Arr rep = out.arrow_class[a][0];
      std::vector<int> t(carriers[src[a]], -1);
      for (int x = 0; x < c.carrier(out.objects[src[a]].carrier); ++x) {
        int from = cls_of[src[a]][x];
        int to = cls_of[tgt[a]][c.table(rep)[x]];
        if (t[from] >= 0 && t[from] != to)
          return CompletionError{"induced table not well defined at " + arr_ids[a]};
        t[from] = to;
      }
      tables[a] = std::move(t);
    }
    for (Arr a = 0; a < narr; ++a)
      for (Arr b = a + 1; b < narr; ++b)
        if (src[a] == src[b] && tgt[a] == tgt[b] && tables[a] == tables[b])
          return CompletionError{"distinct classes share an induced table"};
    qcat = std::make_shared<const FinCategory>(FinCategory::make_concrete(
        obj_ids, carriers, arr_ids, src, tgt, tables, identities));
  } else {
    qcat = std::make_shared<const FinCategory>(
        FinCategory::make_explicit(obj_ids, arr_ids, src, tgt, comp, identities));
  }

  // chosen products: (A,rho) x (B,sigma) = (AxB, rho box sigma)
  ProductChoice qpc;
  {
    Obj t = p.products.terminal;
    if (!p.products.has(t, t) || !delta.has(t))
      return CompletionError{"terminal has no equality predicate"};
    qpc.terminal = out.object_index(t, delta.delta[t]);
    if (qpc.terminal < 0) return CompletionError{"terminal object missing in completion"};
  }
  qpc.bang.resize(nq);
  for (int qa = 0; qa < nq; ++qa) {
    qpc.bang[qa] = find_class(qa, qpc.terminal, p.products.bang[out.objects[qa].carrier]);
    if (qpc.bang[qa] < 0) return CompletionError{"bang class missing at " + obj_ids[qa]};
  }
  for (int qa = 0; qa < nq; ++qa)
    for (int qb = 0; qb < nq; ++qb) {
      Obj a = out.objects[qa].carrier, b = out.objects[qb].carrier;
      if (!p.products.has(a, b)) continue;
      const auto& ab = p.products.at(a, b);
      if (!p.products.has(ab.prod, ab.prod) || !delta.has(ab.prod)) continue;
      const auto& sq = p.products.at(ab.prod, ab.prod);
      Arr pi13 = pairing(c, p.products, c.compose(ab.pr1, sq.pr1), c.compose(ab.pr1, sq.pr2));
      Arr pi24 = pairing(c, p.products, c.compose(ab.pr2, sq.pr1), c.compose(ab.pr2, sq.pr2));
      if (pi13 < 0 || pi24 < 0) continue;
      Elem box =
          p.meet(sq.prod, p.rx1(pi13, out.objects[qa].rho), p.rx1(pi24, out.objects[qb].rho));
      int qprod = out.object_index(ab.prod, box);
      if (qprod < 0)
        return CompletionError{"product relation is not an equivalence at " + obj_ids[qa] +
                               " x " + obj_ids[qb]};
      Arr p1 = find_class(qprod, qa, ab.pr1);
      Arr p2 = find_class(qprod, qb, ab.pr2);
      if (p1 < 0 || p2 < 0)
        return CompletionError{"projection class missing at " + obj_ids[qa] + " x " +
                               obj_ids[qb]};
      qpc.pairs[{qa, qb}] = Product{qprod, p1, p2};
    }

  // fibers: descent data, meet-closed with top
  Doctrine q;
  q.base = qcat;
  q.products = qpc;
  out.fiber_elem.resize(nq);
  for (int qo = 0; qo < nq; ++qo) {
    Obj a = out.objects[qo].carrier;
    Elem rho = out.objects[qo].rho;
    const auto& sq = p.products.at(a, a);
    std::vector<Elem> des;
    for (int al = 0; al < p.fiber(a).size(); ++al) {
      Elem moved = p.meet(sq.prod, p.rx1(sq.pr1, al), rho);
      if (p.leq(sq.prod, moved, p.rx1(sq.pr2, al))) des.push_back(Elem(al));
    }
    if (std::find(des.begin(), des.end(), p.top(a)) == des.end())
      return CompletionError{"descent data misses top at " + obj_ids[qo]};
    for (Elem x : des)
      for (Elem y : des)
        if (std::find(des.begin(), des.end(), p.meet(a, x, y)) == des.end())
          return CompletionError{"descent data not meet-closed at " + obj_ids[qo]};
    int n = int(des.size());
    std::vector<std::string> ids(n);
    std::vector<Bits> up(n, Bits(n));
    for (int i = 0; i < n; ++i) {
      ids[i] = "p" + std::to_string(des[i]);
      for (int j = 0; j < n; ++j)
        if (p.leq(a, des[i], des[j])) up[i].set(j);
    }
    auto lat = order::inf_semilattice(
        std::make_shared<const FinPoset>(FinPoset(std::move(ids), std::move(up))));
    if (!lat.ok()) return CompletionError{"descent fiber: " + lat.error().describe()};
    q.fibers.push_back(lat.value());
    out.fiber_elem[qo] = std::move(des);
  }

  // reindexing along classes, member-independent and descent-preserving
  for (Arr qa = 0; qa < narr; ++qa) {
    int s = src[qa], t = tgt[qa];
    MonotoneMap m{q.fibers[t].poset_ptr(), q.fibers[s].poset_ptr(),
                  std::vector<Elem>(q.fibers[t].size(), -1)};
    for (std::size_t i = 0; i < out.fiber_elem[t].size(); ++i) {
      Elem img = p.rx1(out.arrow_class[qa][0], out.fiber_elem[t][i]);
      int pos = -1;
      for (std::size_t j = 0; j < out.fiber_elem[s].size(); ++j)
        if (out.fiber_elem[s][j] == img) pos = int(j);
      if (pos < 0) return CompletionError{"reindex leaves descent data at " + arr_ids[qa]};
      for (Arr mem : out.arrow_class[qa])
        if (p.rx1(mem, out.fiber_elem[t][i]) != img)
          return CompletionError{"reindex depends on the representative at " + arr_ids[qa]};
      m.graph[i] = pos;
    }
    q.reindex.push_back(std::move(m));
  }

  // concrete semantics on quotient carriers when the base had it
  if (p.conc && c.concrete()) {
    ConcreteFibers conc;
    conc.masks.resize(nq);
    for (int qo = 0; qo < nq; ++qo) {
      int count = 0;
      auto cls = bld.carrier_classes(out.objects[qo], count);
      Obj a = out.objects[qo].carrier;
      for (Elem al : out.fiber_elem[qo]) {
        const Bits& base_mask = p.conc->masks[a][al];
        Bits m(count);
        for (int x = 0; x < c.carrier(a); ++x)
          if (base_mask.test(x)) m.set(cls[x]);
        for (int x = 0; x < c.carrier(a); ++x)
          if (m.test(cls[x]) != base_mask.test(x))
            return CompletionError{"descent element not saturated at " + obj_ids[qo]};
        conc.masks[qo].push_back(std::move(m));
      }
    }
    q.conc = std::move(conc);
  }

  if (auto err = fincat::check_category(*qcat))
    return CompletionError{"completed base invalid: " + err->describe()};
  if (auto err = fincat::check_products(*qcat, qpc))
    return CompletionError{"completed products invalid: " + err->describe()};
  if (auto err = doctrine::check_doctrine(q))
    return CompletionError{"completed doctrine invalid: " + err->describe()};

  out.q = std::move(q);
  auto qd = doctrine::find_elementary(out.q);
  if (!qd.ok())
    return CompletionError{"completion has no equality predicate: " + qd.error().describe()};
  out.q_delta = qd.value();
  return out;
}

CompletedDeltaReport check_completed_delta(const QuotDoctrine& qp) {
  CompletedDeltaReport rep;
  for (int qo = 0; qo < int(qp.objects.size()); ++qo) {
    if (!qp.q.products.has(qo, qo)) {
      ++rep.objects_skipped;
      continue;
    }
    int qsq = qp.q.products.at(qo, qo).prod;
    if (!qp.q_delta.has(qo)) {
      rep.ok = false;
      rep.failure = "no equality predicate over " + qp.q.base->obj_id(qo);
      return rep;
    }
    ++rep.objects_checked;
    Elem under = qp.fiber_elem[qsq][qp.q_delta.delta[qo]];
    if (under != qp.objects[qo].rho) {
      rep.ok = false;
      rep.failure = "delta over " + qp.q.base->obj_id(qo) + " is p-element " +
                    std::to_string(under) + ", expected " + std::to_string(qp.objects[qo].rho);
      return rep;
    }
  }
  return rep;
}

EffectiveQuotientReport check_effective_quotients(const QuotDoctrine& qp) {
  EffectiveQuotientReport rep;
  const FinCategory& qc = *qp.q.base;
  const Doctrine& p = *qp.base;
  const FinCategory& c = *p.base;
  const int nq = int(qp.objects.size());

  for (int qo = 0; qo < nq; ++qo) {
    if (!qp.q.products.has(qo, qo)) continue;
    int qsq = qp.q.products.at(qo, qo).prod;
    for (int si = 0; si < int(qp.fiber_elem[qsq].size()); ++si) {
      if (!check_equivalence_relation(qp.q, qp.q_delta, qo, si).ok()) continue;
      Elem sigma = qp.fiber_elem[qsq][si];
      int target = qp.object_index(qp.objects[qo].carrier, sigma);
      if (target < 0) {
        rep.ok = false;
        rep.failure = "quotient object missing for relation " + std::to_string(sigma);
        return rep;
      }
      Arr quot = qp.class_index(qo, target, c.identity(qp.objects[qo].carrier));
      if (quot < 0) {
        rep.ok = false;
        rep.failure = "[id] is not an arrow (A,rho) -> (A,sigma)";
        return rep;
      }
      ++rep.quotients_checked;

      // universal property: arrows coequalizing sigma factor uniquely
      const auto& sqa = p.products.at(qp.objects[qo].carrier, qp.objects[qo].carrier);
      for (int qz = 0; qz < nq; ++qz)
        for (Arr g : qc.hom(qo, qz)) {
          Arr rep_g = qp.arrow_class[g][0];
          Arr gg = pairing(c, p.products, c.compose(rep_g, sqa.pr1), c.compose(rep_g, sqa.pr2));
          if (gg < 0) continue;
          if (!p.leq(sqa.prod, sigma, p.rx1(gg, qp.objects[qz].rho))) continue;
          ++rep.universal_pairs;
          int factored = 0;
          for (Arr h : qc.hom(target, qz))
            if (qc.compose(h, quot) == g) ++factored;
          if (factored != 1) {
            rep.ok = false;
            rep.failure = "quotient universal property fails (" + std::to_string(factored) +
                          " factorizations)";
            return rep;
          }
        }

      // stability under the chosen pullbacks, where constructible
      for (int qb = 0; qb < nq; ++qb)
        for (Arr f : qc.hom(qb, target)) {
          Obj bcar = qp.objects[qb].carrier;
          Obj acar = qp.objects[qo].carrier;
          if (!p.products.has(bcar, acar)) {
            ++rep.stability_skipped;
            continue;
          }
          const auto& ba = p.products.at(bcar, acar);
          Arr rep_f = qp.arrow_class[f][0];
          Arr into_sq = pairing(c, p.products, c.compose(rep_f, ba.pr1), ba.pr2);
          if (into_sq < 0) {
            ++rep.stability_skipped;
            continue;
          }
          Elem pred = p.rx1(into_sq, sigma);  // f(b) sigma a over B x A
          auto compr = doctrine::check_comprehension(p, ba.prod, pred);
          if (!compr.weak) {
            ++rep.stability_skipped;
            continue;
          }
          Arr m = *compr.weak;
          Obj u = c.src(m);
          if (!p.products.has(u, u) || !p.products.has(ba.prod, ba.prod) ||
              !qp.base_delta.has(u)) {
            ++rep.stability_skipped;
            continue;
          }
          const auto& squ = p.products.at(u, u);
          Arr mm = fincat::product_of_arrows(c, p.products, m, m);
          if (mm < 0) {
            ++rep.stability_skipped;
            continue;
          }
          const auto& sqba = p.products.at(ba.prod, ba.prod);
          Arr pi13 = pairing(c, p.products, c.compose(ba.pr1, sqba.pr1),
                             c.compose(ba.pr1, sqba.pr2));
          Arr pi24 = pairing(c, p.products, c.compose(ba.pr2, sqba.pr1),
                             c.compose(ba.pr2, sqba.pr2));
          if (pi13 < 0 || pi24 < 0) {
            ++rep.stability_skipped;
            continue;
          }
          Elem boxed = p.meet(sqba.prod, p.rx1(pi13, qp.objects[qb].rho),
                              p.rx1(pi24, qp.objects[qo].rho));
          Elem theta = p.rx1(mm, boxed);
          int w = qp.object_index(u, theta);
          if (w < 0) {
            ++rep.stability_skipped;
            continue;
          }
          Arr legb = qp.class_index(w, qb, c.compose(ba.pr1, m));
          Arr lega = qp.class_index(w, qo, c.compose(ba.pr2, m));
          if (legb < 0 || lega < 0) {
            ++rep.stability_skipped;
            continue;
          }
          if (qc.compose(f, legb) != qc.compose(quot, lega)) {
            rep.ok = false;
            rep.failure = "chosen pullback square does not commute";
            return rep;
          }
          for (int qz = 0; qz < nq; ++qz)
            for (Arr h : qc.hom(qz, qb))
              for (Arr k : qc.hom(qz, qo)) {
                if (qc.compose(f, h) != qc.compose(quot, k)) continue;
                int count = 0;
                for (Arr uarr : qc.hom(qz, w))
                  if (qc.compose(legb, uarr) == h && qc.compose(lega, uarr) == k) ++count;
                if (count != 1) {
                  rep.ok = false;
                  rep.failure = "pullback universal property fails";
                  return rep;
                }
              }
          // q' = legb is a quotient: the effective quotient of the
          // relation it induces, (q' x q')* tau
          Arr rep_q2 = qp.arrow_class[legb][0];
          Arr q2q2 = pairing(c, p.products, c.compose(rep_q2, squ.pr1),
                             c.compose(rep_q2, squ.pr2));
          if (q2q2 < 0) {
            ++rep.stability_skipped;
            continue;
          }
          Elem rho_w = p.rx1(q2q2, qp.objects[qb].rho);
          ++rep.stability_checked;
          for (int qz = 0; qz < nq; ++qz)
            for (Arr g : qc.hom(w, qz)) {
              Arr rep_g2 = qp.arrow_class[g][0];
              Arr gg2 = pairing(c, p.products, c.compose(rep_g2, squ.pr1),
                                c.compose(rep_g2, squ.pr2));
              if (gg2 < 0) continue;
              if (!p.leq(squ.prod, rho_w, p.rx1(gg2, qp.objects[qz].rho))) continue;
              int count = 0;
              for (Arr h : qc.hom(qb, qz))
                if (qc.compose(h, legb) == g) ++count;
              if (count != 1) {
                rep.ok = false;
                rep.failure = "pulled-back quotient universal property fails";
                return rep;
              }
            }
        }
    }
  }
  return rep;
}

TransferReport check_ruc_transfer(std::shared_ptr<const Doctrine> p,
                                  const ElementaryStructure& delta) {
  TransferReport rep;
  auto rc = doctrine::check_rule(*p, delta, doctrine::ChoiceRule::RC);
  rep.base_holds = rc.holds;
  auto qp = complete(p, delta);
  if (!qp.ok()) {
    rep.detail = "completion failed: " + qp.error().describe();
    return rep;
  }
  auto ruc = doctrine::check_rule(qp.value().q, qp.value().q_delta, doctrine::ChoiceRule::RUC);
  rep.completed_holds = ruc.holds;
  rep.agree = rep.base_holds == rep.completed_holds;
  rep.detail = std::string("RC(P)=") + (rc.holds ? "yes" : "no") +
               " RUC(QP)=" + (ruc.holds ? "yes" : "no");
  return rep;
}

namespace {

bool axiom_everywhere(const Doctrine& d, const ElementaryStructure& delta,
                      doctrine::ChoiceAxiom ax) {
  for (Obj a = 0; a < d.base->num_objects(); ++a) {
    auto r = doctrine::check_axiom(d, delta, ax, a);
    if (r.verdict == doctrine::AxiomReport::Fails) return false;
  }
  return true;
}

}  // namespace

TransferReport check_auc_transfer(std::shared_ptr<const Doctrine> p,
                                  const ElementaryStructure& delta,
                                  bool full_weak_comprehensions) {
  TransferReport rep;
  rep.base_holds = axiom_everywhere(*p, delta, doctrine::ChoiceAxiom::AC);
  auto qp = complete(p, delta);
  if (!qp.ok()) {
    rep.detail = "completion failed: " + qp.error().describe();
    return rep;
  }
  rep.completed_holds =
      axiom_everywhere(qp.value().q, qp.value().q_delta, doctrine::ChoiceAxiom::AUC);
  rep.agree = (!rep.base_holds || rep.completed_holds) &&
              (!full_weak_comprehensions || !rep.completed_holds || rep.base_holds);
  rep.detail = std::string("AC(P)=") + (rep.base_holds ? "yes" : "no") +
               " AUC(QP)=" + (rep.completed_holds ? "yes" : "no");
  return rep;
}

TransferReport check_ac_on_object_transfer(std::shared_ptr<const Doctrine> p,
                                           const ElementaryStructure& delta, Obj a) {
  TransferReport rep;
  auto base = doctrine::check_axiom(*p, delta, doctrine::ChoiceAxiom::AC, a);
  rep.base_holds = base.verdict == doctrine::AxiomReport::Holds;
  auto qp = complete(p, delta);
  if (!qp.ok()) {
    rep.detail = "completion failed: " + qp.error().describe();
    return rep;
  }
  int qa = qp.value().object_index(a, delta.delta[a]);
  if (qa < 0) {
    rep.detail = "(A, delta) missing in the completion";
    return rep;
  }
  auto comp =
      doctrine::check_axiom(qp.value().q, qp.value().q_delta, doctrine::ChoiceAxiom::AC, qa);
  rep.completed_holds = comp.verdict == doctrine::AxiomReport::Holds;
  rep.agree = rep.base_holds == rep.completed_holds;
  rep.detail = std::string("AC on A=") + (rep.base_holds ? "yes" : "no") +
               " AC on (A,delta)=" + (rep.completed_holds ? "yes" : "no");
  return rep;
}

EmbeddingReport check_base_embedding(const QuotDoctrine& qp) {
  EmbeddingReport rep;
  const Doctrine& p = *qp.base;
  const FinCategory& c = *p.base;
  // without comprehensive diagonals distinct arrows can be internally
  // equal and the embedding genuinely collapses them
  if (!doctrine::check_comprehensive_diagonals(p, qp.base_delta).comprehensive) {
    rep.applicable = false;
    return rep;
  }
  for (Obj a = 0; a < c.num_objects(); ++a) {
    if (!qp.base_delta.has(a)) continue;
    int qa = qp.object_index(a, qp.base_delta.delta[a]);
    if (qa < 0) {
      rep.ok = false;
      rep.failure = "(A, delta) not an object for " + c.obj_id(a);
      return rep;
    }
    if (int(qp.fiber_elem[qa].size()) != p.fiber(a).size()) {
      rep.ok = false;
      rep.failure = "descent over delta is a proper subfiber at " + c.obj_id(a);
      return rep;
    }
    for (Obj b = 0; b < c.num_objects(); ++b) {
      if (!qp.base_delta.has(b)) continue;
      int qb = qp.object_index(b, qp.base_delta.delta[b]);
      long classes = 0;
      for (Arr q : qp.q.base->hom(qa, qb)) {
        classes += 1;
        if (qp.arrow_class[q].size() != 1) {
          rep.ok = false;
          rep.failure = "arrows collapse between delta objects at " + c.obj_id(a) + ">" +
                        c.obj_id(b);
          return rep;
        }
      }
      if (classes != long(c.hom(a, b).size())) {
        rep.ok = false;
        rep.failure = "hom sets differ at " + c.obj_id(a) + ">" + c.obj_id(b);
        return rep;
      }
    }
  }
  return rep;
}

IdempotenceReport check_idempotence(const QuotDoctrine& qp) {
  IdempotenceReport rep;
  auto q2r = complete(std::make_shared<const Doctrine>(qp.q), qp.q_delta);
  if (!q2r.ok()) return rep;
  rep.completed_again = true;
  const auto& qq = q2r.value();
  const FinCategory& qqc = *qq.q.base;
  auto embedded = [&](int e) {
    int carrier = qq.objects[e].carrier;  // a q-object index
    return qq.base_delta.has(carrier) && qq.objects[e].rho == qq.base_delta.delta[carrier];
  };
  for (int o = 0; o < int(qq.objects.size()); ++o) {
    bool iso = false;
    for (int e = 0; e < int(qq.objects.size()) && !iso; ++e) {
      if (!embedded(e)) continue;
      for (Arr u : qqc.hom(o, e)) {
        for (Arr v : qqc.hom(e, o))
          if (qqc.compose(v, u) == qqc.identity(o) && qqc.compose(u, v) == qqc.identity(e)) {
            iso = true;
            break;
          }
        if (iso) break;
      }
    }
    if (!iso) ++rep.extra_objects;
  }
  return rep;
}

}  // namespace eqc::completion
