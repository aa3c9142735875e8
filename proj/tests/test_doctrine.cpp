#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqc/corpus.hpp"
#include "eqc/doctrine.hpp"

using namespace eqc;
using namespace eqc::doctrine;
using namespace eqc::corpus;
using fincat::Arr;
using fincat::Obj;

namespace {

ElementaryStructure delta_of(const Doctrine& d) {
  auto r = find_elementary(d);
  REQUIRE(r.ok());
  return r.value();
}

}  // namespace

TEST_CASE("constant doctrine validates and has delta = top") {
  const Doctrine& d = constant_small();
  CHECK(!check_doctrine(d));
  auto es = delta_of(d);
  for (Obj a = 0; a < d.base->num_objects(); ++a)
    if (es.has(a)) CHECK(es.delta[a] == d.top(a));
}

TEST_CASE("subobject doctrine over the finset fragment validates") {
  const auto& s = sub_finset();
  CHECK(!check_doctrine(s.d));
  CHECK(s.d.conc.has_value());  // image-subset semantics attached

  const auto& c = *s.d.base;
  Obj n1 = c.obj_index("N1"), n2 = c.obj_index("N2"), n4 = c.obj_index("N4");
  CHECK(s.d.fiber(n1).size() == 2);
  CHECK(s.d.fiber(n2).size() == 4);   // powerset of a 2-set
  CHECK(s.d.fiber(n4).size() == 16);  // enumerated subsets
}

TEST_CASE("broken reindex is rejected as not meet-preserving") {
  auto d = broken_meet_fixture();
  auto err = check_doctrine(d);
  REQUIRE(err.has_value());
  CHECK(err->kind == DoctrineError::NotMeetPreserving);
}

TEST_CASE("find_elementary returns the diagonal in subobject fibers") {
  const auto& s = sub_finset();
  auto es = delta_of(s.d);
  const auto& c = *s.d.base;
  Obj n2 = c.obj_index("N2");
  REQUIRE(es.has(n2));
  // oracle: the diagonal subset of the chosen 2x2 carrier
  const auto& pr = s.d.products.at(n2, n2);
  Bits diag(c.carrier(pr.prod));
  for (int w = 0; w < c.carrier(pr.prod); ++w)
    if (c.table(pr.pr1)[w] == c.table(pr.pr2)[w]) diag.set(w);
  CHECK(s.d.conc->masks[pr.prod][es.delta[n2]] == diag);
}

TEST_CASE("powerset doctrine delta is found and unique") {
  const Doctrine& d = bell_powerset();
  auto es = delta_of(d);
  const auto& c = *d.base;
  Obj n3 = c.obj_index("N3");
  REQUIRE(es.has(n3));
  Obj sq = d.products.at(n3, n3).prod;
  // exhaustive: no other candidate satisfies the adjunction
  for (int cand = 0; cand < d.fiber(sq).size(); ++cand)
    CHECK(elementary_adjunction_holds(d, n3, cand) == (cand == es.delta[n3]));
}

TEST_CASE("kernel doctrine validates with pattern fibers") {
  const Doctrine& d = kernel_doctrine();
  CHECK(!check_doctrine(d));
  CHECK(d.fiber(0).size() == 1);   // patterns on no coordinates
  CHECK(d.fiber(1).size() == 1);
  CHECK(d.fiber(2).size() == 2);   // equal-or-not
  CHECK(d.fiber(3).size() == 5);   // Bell(3) patterns
  CHECK(d.fiber(4).size() == 15);  // Bell(4) patterns
  auto es = delta_of(d);
  CHECK(es.has(1));
  CHECK(es.has(2));
}

TEST_CASE("variation doctrine over finset matches subobjects") {
  // surjection invariance: every variation class has the image mono as
  // a representative, so the fibers agree with Sub
  const auto& w = wsb_finset();
  const auto& s = sub_finset();
  CHECK(!check_doctrine(w.d));
  for (Obj o = 0; o < w.d.base->num_objects(); ++o) {
    CHECK(w.d.fiber(o).size() == s.d.fiber(o).size());
    REQUIRE(w.d.conc.has_value());
    // same image masks, possibly in a different order
    for (int e = 0; e < w.d.fiber(o).size(); ++e) {
      bool found = false;
      for (int e2 = 0; e2 < s.d.fiber(o).size(); ++e2)
        if (w.d.conc->masks[o][e] == s.d.conc->masks[o][e2]) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("comprehensive diagonals hold in Sub and fail with delta = top") {
  auto es = delta_of(sub_finset().d);
  CHECK(check_comprehensive_diagonals(sub_finset().d, es).comprehensive);

  auto t = trivial_delta_fixture();
  auto es2 = delta_of(t);
  auto rep = check_comprehensive_diagonals(t, es2);
  CHECK(!rep.comprehensive);
  CHECK(rep.f != rep.g);  // a genuine distinct parallel pair
}

TEST_CASE("quantifiers over Sub: exists is the image, forall the dual image") {
  const auto& s = sub_finset();
  auto q = check_quantifiers(s.d);
  REQUIRE(q.ok());
  const auto& c = *s.d.base;
  Obj n2 = c.obj_index("N2");
  const auto& pr = s.d.products.at(n2, n2);
  const auto& ex = q.value().exists_pr.at(pr.pr1);
  const auto& fa = q.value().forall_pr.at(pr.pr1);
  // oracle: direct image / dual image computed from masks
  for (int r = 0; r < s.d.fiber(pr.prod).size(); ++r) {
    Bits img(c.carrier(n2)), dual(c.carrier(n2));
    for (int x = 0; x < c.carrier(n2); ++x) {
      bool any = false, all = true;
      for (int w = 0; w < c.carrier(pr.prod); ++w) {
        if (c.table(pr.pr1)[w] != x) continue;
        if (s.d.conc->masks[pr.prod][r].test(w)) any = true;
        else all = false;
      }
      if (any) img.set(x);
      if (all) dual.set(x);
    }
    CHECK(s.d.conc->masks[n2][ex.graph[r]] == img);
    CHECK(s.d.conc->masks[n2][fa.graph[r]] == dual);
  }
}

TEST_CASE("Beck-Chevalley fails on the constructed fixture") {
  auto d = bc_failure_fixture();
  CHECK(!check_doctrine(d));
  auto q = check_quantifiers(d);
  REQUIRE(!q.ok());
  CHECK(q.error().kind == QuantifierError::BeckChevalleyFails);
  CHECK(d.base->arr_id(q.error().f) == "f");
}

TEST_CASE("equivalence relation laws") {
  const auto& s = sub_finset();
  auto es = delta_of(s.d);
  const auto& c = *s.d.base;
  Obj n2 = c.obj_index("N2");
  Obj sq = s.d.products.at(n2, n2).prod;

  CHECK(check_equivalence_relation(s.d, es, n2, es.delta[n2]).ok());
  CHECK(check_equivalence_relation(s.d, es, n2, s.d.top(sq)).ok());

  // a single off-diagonal pair fails reflexivity
  Bits single(c.carrier(sq));
  int w01 = -1;
  for (int w = 0; w < c.carrier(sq); ++w)
    if (c.table(s.d.products.at(n2, n2).pr1)[w] == 0 &&
        c.table(s.d.products.at(n2, n2).pr2)[w] == 1)
      w01 = w;
  single.set(w01);
  int elem = -1;
  for (int e = 0; e < s.d.fiber(sq).size(); ++e)
    if (s.d.conc->masks[sq][e] == single) elem = e;
  REQUIRE(elem >= 0);
  auto rep = check_equivalence_relation(s.d, es, n2, elem);
  CHECK(rep.failed == EquivalenceReport::Reflexivity);

  // the abstract span route agrees with the pointwise route
  Doctrine abstract = s.d;
  abstract.conc.reset();
  for (int e = 0; e < s.d.fiber(sq).size(); ++e)
    CHECK(check_equivalence_relation(abstract, es, n2, e).ok() ==
          check_equivalence_relation(s.d, es, n2, e).ok());
}

TEST_CASE("choice rules hold in Sub over finite sets") {
  const auto& s = sub_finset();
  auto es = delta_of(s.d);
  auto rc = check_rule(s.d, es, ChoiceRule::RC);
  CHECK(rc.holds);
  CHECK(rc.relations_checked > 0);
  auto ruc = check_rule(s.d, es, ChoiceRule::RUC);
  CHECK(ruc.holds);
  CHECK(ruc.relations_checked > 0);
}

TEST_CASE("choice rules fail without the swap map") {
  auto d = sparse_choice_fixture();
  CHECK(!check_doctrine(d));
  auto es = delta_of(d);
  auto ruc = check_rule(d, es, ChoiceRule::RUC);
  REQUIRE(!ruc.holds);
  // replay: the witness is entire and functional yet matches no graph
  const auto& c = *d.base;
  const auto& pr = d.products.at(ruc.a, ruc.b);
  const Bits& m = d.conc->masks[pr.prod][ruc.relation];
  for (int x = 0; x < c.carrier(ruc.a); ++x) {
    int count = 0;
    for (int w = 0; w < c.carrier(pr.prod); ++w)
      if (c.table(pr.pr1)[w] == x && m.test(w)) ++count;
    CHECK(count == 1);
  }
  for (Arr f : c.hom(ruc.a, ruc.b)) {
    bool matches = true;
    for (int x = 0; x < c.carrier(ruc.a); ++x)
      for (int w = 0; w < c.carrier(pr.prod); ++w)
        if (c.table(pr.pr1)[w] == x && c.table(pr.pr2)[w] == c.table(f)[x] && !m.test(w))
          matches = false;
    CHECK(!matches);
  }

  auto rc = check_rule(d, es, ChoiceRule::RC);
  CHECK(!rc.holds);
}

TEST_CASE("axiom of choice on finite sets, and its trivial terminal case") {
  const auto& s = sub_finset();
  auto es = delta_of(s.d);
  const auto& c = *s.d.base;
  Obj n2 = c.obj_index("N2");
  auto rep = check_axiom(s.d, es, ChoiceAxiom::AC, n2);
  CHECK(rep.verdict == AxiomReport::Holds);
  CHECK(rep.pairs_checked > 0);
  CHECK(!rep.skipped_b.empty());  // exponentials above the cap are honest gaps

  Obj n1 = c.obj_index("N1");
  auto rep1 = check_axiom(s.d, es, ChoiceAxiom::AC, n1);
  CHECK(rep1.verdict == AxiomReport::Holds);

  auto auc = check_axiom(s.d, es, ChoiceAxiom::AUC, n2);
  CHECK(auc.verdict == AxiomReport::Holds);

  // the tuple category has no weak exponential of the generator with
  // itself, so demanding that target reports the missing structure
  CHECK(!find_weak_evaluation(kernel_doctrine(), 1, 1).has_value());
  auto none = check_axiom(kernel_doctrine(), delta_of(kernel_doctrine()), ChoiceAxiom::AC, 1,
                          {}, 1);
  CHECK(none.verdict == AxiomReport::MissingExponential);
}

TEST_CASE("skolem arrows: a graph is skolemized by its function") {
  const auto& s = sub_finset();
  const auto& c = *s.d.base;
  auto es = delta_of(s.d);
  Obj n2 = c.obj_index("N2");
  const auto& pr = s.d.products.at(n2, n2);
  // alpha = graph of the swap function g
  Arr g = c.arrow_by_table(n2, n2, {1, 0});
  Bits graph(c.carrier(pr.prod));
  for (int w = 0; w < c.carrier(pr.prod); ++w)
    if (c.table(g)[c.table(pr.pr1)[w]] == c.table(pr.pr2)[w]) graph.set(w);
  int alpha = -1;
  for (int e = 0; e < s.d.fiber(pr.prod).size(); ++e)
    if (s.d.conc->masks[pr.prod][e] == graph) alpha = e;
  REQUIRE(alpha >= 0);
  CHECK(check_skolem(s.d, n2, n2, alpha, g));
  // a wrong epsilon misses a witness row
  Arr wrong = c.arrow_by_table(n2, n2, {0, 0});
  CHECK(!check_skolem(s.d, n2, n2, alpha, wrong));
  // delta is skolemized by the identity
  CHECK(check_skolem(s.d, n2, n2, es.delta[n2], c.identity(n2)));
}

TEST_CASE("comprehension adjunction: Sub over finset collapses to Wsb") {
  const auto& s = sub_finset();
  auto es = delta_of(s.d);
  auto rep = comprehension_adjunction(s.d, es, finset_small().pullbacks);
  REQUIRE(rep.ok);
  CHECK(rep.is_equality);  // finite sets: Sub and Wsb coincide
  CHECK(rep.frobenius);
  CHECK(rep.forall_commutes);
  CHECK(rep.impl_commutes);
}

TEST_CASE("comprehension adjunction: Wsb against itself is the identity pair") {
  const auto& w = wsb_finset();
  auto es = delta_of(w.d);
  auto rep = comprehension_adjunction(w.d, es, finset_small().pullbacks);
  REQUIRE(rep.ok);
  CHECK(rep.is_equality);
  for (Obj o = 0; o < w.d.base->num_objects(); ++o)
    for (int e = 0; e < w.d.fiber(o).size(); ++e)
      CHECK(rep.to_wsb[o].graph[rep.from_wsb[o].graph[e]] == e);
}

TEST_CASE("double negation check passes on Boolean fibers") {
  const auto& s = sub_finset();
  auto es = delta_of(s.d);
  auto rep = double_negation_check(s.d, es, finset_small().pullbacks);
  CHECK(rep.verdict == DoubleNegationReport::Matches);
}

TEST_CASE("comprehensions in Sub are strong and full") {
  const auto& s = sub_finset();
  const auto& c = *s.d.base;
  Obj n2 = c.obj_index("N2");
  for (int al = 0; al < s.d.fiber(n2).size(); ++al) {
    auto rep = check_comprehension(s.d, n2, al);
    REQUIRE(rep.weak.has_value());
    CHECK(rep.strong);
    CHECK(rep.full);
  }
}
