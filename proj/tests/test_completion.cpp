#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "eqc/completion.hpp"
#include "eqc/corpus.hpp"

using namespace eqc;
using namespace eqc::completion;
using namespace eqc::corpus;
using doctrine::Doctrine;
using doctrine::ElementaryStructure;
using fincat::Arr;
using fincat::Obj;

namespace {

ElementaryStructure delta_of(const Doctrine& d) {
  auto r = doctrine::find_elementary(d);
  REQUIRE(r.ok());
  return r.value();
}

QuotDoctrine completed(const Doctrine& d) {
  auto q = complete(std::make_shared<const Doctrine>(d), delta_of(d));
  if (!q.ok()) FAIL(q.error().describe());
  return q.value();
}

// independent oracle: count equivalence relations on an n-element set
// by brute force over all subsets of the square
long bell_oracle(int n) {
  long count = 0;
  for (long m = 0; m < (1L << (n * n)); ++m) {
    auto rel = [&](int x, int y) { return (m >> (x * n + y)) & 1; };
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = rel(x, x);
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y)
        if (rel(x, y) && !rel(y, x)) ok = false;
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y)
        for (int z = 0; z < n && ok; ++z)
          if (rel(x, y) && rel(y, z) && !rel(x, z)) ok = false;
    if (ok) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("bell oracle sanity") {
  CHECK(bell_oracle(1) == 1);
  CHECK(bell_oracle(2) == 2);
  CHECK(bell_oracle(3) == 5);
}

TEST_CASE("completion of Sub over the finset fragment") {
  auto qp = completed(sub_finset().d);
  const auto& c = *sub_finset().d.base;
  std::map<std::string, int> per_carrier;
  for (auto& o : qp.objects) per_carrier[c.obj_id(o.carrier)]++;
  CHECK(per_carrier["N0"] == 1);
  CHECK(per_carrier["N1"] == 1);
  CHECK(per_carrier["N2"] == 2);
  CHECK(per_carrier.size() == 3);  // larger carriers have no square in the fragment

  CHECK(!doctrine::check_doctrine(qp.q));
  auto dr = check_completed_delta(qp);
  CHECK(dr.ok);
  CHECK(dr.objects_checked >= 2);

  auto er = check_effective_quotients(qp);
  CHECK(er.ok);
  CHECK(er.quotients_checked > 0);
  CHECK(er.universal_pairs > 0);

  auto em = check_base_embedding(qp);
  CHECK(em.ok);

  auto idem = check_idempotence(qp);
  CHECK(idem.completed_again);
  CHECK(idem.extra_objects == 0);
}

TEST_CASE("the full quotient of the 2-set collapses to a point") {
  auto qp = completed(sub_finset().d);
  const auto& c = *sub_finset().d.base;
  Obj n2 = c.obj_index("N2");
  Obj sq = sub_finset().d.products.at(n2, n2).prod;
  int full = qp.object_index(n2, sub_finset().d.top(sq));
  REQUIRE(full >= 0);
  // concrete quotient carrier is a single class
  CHECK(qp.q.base->carrier(full) == 1);
  // and the object is isomorphic to (1, delta)
  int one = qp.object_index(c.obj_index("N1"), qp.base_delta.delta[c.obj_index("N1")]);
  REQUIRE(one >= 0);
  bool iso = false;
  for (Arr u : qp.q.base->hom(full, one))
    for (Arr v : qp.q.base->hom(one, full))
      if (qp.q.base->compose(v, u) == qp.q.base->identity(full) &&
          qp.q.base->compose(u, v) == qp.q.base->identity(one))
        iso = true;
  CHECK(iso);
}

TEST_CASE("quotient object counts match the Bell oracle on the generated fragment") {
  auto qp = completed(bell_powerset());
  const auto& c = *bell_powerset().base;
  std::map<std::string, long> per_carrier;
  for (auto& o : qp.objects) per_carrier[c.obj_id(o.carrier)]++;
  CHECK(per_carrier["N1"] == bell_oracle(1));
  CHECK(per_carrier["N2"] == bell_oracle(2));
  CHECK(per_carrier["N3"] == bell_oracle(3));
}

TEST_CASE("completion of the kernel doctrine checks its equality predicate in depth") {
  auto qp = completed(kernel_doctrine());
  auto dr = check_completed_delta(qp);
  CHECK(dr.ok);
  // carrier-a objects have genuine squares (a^2)^2 = a^4 in the base
  CHECK(dr.objects_checked >= 3);

  auto er = check_effective_quotients(qp);
  CHECK(er.ok);
  CHECK(er.quotients_checked > 0);
  CHECK(er.stability_checked > 0);  // pullbacks constructible via comprehension

  CHECK(check_base_embedding(qp).ok);
}

TEST_CASE("RC transfers to RUC across the completion") {
  // finite sets satisfy choice: both sides hold
  {
    auto rep = check_ruc_transfer(std::make_shared<const Doctrine>(sub_finset().d),
                                  delta_of(sub_finset().d));
    CHECK(rep.base_holds);
    CHECK(rep.completed_holds);
    CHECK(rep.agree);
  }
  // the shift relation denies choice: both sides fail, with the witness
  // transported into the completion
  {
    const auto& aff = affine_doctrine();
    CHECK(!doctrine::check_doctrine(aff));
    auto rc = doctrine::check_rule(aff, delta_of(aff), doctrine::ChoiceRule::RC);
    CHECK(!rc.holds);
    auto rep = check_ruc_transfer(std::make_shared<const Doctrine>(aff), delta_of(aff));
    CHECK(!rep.base_holds);
    CHECK(!rep.completed_holds);
    CHECK(rep.agree);
  }
}

TEST_CASE("AC transfers to AUC across the completion") {
  auto rep = check_auc_transfer(std::make_shared<const Doctrine>(sub_finset().d),
                                delta_of(sub_finset().d), true);
  CHECK(rep.base_holds);
  CHECK(rep.completed_holds);
  CHECK(rep.agree);

  auto rep2 = check_auc_transfer(std::make_shared<const Doctrine>(kernel_doctrine()),
                                 delta_of(kernel_doctrine()), false);
  CHECK(rep2.agree);
}

TEST_CASE("AC on an object transfers to its delta object") {
  const auto& c = *sub_finset().d.base;
  for (auto name : {"N1", "N2"}) {
    auto rep = check_ac_on_object_transfer(std::make_shared<const Doctrine>(sub_finset().d),
                                           delta_of(sub_finset().d), c.obj_index(name));
    CHECK(rep.base_holds);
    CHECK(rep.agree);
  }
}

TEST_CASE("a doctrine whose only relations are equalities embeds trivially") {
  static auto frag = fincat::finset_category({1, 2, 4}, 4).value();
  auto d = doctrine::constant_doctrine(frag.cat, frag.products);
  auto qp = completed(d);
  // one-element fibers: the only equivalence relation anywhere is top
  long with_square = 0;
  for (Obj a = 0; a < frag.cat->num_objects(); ++a)
    if (frag.products.has(a, a)) ++with_square;
  CHECK(long(qp.objects.size()) == with_square);
  // delta = top over parallel distinct arrows: diagonals are not
  // comprehensive, so the strict embedding claim does not apply
  CHECK(!check_base_embedding(qp).applicable);
}
