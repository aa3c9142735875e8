#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "eqc/pca.hpp"

using namespace eqc::pca;

TEST_CASE("cantor pairing round-trips") {
  for (long n = 0; n < 40; ++n)
    for (long m = 0; m < 40; ++m) {
      Nat k = pair_encode(n, m);
      CHECK(pair_fst(k) == n);
      CHECK(pair_snd(k) == m);
    }
  for (long k = 0; k < 2000; ++k)
    CHECK(pair_encode(pair_fst(k), pair_snd(k)) == k);
}

TEST_CASE("decode is a left inverse of encode") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> kind(0, 5);
  // random closed-ish terms, depth-bounded
  std::function<TermPtr(int, int)> gen = [&](int depth, int scope) -> TermPtr {
    if (depth == 0) {
      switch (kind(rng) % 3) {
        case 0: return t_zero();
        case 1: return t_num(rng() % 100);
        default: return scope > 0 ? t_var(rng() % scope) : t_num(3);
      }
    }
    switch (kind(rng)) {
      case 0: return t_lam(gen(depth - 1, scope + 1));
      case 1: return t_app(gen(depth - 1, scope), gen(depth - 1, scope));
      case 2: return t_succ(gen(depth - 1, scope));
      case 3: return t_case(gen(depth - 1, scope), gen(depth - 1, scope), gen(depth - 1, scope + 1));
      case 4: return t_mkpair(gen(depth - 1, scope), gen(depth - 1, scope));
      default: return t_fix(gen(depth - 1, scope));
    }
  };
  for (int i = 0; i < 200; ++i) {
    TermPtr t = gen(4, 0);
    CHECK(show(decode(encode(t))) == show(t));
  }
}

TEST_CASE("identity, successor and divergence behave as computed by the machine") {
  auto id5 = apply_code(id_code(), 5, 100);
  REQUIRE(id5.kind == RunResult::Halted);
  CHECK(id5.value == 5);
  CHECK(id5.steps <= 3);

  auto s3 = apply_code(succ_code(), 3, 100);
  REQUIRE(s3.kind == RunResult::Halted);
  CHECK(s3.value == 4);

  Nat fix_id = encode(t_fix(t_lam(t_var(0))));
  auto dvg = apply_code(fix_id, 0, 500);
  CHECK(dvg.kind == RunResult::OutOfFuel);
  CHECK(dvg.steps == 500);
}

TEST_CASE("stuck states never halt") {
  // code 0 decodes to Var 0: an unbound variable in function position
  auto r = apply_code(0, 5, 100);
  CHECK(r.kind == RunResult::Stuck);
  for (long y = 0; y < 200; ++y) CHECK(kleene_T(0, 5, y) == 0);
}

TEST_CASE("kleene_T accepts exactly the halting trace") {
  auto res = apply_code(id_code(), 5, 100);
  REQUIRE(res.kind == RunResult::Halted);
  Nat y = trace_code(res.steps, res.value);
  CHECK(kleene_T(id_code(), 5, y) == 1);
  CHECK(kleene_U(y) == 5);

  // 0 decodes to <0,0>: id is not already halted at step 0
  CHECK(kleene_T(id_code(), 5, 0) == 0);

  // a diverging program admits no trace at all
  Nat fix_id = encode(t_fix(t_lam(t_var(0))));
  for (long yy = 0; yy < 100; ++yy) CHECK(kleene_T(fix_id, 0, yy) == 0);

  // uniqueness: no other small trace is accepted
  for (long yy = 0; yy < 2000; ++yy)
    if (Nat(yy) != y) CHECK(kleene_T(id_code(), 5, yy) == 0);
}

TEST_CASE("kleene_U projects the result field") {
  CHECK(kleene_U(pair_encode(3, 7)) == 7);
  CHECK(kleene_U(0) == 0);
}

TEST_CASE("code combinators compute the right partial functions") {
  Nat ss = compose_codes(succ_code(), succ_code());
  auto r = apply_code(ss, 0, 1000);
  REQUIRE(r.kind == RunResult::Halted);
  CHECK(r.value == 2);

  auto e1 = apply_code(eval_code(), pair_encode(id_code(), 9), 1000);
  REQUIRE(e1.kind == RunResult::Halted);
  CHECK(e1.value == 9);
  auto e2 = apply_code(eval_code(), pair_encode(succ_code(), 0), 1000);
  REQUIRE(e2.kind == RunResult::Halted);
  CHECK(e2.value == 1);

  Nat pc = pair_codes(succ_code(), id_code());
  auto p = apply_code(pc, pair_encode(4, 9), 1000);
  REQUIRE(p.kind == RunResult::Halted);
  CHECK(pair_fst(p.value) == 5);
  CHECK(pair_snd(p.value) == 9);
}

TEST_CASE("curry specializes the first pair component") {
  // e projects the first component of its paired input
  Nat e = encode(t_lam(t_fst(t_var(0))));
  auto c = apply_code(curry_code(e), 3, 2000);
  REQUIRE(c.kind == RunResult::Halted);
  auto r = apply_code(c.value, 5, 2000);
  REQUIRE(r.kind == RunResult::Halted);
  CHECK(r.value == 3);

  // and through the universal program: phi_{curry e x}(y) = phi_e(<x,y>)
  Nat add2 = encode(t_lam(t_app(t_app(add_term(), t_fst(t_var(0))), t_snd(t_var(0)))));
  auto cc = apply_code(curry_code(add2), 4, 4000);
  REQUIRE(cc.kind == RunResult::Halted);
  auto rr = apply_code(cc.value, 9, 4000);
  REQUIRE(rr.kind == RunResult::Halted);
  CHECK(rr.value == 13);
}

TEST_CASE("table programs tabulate small functions") {
  TermPtr t = table_term({{Nat(0), Nat(4)}, {Nat(2), Nat(7)}});
  CHECK(run(t_app(t, t_num(0)), 100).value == 4);
  CHECK(run(t_app(t, t_num(1)), 100).value == 0);
  CHECK(run(t_app(t, t_num(2)), 100).value == 7);

  TermPtr tp = table_term_paired({{{Nat(1), Nat(2)}, Nat(9)}, {{Nat(0), Nat(0)}, Nat(5)}});
  CHECK(run(t_app(tp, t_num(pair_encode(1, 2))), 1000).value == 9);
  CHECK(run(t_app(tp, t_num(pair_encode(0, 0))), 1000).value == 5);
}

TEST_CASE("arithmetic programs") {
  auto r = run(t_app(t_app(add_term(), t_num(2)), t_num(3)), 1000);
  REQUIRE(r.kind == RunResult::Halted);
  CHECK(r.value == 5);
  auto m = run(t_app(t_app(mul_term(), t_num(3)), t_num(4)), 5000);
  REQUIRE(m.kind == RunResult::Halted);
  CHECK(m.value == 12);
}

TEST_CASE("normal form: halting runs match unique traces on a random corpus") {
  std::mt19937 rng(20240917);
  int halted = 0;
  for (int i = 0; i < 300; ++i) {
    Nat e = rng() % 100000;
    Nat x = rng() % 10;
    auto res = apply_code(e, x, 400);
    if (res.kind == RunResult::Halted) {
      ++halted;
      Nat y = trace_code(res.steps, res.value);
      CHECK(kleene_T(e, x, y) == 1);
      CHECK(kleene_U(y) == res.value);
      // perturbed traces are rejected
      CHECK(kleene_T(e, x, trace_code(res.steps + 1, res.value)) == 0);
      CHECK(kleene_T(e, x, trace_code(res.steps, res.value + 1)) == 0);
    } else {
      for (long yy = 0; yy < 50; ++yy) CHECK(kleene_T(e, x, yy) == 0);
    }
  }
  CHECK(halted > 10);  // the corpus genuinely exercises halting runs
}
