#include "eqc/pca.hpp"

#include <cassert>
#include <functional>

namespace eqc::pca {

Nat pair_encode(const Nat& n, const Nat& m) {
  Nat s = n + m;
  return s * (s + 1) / 2 + m;
}

namespace {
// s = n+m is the largest s with s(s+1)/2 <= k.
Nat pair_diag(const Nat& k) {
  Nat s = (sqrt(8 * k + 1) - 1) / 2;
  while (s * (s + 1) / 2 > k) --s;
  while ((s + 1) * (s + 2) / 2 <= k) ++s;
  return s;
}
}  // namespace

Nat pair_fst(const Nat& k) {
  Nat s = pair_diag(k);
  Nat m = k - s * (s + 1) / 2;
  return s - m;
}

Nat pair_snd(const Nat& k) {
  Nat s = pair_diag(k);
  return k - s * (s + 1) / 2;
}

namespace {
TermPtr mk(Term t) { return std::make_shared<const Term>(std::move(t)); }
}  // namespace

TermPtr t_var(long i) { return mk({Term::Var, i}); }
TermPtr t_lam(TermPtr body) { return mk({Term::Lam, 0, 0, std::move(body)}); }
TermPtr t_zero() { return mk({Term::Zero}); }
TermPtr t_succ(TermPtr t) { return mk({Term::Succ, 0, 0, std::move(t)}); }
TermPtr t_app(TermPtr f, TermPtr x) { return mk({Term::App, 0, 0, std::move(f), std::move(x)}); }
TermPtr t_case(TermPtr s, TermPtr z, TermPtr sb) {
  return mk({Term::Case, 0, 0, std::move(s), std::move(z), std::move(sb)});
}
TermPtr t_fix(TermPtr t) { return mk({Term::Fix, 0, 0, std::move(t)}); }
TermPtr t_num(const Nat& n) { return mk({Term::Num, 0, n}); }
TermPtr t_mkpair(TermPtr x, TermPtr y) {
  return mk({Term::MkPair, 0, 0, std::move(x), std::move(y)});
}
TermPtr t_fst(TermPtr t) { return mk({Term::PFst, 0, 0, std::move(t)}); }
TermPtr t_snd(TermPtr t) { return mk({Term::PSnd, 0, 0, std::move(t)}); }
TermPtr t_run(TermPtr c, TermPtr a) { return mk({Term::Run, 0, 0, std::move(c), std::move(a)}); }

Nat encode(const TermPtr& t) {
  switch (t->kind) {
    case Term::Var: return pair_encode(0, t->var);
    case Term::Lam: return pair_encode(1, encode(t->a));
    case Term::Zero: return pair_encode(2, 0);
    case Term::Succ: return pair_encode(3, encode(t->a));
    case Term::App: return pair_encode(4, pair_encode(encode(t->a), encode(t->b)));
    case Term::Case:
      return pair_encode(5, pair_encode(encode(t->a), pair_encode(encode(t->b), encode(t->c))));
    case Term::Fix: return pair_encode(6, encode(t->a));
    case Term::Num: return pair_encode(7, t->num);
    case Term::MkPair: return pair_encode(8, pair_encode(encode(t->a), encode(t->b)));
    case Term::PFst: return pair_encode(9, encode(t->a));
    case Term::PSnd: return pair_encode(10, encode(t->a));
    case Term::Run: return pair_encode(11, pair_encode(encode(t->a), encode(t->b)));
  }
  assert(false);
  return 0;
}

TermPtr decode(const Nat& code) {
  Nat tag_raw = pair_fst(code);
  Nat payload = pair_snd(code);
  long tag = mpz_class(tag_raw % 12).get_si();
  switch (tag) {
    case 0: return t_var(payload.fits_slong_p() ? payload.get_si() : -1);
    case 1: return t_lam(decode(payload));
    case 2: return t_zero();
    case 3: return t_succ(decode(payload));
    case 4: return t_app(decode(pair_fst(payload)), decode(pair_snd(payload)));
    case 5: {
      Nat rest = pair_snd(payload);
      return t_case(decode(pair_fst(payload)), decode(pair_fst(rest)), decode(pair_snd(rest)));
    }
    case 6: return t_fix(decode(payload));
    case 7: return t_num(payload);
    case 8: return t_mkpair(decode(pair_fst(payload)), decode(pair_snd(payload)));
    case 9: return t_fst(decode(payload));
    case 10: return t_snd(decode(payload));
    case 11: return t_run(decode(pair_fst(payload)), decode(pair_snd(payload)));
  }
  assert(false);
  return t_zero();
}

std::string show(const TermPtr& t) {
  switch (t->kind) {
    case Term::Var: return "v" + std::to_string(t->var);
    case Term::Lam: return "\\." + show(t->a);
    case Term::Zero: return "0";
    case Term::Succ: return "S(" + show(t->a) + ")";
    case Term::App: return "(" + show(t->a) + " " + show(t->b) + ")";
    case Term::Case:
      return "case(" + show(t->a) + "; " + show(t->b) + "; " + show(t->c) + ")";
    case Term::Fix: return "fix(" + show(t->a) + ")";
    case Term::Num: return t->num.get_str();
    case Term::MkPair: return "<" + show(t->a) + "," + show(t->b) + ">";
    case Term::PFst: return "fst(" + show(t->a) + ")";
    case Term::PSnd: return "snd(" + show(t->a) + ")";
    case Term::Run: return "run(" + show(t->a) + "," + show(t->b) + ")";
  }
  return "?";
}

bool is_value(const TermPtr& t) {
  switch (t->kind) {
    case Term::Num:
    case Term::Zero:
    case Term::Lam: return true;
    case Term::Fix: return t->a->kind == Term::Lam;
    default: return false;
  }
}

std::optional<Nat> numeral(const TermPtr& t) {
  if (t->kind == Term::Num) return t->num;
  if (t->kind == Term::Zero) return Nat(0);
  return std::nullopt;
}

namespace {

TermPtr shift(const TermPtr& t, long d, long cutoff) {
  switch (t->kind) {
    case Term::Var: return t->var >= cutoff ? t_var(t->var + d) : t;
    case Term::Lam: return t_lam(shift(t->a, d, cutoff + 1));
    case Term::Zero:
    case Term::Num: return t;
    case Term::Succ: return t_succ(shift(t->a, d, cutoff));
    case Term::App: return t_app(shift(t->a, d, cutoff), shift(t->b, d, cutoff));
    case Term::Case:
      return t_case(shift(t->a, d, cutoff), shift(t->b, d, cutoff),
                    shift(t->c, d, cutoff + 1));
    case Term::Fix: return t_fix(shift(t->a, d, cutoff));
    case Term::MkPair: return t_mkpair(shift(t->a, d, cutoff), shift(t->b, d, cutoff));
    case Term::PFst: return t_fst(shift(t->a, d, cutoff));
    case Term::PSnd: return t_snd(shift(t->a, d, cutoff));
    case Term::Run: return t_run(shift(t->a, d, cutoff), shift(t->b, d, cutoff));
  }
  return t;
}

// Substitute s for index j in t, removing the binder (beta style).
TermPtr subst(const TermPtr& t, long j, const TermPtr& s) {
  switch (t->kind) {
    case Term::Var:
      if (t->var == j) return s;
      return t->var > j ? t_var(t->var - 1) : t;
    case Term::Lam: return t_lam(subst(t->a, j + 1, shift(s, 1, 0)));
    case Term::Zero:
    case Term::Num: return t;
    case Term::Succ: return t_succ(subst(t->a, j, s));
    case Term::App: return t_app(subst(t->a, j, s), subst(t->b, j, s));
    case Term::Case:
      return t_case(subst(t->a, j, s), subst(t->b, j, s),
                    subst(t->c, j + 1, shift(s, 1, 0)));
    case Term::Fix: return t_fix(subst(t->a, j, s));
    case Term::MkPair: return t_mkpair(subst(t->a, j, s), subst(t->b, j, s));
    case Term::PFst: return t_fst(subst(t->a, j, s));
    case Term::PSnd: return t_snd(subst(t->a, j, s));
    case Term::Run: return t_run(subst(t->a, j, s), subst(t->b, j, s));
  }
  return t;
}

StepOut next(TermPtr t) { return {StepOut::Next, std::move(t)}; }
StepOut stuck(TermPtr t) { return {StepOut::Stuck, std::move(t)}; }

}  // namespace

StepOut step(const TermPtr& t) {
  if (is_value(t)) return {StepOut::Value, t};
  switch (t->kind) {
    case Term::Var: return stuck(t);
    case Term::Succ: {
      if (!is_value(t->a)) {
        StepOut in = step(t->a);
        return in.tag == StepOut::Next ? next(t_succ(in.term)) : stuck(t);
      }
      if (auto n = numeral(t->a)) return next(t_num(*n + 1));
      return stuck(t);
    }
    case Term::App: {
      if (!is_value(t->a)) {
        StepOut in = step(t->a);
        return in.tag == StepOut::Next ? next(t_app(in.term, t->b)) : stuck(t);
      }
      if (!is_value(t->b)) {
        StepOut in = step(t->b);
        return in.tag == StepOut::Next ? next(t_app(t->a, in.term)) : stuck(t);
      }
      if (t->a->kind == Term::Lam) return next(subst(t->a->a, 0, t->b));
      if (t->a->kind == Term::Fix && t->a->a->kind == Term::Lam)
        return next(t_app(subst(t->a->a->a, 0, t->a), t->b));
      return stuck(t);
    }
    case Term::Case: {
      if (!is_value(t->a)) {
        StepOut in = step(t->a);
        return in.tag == StepOut::Next ? next(t_case(in.term, t->b, t->c)) : stuck(t);
      }
      if (auto n = numeral(t->a)) {
        if (*n == 0) return next(t->b);
        return next(subst(t->c, 0, t_num(*n - 1)));
      }
      return stuck(t);
    }
    case Term::Fix: {
      StepOut in = step(t->a);
      return in.tag == StepOut::Next ? next(t_fix(in.term)) : stuck(t);
    }
    case Term::MkPair: {
      if (!is_value(t->a)) {
        StepOut in = step(t->a);
        return in.tag == StepOut::Next ? next(t_mkpair(in.term, t->b)) : stuck(t);
      }
      if (!is_value(t->b)) {
        StepOut in = step(t->b);
        return in.tag == StepOut::Next ? next(t_mkpair(t->a, in.term)) : stuck(t);
      }
      auto x = numeral(t->a), y = numeral(t->b);
      if (x && y) return next(t_num(pair_encode(*x, *y)));
      return stuck(t);
    }
    case Term::PFst:
    case Term::PSnd: {
      if (!is_value(t->a)) {
        StepOut in = step(t->a);
        if (in.tag != StepOut::Next) return stuck(t);
        return next(t->kind == Term::PFst ? t_fst(in.term) : t_snd(in.term));
      }
      if (auto n = numeral(t->a))
        return next(t_num(t->kind == Term::PFst ? pair_fst(*n) : pair_snd(*n)));
      return stuck(t);
    }
    case Term::Run: {
      if (!is_value(t->a)) {
        StepOut in = step(t->a);
        return in.tag == StepOut::Next ? next(t_run(in.term, t->b)) : stuck(t);
      }
      if (!is_value(t->b)) {
        StepOut in = step(t->b);
        return in.tag == StepOut::Next ? next(t_run(t->a, in.term)) : stuck(t);
      }
      auto e = numeral(t->a), x = numeral(t->b);
      if (e && x) return next(t_app(decode(*e), t_num(*x)));
      return stuck(t);
    }
    default: return stuck(t);
  }
}

RunResult run(TermPtr s, long fuel) {
  long n = 0;
  while (true) {
    StepOut out = step(s);
    if (out.tag == StepOut::Value) {
      if (auto v = numeral(s)) return {RunResult::Halted, *v, n, s};
      return {RunResult::Stuck, 0, n, s};  // bare function result
    }
    if (out.tag == StepOut::Stuck) return {RunResult::Stuck, 0, n, s};
    if (n == fuel) return {RunResult::OutOfFuel, 0, n, s};
    s = out.term;
    ++n;
  }
}

RunResult apply_code(const Nat& e, const Nat& x, long fuel) {
  return run(t_app(decode(e), t_num(x)), fuel);
}

int kleene_T(const Nat& e, const Nat& x, const Nat& y, long step_cap) {
  Nat k = pair_fst(y);
  Nat r = pair_snd(y);
  long bound = (k.fits_slong_p() && k.get_si() < step_cap) ? k.get_si() : step_cap;
  RunResult res = run(t_app(decode(e), t_num(x)), bound);
  if (res.kind != RunResult::Halted) return 0;
  return (Nat(res.steps) == k && res.value == r) ? 1 : 0;
}

Nat kleene_U(const Nat& y) { return pair_snd(y); }

Nat trace_code(long steps, const Nat& result) { return pair_encode(steps, result); }

Nat id_code() { return encode(t_lam(t_var(0))); }
Nat succ_code() { return encode(t_lam(t_succ(t_var(0)))); }
Nat const_code(const Nat& n) { return encode(t_lam(t_num(n))); }

Nat compose_codes(const Nat& e1, const Nat& e2) {
  return encode(t_lam(t_run(t_num(e1), t_run(t_num(e2), t_var(0)))));
}

Nat pair_codes(const Nat& e1, const Nat& e2) {
  return encode(t_lam(t_mkpair(t_run(t_num(e1), t_fst(t_var(0))),
                               t_run(t_num(e2), t_snd(t_var(0))))));
}

Nat curry_code(const Nat& e) {
  // Given x, emit the code of  Lam(Run(Num e, MkPair(Num x, Var 0))).
  // The number is assembled with runtime pairing; only the Num x leaf
  // depends on the input.
  TermPtr num_x = t_mkpair(t_num(7), t_var(0));                // encode(Num x)
  TermPtr var0 = t_num(encode(t_var(0)));                      // encode(Var 0)
  TermPtr mkp = t_mkpair(t_num(8), t_mkpair(num_x, var0));     // encode(MkPair(Num x, Var 0))
  TermPtr code_e = t_num(encode(t_num(e)));                    // encode(Num e)
  TermPtr runt = t_mkpair(t_num(11), t_mkpair(code_e, mkp));   // encode(Run(...))
  TermPtr lam = t_mkpair(t_num(1), runt);                      // encode(Lam(...))
  return encode(t_lam(lam));
}

Nat eval_code() {
  return encode(t_lam(t_run(t_fst(t_var(0)), t_snd(t_var(0)))));
}

TermPtr table_term(const std::map<Nat, Nat>& entries) {
  // nested Case countdown; all outputs are closed numerals
  std::function<TermPtr(const std::map<Nat, Nat>&, TermPtr)> build =
      [&](const std::map<Nat, Nat>& mm, TermPtr scrut) -> TermPtr {
    TermPtr zv = t_num(mm.count(0) ? mm.at(0) : Nat(0));
    std::map<Nat, Nat> rest;
    for (auto& [k, v] : mm)
      if (k > 0) rest[k - 1] = v;
    if (rest.empty()) return t_case(scrut, zv, t_num(0));
    return t_case(scrut, zv, build(rest, t_var(0)));
  };
  return t_lam(build(entries, t_var(0)));
}

TermPtr table_term_terms(const std::map<Nat, TermPtr>& entries) {
  // leaves are closed, so nesting under the Case binders is harmless
  std::function<TermPtr(const std::map<Nat, TermPtr>&, TermPtr)> build =
      [&](const std::map<Nat, TermPtr>& mm, TermPtr scrut) -> TermPtr {
    TermPtr zv = mm.count(0) ? mm.at(0) : t_app(t_var(0), t_var(0));  // stuck off-key
    std::map<Nat, TermPtr> rest;
    for (auto& [k, v] : mm)
      if (k > 0) rest[k - 1] = v;
    if (rest.empty()) return t_case(scrut, zv, t_app(t_var(0), t_var(0)));
    return t_case(scrut, zv, build(rest, t_var(0)));
  };
  return t_lam(build(entries, t_var(0)));
}

TermPtr table_term_paired(const std::map<std::pair<Nat, Nat>, Nat>& entries) {
  // outer table maps the fst component to the code of an inner table
  std::map<Nat, std::map<Nat, Nat>> rows;
  for (auto& [k, v] : entries) rows[k.first][k.second] = v;
  std::map<Nat, Nat> outer;
  for (auto& [k1, row] : rows) outer[k1] = encode(table_term(row));
  return t_lam(t_run(t_app(table_term(outer), t_fst(t_var(0))), t_snd(t_var(0))));
}

TermPtr add_term() {
  // fix rec. \a. \b. case a of { 0 -> b; S p -> S(rec p b) }
  return t_fix(t_lam(t_lam(t_lam(t_case(
      t_var(1), t_var(0),
      t_succ(t_app(t_app(t_var(3), t_var(0)), t_var(1))))))));
}

TermPtr mul_term() {
  // fix rec. \a. \b. case a of { 0 -> 0; S p -> add b (rec p b) }
  return t_fix(t_lam(t_lam(t_lam(t_case(
      t_var(1), t_zero(),
      t_app(t_app(add_term(), t_var(1)),
            t_app(t_app(t_var(3), t_var(0)), t_var(1))))))));
}

}  // namespace eqc::pca
