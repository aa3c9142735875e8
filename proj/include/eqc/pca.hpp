#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace eqc::pca {

using Nat = mpz_class;

/// The fixed recursive pair encoding <n,m> = (n+m)(n+m+1)/2 + m.
Nat pair_encode(const Nat& n, const Nat& m);
Nat pair_fst(const Nat& k);
Nat pair_snd(const Nat& k);

/// Term syntax of the machine calculus.  Programs are naturals that
/// decode to these terms; the decoder reads tags modulo the variant
/// count, so every natural is a program (stuck states still arise from
/// unbound variables and ill-typed applications at run time).
///
/// Tags: 0 Var, 1 Lam, 2 Zero, 3 Succ, 4 App, 5 Case, 6 Fix, 7 Num,
///       8 MkPair, 9 PFst, 10 PSnd, 11 Run.
struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum Kind { Var, Lam, Zero, Succ, App, Case, Fix, Num, MkPair, PFst, PSnd, Run } kind;
  long var = 0;        // Var
  Nat num = 0;         // Num
  TermPtr a, b, c;     // children (Case uses all three)
};

TermPtr t_var(long i);
TermPtr t_lam(TermPtr body);
TermPtr t_zero();
TermPtr t_succ(TermPtr t);
TermPtr t_app(TermPtr f, TermPtr x);
TermPtr t_case(TermPtr scrut, TermPtr if_zero, TermPtr if_succ);  // if_succ binds the predecessor
TermPtr t_fix(TermPtr t);
TermPtr t_num(const Nat& n);
TermPtr t_mkpair(TermPtr x, TermPtr y);
TermPtr t_fst(TermPtr t);
TermPtr t_snd(TermPtr t);
TermPtr t_run(TermPtr code, TermPtr arg);  // apply the program coded by `code` to `arg`

Nat encode(const TermPtr& t);
TermPtr decode(const Nat& code);
std::string show(const TermPtr& t);

/// Values are Num/Zero (numerals), Lam, and Fix(Lam).
bool is_value(const TermPtr& t);
std::optional<Nat> numeral(const TermPtr& t);

struct StepOut {
  enum Tag { Next, Value, Stuck } tag;
  TermPtr term;  // successor state for Next, the state itself otherwise
};

/// One deterministic call-by-value small step.
StepOut step(const TermPtr& t);

struct RunResult {
  enum Kind { Halted, OutOfFuel, Stuck } kind;
  Nat value;     // meaningful for Halted
  long steps;    // steps performed before halting / giving up
  TermPtr state; // final state (stuck state for Stuck)
};

/// Runs to a numeral value or until fuel runs out.  A non-numeral
/// value (a bare function) counts as stuck: it is not a halting state
/// of the partial function the program computes.
RunResult run(TermPtr start, long fuel);

/// phi_e(x): decodes e and runs it applied to the numeral x.
RunResult apply_code(const Nat& e, const Nat& x, long fuel);

/// Halting-trace test: 1 iff y = <k,r> and the bounded run of e on x
/// halts at exactly step k with value r.  Cost is linear in k; k above
/// `step_cap` can only answer 1 when the run halts within the cap.
int kleene_T(const Nat& e, const Nat& x, const Nat& y, long step_cap = 1 << 22);

/// Output extraction U(y) = snd(y); total and primitive recursive.
Nat kleene_U(const Nat& y);

/// The trace code <steps, result> for a halted run.
Nat trace_code(long steps, const Nat& result);

// --- standard program codes -------------------------------------------

Nat id_code();
Nat succ_code();
Nat const_code(const Nat& n);
/// phi_{e1} o phi_{e2}
Nat compose_codes(const Nat& e1, const Nat& e2);
/// k |-> < phi_{e1}(fst k), phi_{e2}(snd k) >
Nat pair_codes(const Nat& e1, const Nat& e2);
/// x |-> code of (y |-> phi_e(<x,y>))
Nat curry_code(const Nat& e);
/// the universal k |-> phi_{fst k}(snd k)
Nat eval_code();

/// Finite-table program: maps each key to its value, 0 elsewhere.
/// Runs in O(max key) steps, so keep keys small.
TermPtr table_term(const std::map<Nat, Nat>& entries);
/// Table keyed on Cantor pairs, matching fst then snd; keeps the
/// Case chains shallow when the components are small.
TermPtr table_term_paired(const std::map<std::pair<Nat, Nat>, Nat>& entries);
/// Finite table whose values are closed terms (stuck off the keys).
TermPtr table_term_terms(const std::map<Nat, TermPtr>& entries);

/// Curried binary addition and multiplication on numerals.
TermPtr add_term();
TermPtr mul_term();

}  // namespace eqc::pca
