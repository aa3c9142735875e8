#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eqc/common.hpp"
#include "eqc/pca.hpp"

namespace eqc::ha {

using pca::Nat;

/// Arithmetic terms over named variables.
struct Term;
using TermPtr = std::shared_ptr<const Term>;
struct Term {
  enum Kind { Var, Zero, Succ, Plus, Times } kind;
  std::string var;
  TermPtr a, b;
};

TermPtr t_var(const std::string& name);
TermPtr t_zero();
TermPtr t_succ(TermPtr t);
TermPtr t_plus(TermPtr a, TermPtr b);
TermPtr t_times(TermPtr a, TermPtr b);

/// Formulas of arithmetic: equations, connectives, quantifiers.
struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;
struct Formula {
  enum Kind { Eq, And, Or, Implies, Falsum, Exists, Forall } kind;
  TermPtr s, t;      // Eq
  FormulaPtr a, b;   // connectives
  std::string var;   // quantifiers
  FormulaPtr body;
};

FormulaPtr f_eq(TermPtr s, TermPtr t);
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_falsum();
FormulaPtr f_exists(const std::string& v, FormulaPtr body);
FormulaPtr f_forall(const std::string& v, FormulaPtr body);

std::vector<std::string> free_vars(const FormulaPtr& f);
bool is_closed(const FormulaPtr& f);
/// Capture-free substitution of a numeral for a variable.
FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const Nat& value);
/// Quantifier-free after bounded-quantifier expansion.
bool is_quantifier_free(const FormulaPtr& f);

struct ParseError {
  std::size_t position;
  std::string message;
  std::string describe() const {
    return "parse error at " + std::to_string(position) + ": " + message;
  }
};

/// Concrete grammar: formulas over the tokens
///   0  S  +  *  =  /\  \/  ->  _|_  all  ex  .  (  )  <ident>
/// `all x.` and `ex x.` bind weakest; -> is right-associative; /\
/// binds tighter than \/ tighter than ->.  The bounded sugar
/// `all x<n.` / `ex x<n.` expands into the chain of instances.
Result<FormulaPtr, ParseError> parse(const std::string& text);

std::string show(const TermPtr& t);
std::string show(const FormulaPtr& f);

/// Exact evaluation of a closed term; overflow past 64 bits is an
/// error, never a wrap.
Result<unsigned long long, std::string> eval_term(const TermPtr& t,
                                                  const std::map<std::string, Nat>& env = {});

/// Three-valued bounded realizability verdict.
struct RzVerdict {
  enum Kind { Realized, RefutedWithinBounds, Unknown } kind = Unknown;
  Nat realizer;       // for Realized results of searches
  bool fuel_hit = false;
  bool qbound_hit = false;
  bool code_bound_hit = false;
  std::string note;
};

struct Bounds {
  long fuel = 10000;
  long qbound = 16;
  Nat code_bound = 1024;
};

/// Does m realize phi?  The quantifier clauses over unbounded domains
/// are checked up to the bounds; a run that exhausts a bound without
/// finding a violation is Unknown, never silently accepted.
RzVerdict check_realizer(const Nat& m, const FormulaPtr& phi, const Bounds& b);

/// Least realizer below the code bound, else a Refuted/Unknown summary.
RzVerdict search_realizer(const FormulaPtr& phi, const Bounds& b);

/// Classical truth with quantifiers ranging over 0..qbound; exact on
/// formulas whose quantifiers were expanded away by the bounded sugar.
bool truth_oracle(const FormulaPtr& phi, long qbound);

/// A corpus sentence with its expected status.
struct CorpusItem {
  std::string text;
  enum Expected { TrueDelta0, FalseDelta0, PlantedRealizer, Open } expected;
  Nat planted;  // realizer for PlantedRealizer entries
};

/// The shipped thirty-sentence corpus: statuses are fixed by the truth
/// oracle or by planted realizers, never invented.
const std::vector<CorpusItem>& corpus();

struct CorpusReport {
  bool ok = true;
  long checked = 0;
  long unknown = 0;
  std::string failure;
};

/// Realizability against the corpus: search agrees with the oracle on
/// decidable sentences, never refutes a planted realizer, and every
/// Realized existential/disjunction yields its witness data.
CorpusReport check_kleeneequiv_corpus(const Bounds& b);

/// Single entry point for the recursiveness-of-function-space claim,
/// delegated to the assembly fragment machinery.
struct TctSentenceReport {
  bool ok = true;
  long members = 0;
};
TctSentenceReport check_tct_sentence(long qbound, long fuel, const Nat& code_bound);

// --- realizer construction helpers (planted witnesses) ---------------------

/// Code of a program computing x |-> pair(h(x), 0) for the table h;
/// realizes  all x. ex y. phi(x,y)  when h picks witnesses and phi is
/// atomic.
Nat witness_table_realizer(const std::vector<Nat>& table);
/// Code of x |-> pair(2x, 0): the doubling witness.
Nat doubling_realizer();

}  // namespace eqc::ha
