#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eqc/fincat.hpp"
#include "eqc/order.hpp"

namespace eqc::doctrine {

using fincat::Arr;
using fincat::Obj;
using order::Elem;

/// Optional concrete semantics: every fiber element denotes a subset
/// of the object's carrier, ordered by inclusion, with reindexing
/// acting by preimage.  When present (and validated) the expensive
/// exhaustive law checks collapse to per-arrow agreement checks, and
/// relation laws can be decided pointwise.
struct ConcreteFibers {
  std::vector<std::vector<Bits>> masks;  // [object][fiber element]
};

/// An indexed inf-semilattice over a finite category with chosen
/// products: one fiber per object, one reindexing map per arrow
/// (contravariant).
struct Doctrine {
  fincat::CategoryPtr base;
  fincat::ProductChoice products;
  std::vector<order::InfSemilattice> fibers;    // per object
  std::vector<order::MonotoneMap> reindex;      // per arrow: P(tgt) -> P(src)
  std::optional<ConcreteFibers> conc;

  const order::InfSemilattice& fiber(Obj o) const { return fibers[o]; }
  const order::MonotoneMap& rx(Arr a) const { return reindex[a]; }
  Elem rx1(Arr a, Elem x) const { return reindex[a].graph[x]; }
  Elem top(Obj o) const { return fibers[o].top(); }
  Elem meet(Obj o, Elem x, Elem y) const { return fibers[o].meet(x, y); }
  bool leq(Obj o, Elem x, Elem y) const { return fibers[o].leq(x, y); }
};

struct DoctrineError {
  enum Kind {
    FiberShape,
    ReindexShape,
    IdentityReindex,
    NotFunctorial,
    NotMeetPreserving,
    ConcreteMismatch
  } kind;
  std::string detail;
  std::string describe() const;
};

/// Exhaustive doctrine laws: reindex(id) = id, reindex(g o f) =
/// reindex(f) o reindex(g), and each reindex preserving top and binary
/// meets.  Concrete doctrines are checked by verifying the concrete
/// semantics instead (masks ordered by inclusion, meet = intersection,
/// reindex = preimage), which entails the laws wholesale.
std::optional<DoctrineError> check_doctrine(const Doctrine& p);

/// The equality predicate per object; -1 where the square A x A is not
/// a chosen product (no predicate is required there).
struct ElementaryStructure {
  std::vector<Elem> delta;
  bool has(Obj a) const { return delta[a] >= 0; }
};

struct NoDelta {
  Obj at;
  std::string describe() const { return "NoDelta(" + std::to_string(at) + ")"; }
};

/// Searches each fiber P(A x A) for the least equality predicate whose
/// induced assignment E_e(alpha) = <pr1,pr2>*(alpha) /\ <pr2,pr3>*(delta)
/// is left adjoint to reindexing along e = <pr1,pr2,pr2>, for every
/// admissible X (those whose iterated products exist in the fragment).
Result<ElementaryStructure, NoDelta> find_elementary(const Doctrine& p);

/// Verifies the adjunction for one candidate delta at one object; used
/// by find_elementary and by the completion to re-check delta_(A,rho).
bool elementary_adjunction_holds(const Doctrine& p, Obj a, Elem delta);

// --- doctrine constructions -------------------------------------------

/// A doctrine whose fiber elements are classes of arrows into each
/// object; reps[o][e] is the representative arrow of element e.
struct ClassedDoctrine {
  Doctrine d;
  std::vector<std::vector<Arr>> reps;
};

/// Subobjects: fibers are mono classes ordered by factorization,
/// reindexing by the chosen pullbacks.
Result<ClassedDoctrine, DoctrineError> subobject_doctrine(
    fincat::CategoryPtr c, const fincat::ProductChoice& products,
    const fincat::WeakPullbackChoice& pullbacks);

/// Variations: fibers are the poset reflection of all arrows into each
/// object (mutual factorization), reindexing by the chosen weak
/// pullbacks against class representatives.
Result<ClassedDoctrine, DoctrineError> variation_doctrine(
    fincat::CategoryPtr c, const fincat::ProductChoice& products,
    const fincat::WeakPullbackChoice& pullbacks);

/// The class of arrow g within a classed fiber, -1 when it matches no
/// class (which validation rules out for total constructions).
Elem class_of(const ClassedDoctrine& v, Obj a, Arr g);

/// Full powerset fibers over a concrete category, reindexing by
/// preimage; element index == subset bitmask.
Doctrine powerset_doctrine(fincat::CategoryPtr c, const fincat::ProductChoice& products);

/// One-element fibers.
Doctrine constant_doctrine(fincat::CategoryPtr c, const fincat::ProductChoice& products);

// --- quantifiers ---------------------------------------------------------

std::optional<order::MonotoneMap> exists_along(const Doctrine& p, Arr f);
std::optional<order::MonotoneMap> forall_along(const Doctrine& p, Arr f);

struct QuantifierStructure {
  std::map<Arr, order::MonotoneMap> exists_pr, forall_pr;  // keyed by pr1/pr2 arrows
};

struct QuantifierError {
  enum Kind { NoLeftAdjoint, NoRightAdjoint, BeckChevalleyFails } kind;
  Arr pr = -1;
  Arr f = -1;
  Elem alpha = -1;
  std::string describe() const;
};

/// Computes adjoints along every chosen projection and checks the
/// Beck-Chevalley equalities against every arrow f: X -> A for which
/// the comparison squares exist in the fragment.
Result<QuantifierStructure, QuantifierError> check_quantifiers(const Doctrine& p);

// --- predicates, relations, choice principles ----------------------------

struct ComprehensionReport {
  std::optional<Arr> weak;  // a weak comprehension arrow, if any
  bool strong = false;      // the found arrow is monic
  bool full = false;        // alpha <= beta iff |alpha| factors through |beta|
};

ComprehensionReport check_comprehension(const Doctrine& p, Obj a, Elem alpha);

struct DiagonalReport {
  bool comprehensive = true;
  Arr f = -1, g = -1;  // witness pair when not
};

DiagonalReport check_comprehensive_diagonals(const Doctrine& p, const ElementaryStructure& d);

struct EquivalenceReport {
  enum Law { Ok, NoSquare, Reflexivity, Symmetry, Transitivity } failed = Ok;
  std::string witness;
  bool ok() const { return failed == Ok; }
};

/// P-equivalence relation laws for rho in P(A x A).  Transitivity is
/// checked on all spans u,v: X -> AxA with matching middle leg; when
/// the triple product exists this is equivalent to the usual
/// formulation, and it is exactly the instance the quotient
/// construction consumes when it does not.
EquivalenceReport check_equivalence_relation(const Doctrine& p, const ElementaryStructure& d,
                                             Obj a, Elem rho);

enum class ChoiceRule { RC, RUC };

struct RuleReport {
  bool holds = true;
  Obj a = -1, b = -1;
  Elem relation = -1;  // counterexample relation in P(A x B)
  long relations_checked = 0;
  long relations_skipped = 0;  // functionality not expressible in the fragment
};

/// (RC): every entire relation contains the graph of an arrow.
/// (RUC): every entire functional relation is the graph of an arrow.
RuleReport check_rule(const Doctrine& p, const ElementaryStructure& d, ChoiceRule rule);

enum class ChoiceAxiom { AC, AUC };

struct AxiomReport {
  enum Verdict { Holds, Fails, MissingExponential } verdict = Holds;
  Obj b = -1;
  Elem relation = -1;
  long pairs_checked = 0;
  std::vector<Obj> skipped_b;  // targets with no weak exponential in the fragment
};

/// Weak evaluation found by search: an object W with ev: W x A -> B
/// weakly universal among the fragment's arrows C x A -> B.
struct WeakEvaluation {
  Obj w = -1;
  Arr ev = -1;
};

std::optional<WeakEvaluation> find_weak_evaluation(const Doctrine& p, Obj a, Obj b);

/// The axiom entailment  forall a. exists(!) b. R(a,b) |- exists f:W.
/// forall a. R(a, ev(f,a))  checked in the fiber order over the
/// terminal, for every relation R in P(A x B) and every B admitting a
/// weak evaluation (others are reported as skipped).
/// required_b, when nonnegative, demands that particular target be
/// checkable: a missing weak exponential there is the
/// MissingExponential verdict rather than a skip.
AxiomReport check_axiom(const Doctrine& p, const ElementaryStructure& d, ChoiceAxiom ax, Obj a,
                        const std::map<Obj, WeakEvaluation>& weak_exps = {},
                        Obj required_b = -1);

/// Skolem arrow test: Exists_pr1(alpha) == <id_Y, eps>*(alpha).
bool check_skolem(const Doctrine& p, Obj y, Obj b, Elem alpha, Arr eps);

// --- the comprehension/variation adjunction -------------------------------

struct AdjunctionReport {
  bool ok = false;
  std::string failure;                 // first failed law, empty when ok
  bool is_equality = false;            // id_Wsb = |-| o L (not just <=)
  bool frobenius = false;              // L(beta) /\ alpha = L(beta /\ |-|(alpha))
  bool forall_commutes = false;        // |forall alpha| = forall |alpha|
  bool impl_commutes = false;          // |gamma => beta| = |gamma| => |beta|
  long impl_pairs_skipped = 0;         // fibers without Heyting structure
  ClassedDoctrine wsb;                 // the variation doctrine it was compared to
  // L and |-| as monotone maps per object
  std::vector<order::MonotoneMap> from_wsb, to_wsb;
};

/// Builds Wsb over the base and the two transformations L[f] = E_f(top)
/// and |-|(alpha) = [comprehension of alpha]; checks L o |-| = id and
/// id <= |-| o L, plus the reciprocal laws that follow when the
/// inequality is an equality.
AdjunctionReport comprehension_adjunction(const Doctrine& p, const ElementaryStructure& d,
                                          const fincat::WeakPullbackChoice& pullbacks);

struct DoubleNegationReport {
  enum Verdict { Matches, HypothesisFailed, Mismatch } verdict = Matches;
  std::string detail;
};

/// When every left adjoint E_f is stable under double negation and
/// comprehensions of bottom are bottom, |-| o L on the variation
/// doctrine is double negation.  Verifies the hypotheses first, then
/// the conclusion pointwise (against an independently computed
/// negation table in each Wsb fiber).
DoubleNegationReport double_negation_check(const Doctrine& p, const ElementaryStructure& d,
                                           const fincat::WeakPullbackChoice& pullbacks);

}  // namespace eqc::doctrine
