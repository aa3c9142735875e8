#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eqc/doctrine.hpp"
#include "eqc/fincat.hpp"
#include "eqc/pca.hpp"

namespace eqc::pasm {

using pca::Nat;
using pca::TermPtr;

/// A set together with a total realizability relation into the machine
/// codes; partitioned when every point carries exactly one code.
struct Assembly {
  std::string name;
  std::vector<std::string> points;
  std::vector<std::vector<Nat>> codes;  // per point: nonempty, sorted, distinct

  int size() const { return int(points.size()); }
  bool partitioned() const {
    for (auto& cs : codes)
      if (cs.size() != 1) return false;
    return true;
  }
};

Assembly canonical_assembly(int n);             // points 0..n-1, code i
Assembly naturals_assembly(long bound);         // truncated naturals with identity codes
Assembly product_assembly(const Assembly& a, const Assembly& b);

/// A function between carriers with a tracker term: for every point x
/// and code n of x, running the tracker on n lands in a code of f(x).
struct TrackedMap {
  std::vector<int> table;
  TermPtr tracker;
};

struct TrackWitness {
  bool ok = true;
  int point = -1;
  Nat code;
};

TrackWitness check_tracked(const std::vector<int>& table, const Assembly& src,
                           const Assembly& tgt, const TermPtr& tracker, long fuel);

/// Least machine code below the bound tracking the table; absence is
/// not a proof of untrackability.
std::optional<Nat> find_tracker(const std::vector<int>& table, const Assembly& src,
                                const Assembly& tgt, const Nat& code_bound, long fuel);

/// The finite-table tracker: defined exactly when every source code
/// admits a common target code across the points it realizes.
std::optional<TermPtr> track_table(const std::vector<int>& table, const Assembly& src,
                                   const Assembly& tgt);

/// Trackability is decidable on finite carriers: a map is tracked iff
/// its finite table program works.
bool is_tracked(const std::vector<int>& table, const Assembly& src, const Assembly& tgt);

/// A fragment: finitely many assemblies closed under the chosen
/// products, with explicit bounds.
struct Fragment {
  std::vector<Assembly> objects;
  std::map<std::pair<int, int>, int> products;  // chosen (i,j) -> product object index
  int terminal = -1;
  long fuel = 10000;
  Nat code_bound = 1024;
  bool with_pullbacks = true;
};

/// The fragment as a concrete finite category: arrows are all tracked
/// tables, products from the chosen pairs, weak pullbacks on canonical
/// apexes wherever an equalizing subset of the right size exists.
struct FragmentCategory {
  fincat::CategoryPtr cat;
  fincat::ProductChoice products;
  fincat::WeakPullbackChoice pullbacks;
};

FragmentCategory fragment_category(const Fragment& frag);

/// Powerset-of-carrier fibers (the global-sections doctrine).
doctrine::Doctrine pgamma_doctrine(const FragmentCategory& fc);
/// Variations with tracked factorizations.
Result<doctrine::ClassedDoctrine, doctrine::DoctrineError> wsb_pasm_doctrine(
    const FragmentCategory& fc);
/// Strong subobjects over an assembly fragment: carrier subsets with
/// the restricted realizability relation, again powerset fibers.
doctrine::Doctrine ssb_asm_doctrine(const FragmentCategory& fc);

/// A weak exponential fragment: pairs (table, tracker <= code_bound).
struct WeakExponential {
  Assembly w;                      // carrier of the pairs, realized by the tracker
  std::vector<std::vector<int>> tables;  // per W-point: the function table
  std::vector<Nat> trackers;             // per W-point: its code
  TrackedMap ev;                         // W x A -> B
  Assembly wa;                           // the product W x A
};

struct WeakExpReport {
  bool ok = true;
  bool fragment_too_small = false;  // some map admits no factorization in bounds
  std::string witness;
  long maps_checked = 0;
};

/// Enumerates W = { (f,t) : t <= code_bound tracks f } and checks the
/// weak universal property against every tracked map C x A -> B for C
/// in the given test objects.
WeakExponential weak_exponential(const Assembly& a, const Assembly& b, long fuel,
                                 const Nat& code_bound);
WeakExpReport check_weak_exponential(const WeakExponential& we, const Assembly& a,
                                     const Assembly& b,
                                     const std::vector<Assembly>& test_objects, long fuel);

/// The forall-along-a-projection construction: for a variation class
/// [f: Y -> P x M], builds the assembly Q of triples (x, h, t) with t
/// tracking h: M -> Y and f(h(m)) = (x, m), and compares its first
/// projection with the order-theoretic right adjoint in the variation
/// fibers.
struct ForallConstructionReport {
  bool ok = true;
  long classes_checked = 0;
  long classes_skipped = 0;  // tracker bound exceeded during enumeration
  std::string witness;
};

ForallConstructionReport check_forall_construction(const Fragment& frag,
                                                   const FragmentCategory& fc, long fuel,
                                                   const Nat& code_bound);

/// Completion-of-global-sections versus the bounded assembly fragment:
/// the induced functor sends (A, rho) to the quotient assembly and is
/// checked full, faithful, and essentially surjective onto assemblies
/// within the stated bounds.
struct CarfurReport {
  bool ok = true;
  bool faithful = true;
  bool full = true;
  long surjective_hits = 0;
  long surjective_misses = 0;   // no preimage and no cover in the fragment: truncation
  long genuine_misses = 0;      // the partitioned cover is present yet no quotient matches
  std::vector<std::string> missed;
  std::string failure;
};

CarfurReport check_carfur_fragment(const Fragment& frag, const FragmentCategory& fc,
                                   int carrier_bound, const std::vector<Nat>& code_universe,
                                   long fuel);

/// (TCT) at desk scale: every member (g,t) of the weak exponential of
/// the truncated naturals is recursive via its own tracker, verified
/// through the halting-trace test.
struct TctReport {
  bool ok = true;
  long members = 0;
  std::string witness;
};

TctReport check_tct_pgamma(long quantifier_bound, long fuel, const Nat& code_bound);

/// (CT) for one decidable relation given as a program: the choice
/// table picks the least witness, its tracker is the recursive choice
/// function, and the halting traces validate R(x, U(y)).
struct CtReport {
  bool ok = true;
  Nat code;  // the e produced by the choice-then-track route
  std::string witness;
};

CtReport check_ct_instance(const Nat& relation_program, long bound, long fuel,
                           const Nat& code_bound, long witness_bound = -1);

/// Skolem data for the halting formula over W x N x N: the minimal
/// trace map, with a table tracker, checked against the existential
/// projection pointwise on the grid.
struct SkolemReport {
  bool ok = true;
  long grid_checked = 0;
  long fuel_bound_hits = 0;  // entries where divergence was cut off
  std::string witness;
};

SkolemReport skolem_min_search(long nat_bound, long fuel, const Nat& code_bound);

/// The second-projection Skolem arrow (g,t) |-> t for the recursiveness
/// formula: its verdict only needs each member to certify itself.
SkolemReport skolem_projection(long nat_bound, long fuel, const Nat& code_bound);

// --- fixtures --------------------------------------------------------------

/// Injectively coded fragment: canonical assemblies up to four points
/// plus the square of the two-point one.
const Fragment& basic_fragment();
const FragmentCategory& basic_category();

/// Adds a two-point assembly whose points share one code; sections
/// against it are untrackable, which separates variations from strong
/// subobjects.
const Fragment& collision_fragment();
const FragmentCategory& collision_category();

/// Small partitioned assemblies over codes {0,1} with diagonal
/// products, sized for the completion-versus-assemblies comparison:
/// every bounded two-point assembly arises as a quotient here.
const Fragment& carfur_fixture();
const FragmentCategory& carfur_category();

/// A three-point family: quotients of the 001-coded chain cover the
/// three-point singleton-coded assemblies; targets outside its reach
/// are reported as truncation, not mismatch.
const Fragment& carfur3_fixture();
const FragmentCategory& carfur3_category();

}  // namespace eqc::pasm
