#pragma once

#include <memory>

#include "eqc/doctrine.hpp"

namespace eqc::completion {

using doctrine::Doctrine;
using doctrine::Elem;
using doctrine::ElementaryStructure;
using fincat::Arr;
using fincat::Obj;

/// An object of the completed base: a carrier with an equivalence
/// relation from the fiber over its square.
struct QuotObject {
  Obj carrier;
  Elem rho;
};

/// The completed doctrine: base objects are (A, rho) pairs, arrows are
/// similarity classes of compatible base arrows, and fibers are the
/// descent-data sub-posets Des_rho of the original fibers.
struct QuotDoctrine {
  Doctrine q;  // validated doctrine over the new base
  std::shared_ptr<const Doctrine> base;
  ElementaryStructure base_delta;
  std::vector<QuotObject> objects;             // per q-object
  std::vector<std::vector<Arr>> arrow_class;   // per q-arrow: base arrow members
  std::vector<std::vector<Elem>> fiber_elem;   // per q-object: Des members as P-elements
  ElementaryStructure q_delta;                 // computed equality predicate of q

  /// q-object index for (carrier, rho), -1 when absent.
  int object_index(Obj carrier, Elem rho) const;
  /// q-arrow class containing the base arrow f, -1 when incompatible.
  int class_index(int qa, int qb, Arr f) const;
  /// position of the P-element alpha within the descent fiber of qo.
  int descent_index(int qo, Elem alpha) const;
};

struct CompletionError {
  std::string detail;
  std::string describe() const { return detail; }
};

/// Builds the elementary quotient completion: enumerates all
/// equivalence relations in the fibers over squares, forms arrow
/// classes with composition by representatives (re-checked to be well
/// defined), chooses products (A,rho) x (B,sigma) = (AxB, rho (x)
/// sigma) where the base squares exist, and takes descent data as
/// fibers.  The result passes check_doctrine and find_elementary.
Result<QuotDoctrine, CompletionError> complete(std::shared_ptr<const Doctrine> p,
                                               const ElementaryStructure& delta);

struct CompletedDeltaReport {
  bool ok = true;
  long objects_checked = 0;
  long objects_skipped = 0;  // no square of (A,rho) in the completed base
  std::string failure;
};

/// The equality predicate over (A, rho) is rho itself: compares the
/// computed q-delta with the descent element carrying rho, object by
/// object.
CompletedDeltaReport check_completed_delta(const QuotDoctrine& qp);

struct EffectiveQuotientReport {
  bool ok = true;
  long quotients_checked = 0;
  long universal_pairs = 0;
  long stability_checked = 0;
  long stability_skipped = 0;  // pullback not constructible in the fragment
  std::string failure;
};

/// Every q-equivalence relation sigma on (A,rho) has the effective
/// quotient [id_A]: (A,rho) -> (A,sigma): verifies the universal
/// property exhaustively and, where the base carries the comprehension
/// and product structure to build the chosen pullback, its stability.
EffectiveQuotientReport check_effective_quotients(const QuotDoctrine& qp);

struct TransferReport {
  bool base_holds = false;
  bool completed_holds = false;
  bool agree = false;  // as the transfer statement demands
  std::string detail;
};

/// (RC) holds in P iff (RUC) holds in the completion.
TransferReport check_ruc_transfer(std::shared_ptr<const Doctrine> p,
                                  const ElementaryStructure& delta);

/// (AC) in P implies (AUC) in the completion; with full weak
/// comprehensions the converse holds as well.
TransferReport check_auc_transfer(std::shared_ptr<const Doctrine> p,
                                  const ElementaryStructure& delta,
                                  bool full_weak_comprehensions);

/// (AC) on A in P iff (AC) on (A, delta_A) in the completion.
TransferReport check_ac_on_object_transfer(std::shared_ptr<const Doctrine> p,
                                           const ElementaryStructure& delta, Obj a);

struct EmbeddingReport {
  bool ok = true;
  bool applicable = true;  // requires comprehensive diagonals
  std::string failure;
};

/// P is the full subcategory of the completion on the (A, delta_A):
/// hom sets biject with arrow classes and the descent fibers over
/// delta are all of P(A).
EmbeddingReport check_base_embedding(const QuotDoctrine& qp);

struct IdempotenceReport {
  bool completed_again = false;
  long extra_objects = 0;  // objects of Q(Q(P)) not isomorphic to any Q(P) object
};

/// Instance-level idempotence: completing the completion adds no new
/// objects up to isomorphism when every completed relation is
/// effective.  Reported, never asserted.
IdempotenceReport check_idempotence(const QuotDoctrine& qp);

}  // namespace eqc::completion
