#pragma once

#include "eqc/doctrine.hpp"
#include "eqc/fincat.hpp"

namespace eqc::corpus {

/// The finite-set fragment on sizes {0..4} with cap 4; carries every
/// subset size up to 4 so subobject fibers are full powersets.
const fincat::FinSetFragment& finset_small();

/// The product-closed fragment generated by full function sets on
/// {1,2,3}; hosts the equivalence-relation counting fixtures.
const fincat::FinSetFragment& bell_fragment();

/// The free finite-product category on one object truncated at tuple
/// degree 4, realized on a 3-element carrier.
const fincat::FinSetFragment& tuple4();

// --- corpus doctrines ------------------------------------------------------

/// Subobjects over finset_small.
const doctrine::ClassedDoctrine& sub_finset();

/// Variations over finset_small.
const doctrine::ClassedDoctrine& wsb_finset();

/// Full powerset fibers over bell_fragment.
const doctrine::Doctrine& bell_powerset();

/// Fibers over tuple powers are the coordinate-identification
/// patterns: one subset D_pi per partition pi of the coordinates,
/// reindexed by preimage.  Small fibers with genuine squares up to
/// (a x a) x (a x a), which makes the completed equality predicate
/// checkable in depth.
const doctrine::Doctrine& kernel_doctrine();

/// One-element fibers over finset {1,2}.
const doctrine::Doctrine& constant_small();

/// Difference-pattern fibers over the tuple powers of a 3-element
/// carrier: masks cut out by constraints x_j = x_i + d (mod 3), closed
/// under meets and preimages.  The shift relations are entire and
/// functional but no substitution realizes them, so both choice rules
/// fail here, and the failure transports through the completion.
const doctrine::Doctrine& affine_doctrine();

// --- planted failure fixtures ---------------------------------------------

/// Diamond fibers over a two-object category with one reindex that is
/// monotone but not meet-preserving.
doctrine::Doctrine broken_meet_fixture();

/// A hand-built six-object category (T, A, B, X, AxB, XxB) with chain
/// fibers arranged so the Beck-Chevalley comparison fails at the
/// middle element of the A x B fiber.
doctrine::Doctrine bc_failure_fixture();

/// Powerset fibers over a category of two-point sets whose function
/// set lacks the swap, so the swap graph is an entire functional
/// relation that is no graph: both choice rules fail.
doctrine::Doctrine sparse_choice_fixture();

/// Constant fibers over finset {1,2}: delta = top over a category with
/// distinct parallel arrows, so diagonals are not comprehensive.
doctrine::Doctrine trivial_delta_fixture();

}  // namespace eqc::corpus
