#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eqc/common.hpp"

namespace eqc::order {

/// Index of an element within a FinPoset; the element sequence fixes
/// iteration order, so every search below is deterministic.
using Elem = int;

/// A finite poset over opaque string ids.  The relation is stored as
/// up-set rows: up[i] = { j : i <= j }.
class FinPoset {
public:
  FinPoset() = default;
  FinPoset(std::vector<std::string> ids, std::vector<Bits> up)
      : ids_(std::move(ids)), up_(std::move(up)) {
    down_.assign(ids_.size(), Bits(ids_.size()));
    for (std::size_t i = 0; i < ids_.size(); ++i)
      for (std::size_t j = 0; j < ids_.size(); ++j)
        if (up_[i].test(j)) down_[j].set(i);
  }

  int size() const { return int(ids_.size()); }
  const std::string& id(Elem i) const { return ids_[i]; }
  const std::vector<std::string>& ids() const { return ids_; }
  Elem index_of(const std::string& id) const {
    for (std::size_t i = 0; i < ids_.size(); ++i)
      if (ids_[i] == id) return Elem(i);
    return -1;
  }
  bool leq(Elem a, Elem b) const { return up_[a].test(b); }
  const Bits& up_set(Elem a) const { return up_[a]; }
  const Bits& down_set(Elem a) const { return down_[a]; }

private:
  std::vector<std::string> ids_;
  std::vector<Bits> up_;    // up_[i] = elements above i (inclusive)
  std::vector<Bits> down_;  // down_[i] = elements below i (inclusive)
};

using PosetPtr = std::shared_ptr<const FinPoset>;

struct PosetError {
  enum Kind { NotReflexive, NotAntisymmetric, NotTransitive, DuplicateElement } kind;
  std::vector<std::string> witness;
  std::string describe() const;
};

/// Validates raw order data: reflexivity, antisymmetry, transitivity,
/// distinct ids.  Returns the first violated law with a witness.
Result<FinPoset, PosetError> check_poset(
    const std::vector<std::string>& elements,
    const std::vector<std::pair<std::string, std::string>>& leq);

/// Builds the poset of subsets of {0..n-1}; element index == bitmask.
FinPoset powerset_poset(int ground);

/// Chain 0 < 1 < ... < n-1 with the given id prefix.
FinPoset chain_poset(int n, const std::string& prefix = "c");

/// A monotone map between finite posets, total on dom.
struct MonotoneMap {
  PosetPtr dom, cod;
  std::vector<Elem> graph;

  Elem operator()(Elem x) const { return graph[x]; }
  /// First violation of x <= y => f(x) <= f(y), if any.
  std::optional<std::pair<Elem, Elem>> monotonicity_witness() const;
};

MonotoneMap identity_map(PosetPtr p);
MonotoneMap compose(const MonotoneMap& second, const MonotoneMap& first);
bool same_map(const MonotoneMap& a, const MonotoneMap& b);

struct AdjointError {
  Elem at;                            // cod element with no best approximation
  std::vector<Elem> minimal_candidates;  // antichain of minimal candidates
  std::string describe() const;
};

/// Left adjoint g -| f: g(b) = min { a : b <= f(a) }, with the
/// adjunction law g(b) <= a  iff  b <= f(a) re-verified exhaustively.
Result<MonotoneMap, AdjointError> left_adjoint(const MonotoneMap& f);

/// Right adjoint f -| g: g(b) = max { a : f(a) <= b }, dual law.
Result<MonotoneMap, AdjointError> right_adjoint(const MonotoneMap& f);

struct LatticeError {
  enum Kind { NoTop, NoMeet, NoBottom, NoJoin } kind;
  Elem a = -1, b = -1;
  std::string describe() const;
};

/// An inf-semilattice: finite poset with top and a binary meet table.
class InfSemilattice {
public:
  InfSemilattice() = default;
  InfSemilattice(PosetPtr base, Elem top, std::vector<Elem> meet_table)
      : base_(std::move(base)), top_(top), meet_(std::move(meet_table)) {}

  const FinPoset& poset() const { return *base_; }
  const PosetPtr& poset_ptr() const { return base_; }
  int size() const { return base_->size(); }
  Elem top() const { return top_; }
  Elem meet(Elem a, Elem b) const { return meet_[std::size_t(a) * base_->size() + b]; }
  bool leq(Elem a, Elem b) const { return base_->leq(a, b); }

private:
  PosetPtr base_;
  Elem top_ = -1;
  std::vector<Elem> meet_;
};

/// Computes top and all binary meets; fails if the poset lacks them.
Result<InfSemilattice, LatticeError> inf_semilattice(PosetPtr base);

struct HeytingError {
  enum Kind { NoBottom, NoJoin, NotHeyting } kind;
  Elem a = -1, b = -1, c = -1;  // failing residuation triple for NotHeyting
  std::string describe() const;
};

/// A Heyting algebra layered over an InfSemilattice.
class HeytingAlgebra {
public:
  HeytingAlgebra() = default;
  HeytingAlgebra(InfSemilattice lat, Elem bottom, std::vector<Elem> join_table,
                 std::vector<Elem> impl_table)
      : lat_(std::move(lat)), bottom_(bottom), join_(std::move(join_table)),
        impl_(std::move(impl_table)) {}

  const InfSemilattice& meets() const { return lat_; }
  int size() const { return lat_.size(); }
  Elem top() const { return lat_.top(); }
  Elem bottom() const { return bottom_; }
  Elem meet(Elem a, Elem b) const { return lat_.meet(a, b); }
  Elem join(Elem a, Elem b) const { return join_[std::size_t(a) * lat_.size() + b]; }
  Elem impl(Elem a, Elem b) const { return impl_[std::size_t(a) * lat_.size() + b]; }
  Elem neg(Elem a) const { return impl(a, bottom_); }
  bool leq(Elem a, Elem b) const { return lat_.leq(a, b); }

private:
  InfSemilattice lat_;
  Elem bottom_ = -1;
  std::vector<Elem> join_, impl_;
};

/// Computes bottom, joins and a => b = join { c : c /\ a <= b }, then
/// verifies residuation c <= (a => b) iff c /\ a <= b on all triples.
/// Non-distributive lattices are rejected, never patched.
Result<HeytingAlgebra, HeytingError> heyting_complete(const InfSemilattice& lat);

/// True when f preserves all existing binary meets (and top); used to
/// cross-check left adjoint existence on small posets.
bool preserves_meets(const InfSemilattice& dom, const InfSemilattice& cod,
                     const MonotoneMap& f);

}  // namespace eqc::order
