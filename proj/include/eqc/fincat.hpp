#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "eqc/common.hpp"

namespace eqc::fincat {

using Obj = int;
using Arr = int;

/// A finite category.  Arrows either carry concrete function tables
/// between finite carriers (compose = table composition, looked up by
/// table) or composition is given by an explicit dense table.  The
/// concrete representation keeps product-closed fragments of the
/// category of finite sets tractable.
class FinCategory {
public:
  int num_objects() const { return int(obj_ids_.size()); }
  int num_arrows() const { return int(arr_ids_.size()); }
  const std::string& obj_id(Obj o) const { return obj_ids_[o]; }
  const std::string& arr_id(Arr a) const { return arr_ids_[a]; }
  Obj obj_index(const std::string& id) const;
  Arr arr_index(const std::string& id) const;
  Obj src(Arr a) const { return src_[a]; }
  Obj tgt(Arr a) const { return tgt_[a]; }
  Arr identity(Obj o) const { return id_[o]; }
  const std::vector<Arr>& hom(Obj a, Obj b) const {
    return hom_[std::size_t(a) * obj_ids_.size() + b];
  }

  /// g o f for f: A -> B, g: B -> C; -1 when not composable or the
  /// composite is missing from the arrow set.
  Arr compose(Arr g, Arr f) const;

  bool concrete() const { return !carrier_.empty(); }
  int carrier(Obj o) const { return carrier_[o]; }
  const std::vector<int>& table(Arr a) const { return tab_[a]; }
  /// Arrow with exactly this function table, -1 if absent.
  Arr arrow_by_table(Obj s, Obj t, const std::vector<int>& table) const;

  /// True when f is monic: f o u = f o v implies u = v for all
  /// parallel pairs in the category.
  bool is_mono(Arr f) const;

  // construction (used by builders/factories; validate afterwards)
  static FinCategory make_concrete(std::vector<std::string> obj_ids,
                                   std::vector<int> carriers,
                                   std::vector<std::string> arr_ids,
                                   std::vector<Obj> src, std::vector<Obj> tgt,
                                   std::vector<std::vector<int>> tables,
                                   std::vector<Arr> identities);
  static FinCategory make_explicit(std::vector<std::string> obj_ids,
                                   std::vector<std::string> arr_ids,
                                   std::vector<Obj> src, std::vector<Obj> tgt,
                                   std::vector<Arr> compose_table,
                                   std::vector<Arr> identities);

private:
  void index_homs();
  std::vector<std::string> obj_ids_, arr_ids_;
  std::vector<Obj> src_, tgt_;
  std::vector<Arr> id_;
  std::vector<std::vector<Arr>> hom_;
  std::vector<Arr> comp_;  // explicit mode: dense narr*narr
  std::vector<int> carrier_;
  std::vector<std::vector<int>> tab_;
  std::unordered_map<std::uint64_t, std::vector<Arr>> by_table_;
};

using CategoryPtr = std::shared_ptr<const FinCategory>;

struct CategoryError {
  enum Kind { NotAssociative, BadIdentity, MissingComposite, BadTable } kind;
  std::vector<std::string> witness;
  std::string describe() const;
};

/// Exhaustive law check: identities and associativity.  For concrete
/// categories it checks that the arrow set is closed under table
/// composition and that identities are identity tables, which proves
/// associativity outright; explicit categories get the full triple scan.
std::optional<CategoryError> check_category(const FinCategory& c);

/// Chosen binary products, terminal object and pairing.
struct Product {
  Obj prod;
  Arr pr1, pr2;
};

struct ProductChoice {
  Obj terminal = -1;
  std::vector<Arr> bang;  // per object: the unique arrow to the terminal
  std::map<std::pair<Obj, Obj>, Product> pairs;

  bool has(Obj a, Obj b) const { return pairs.count({a, b}) > 0; }
  const Product& at(Obj a, Obj b) const { return pairs.at({a, b}); }
};

/// The mediating arrow <f,g> into the chosen product of (cod f, cod g);
/// -1 when the product is not chosen or no mediating arrow exists.
Arr pairing(const FinCategory& c, const ProductChoice& p, Arr f, Arr g);

/// f x g : A x B -> A' x B' for f: A -> A', g: B -> B'.
Arr product_of_arrows(const FinCategory& c, const ProductChoice& p, Arr f, Arr g);

struct ProductError {
  std::string describe() const { return message; }
  std::string message;
};

/// Verifies the universal property of every chosen product (pairing
/// exists, is unique, satisfies the projection equations,
/// <pr1,pr2> = id) and that the terminal receives exactly one arrow
/// from each object.
std::optional<ProductError> check_products(const FinCategory& c, const ProductChoice& p);

struct WeakPullback {
  Obj apex;
  Arr p, q;  // p into dom f, q into dom g
};

struct WeakPullbackChoice {
  std::map<std::pair<Arr, Arr>, WeakPullback> squares;
  bool has(Arr f, Arr g) const { return squares.count({f, g}) > 0; }
  const WeakPullback& at(Arr f, Arr g) const { return squares.at({f, g}); }
};

/// Verifies each chosen square commutes and weakly factors every cone
/// built from the category's arrows (factorization need not be unique).
std::optional<ProductError> check_weak_pullbacks(const FinCategory& c,
                                                 const WeakPullbackChoice& w);

/// A finite-set fragment: the category of sets {0..n-1} for n in
/// `sizes` with all functions; products chosen for pairs with
/// |A|*|B| <= cap, pullbacks as equalizing subsets.
struct FinSetFragment {
  CategoryPtr cat;
  ProductChoice products;
  WeakPullbackChoice pullbacks;
};

struct NotClosed {
  long a, b;
  std::string describe() const {
    return "NotClosed(" + std::to_string(a) + "," + std::to_string(b) + ")";
  }
};

Result<FinSetFragment, NotClosed> finset_category(std::vector<long> sizes, long cap);

/// The product-closed fragment generated by full function sets between
/// the base sizes: objects are the base sizes and their pairwise
/// products; arrows are the closure of the base functions under
/// composition and pairing.  Hom sets out of product objects stay
/// restricted, which keeps the fragment materializable.
FinSetFragment finset_generated(std::vector<long> base_sizes);

/// The free finite-product category on one object, truncated at
/// tuple degree `max_degree`: objects are tuple powers a^0..a^d, and
/// hom(a^m, a^n) is the set of coordinate substitutions [n] -> [m].
/// Concretely realized on carriers {0..k-1}^n for a k-element carrier.
FinSetFragment tuple_category(int max_degree, int carrier = 3);

/// Incremental builder for concrete categories: arrows are deduplicated
/// by function table; finish() adds identities and freezes the data.
struct ConcreteBuilder {
  std::vector<std::string> obj_ids;
  std::vector<int> carriers;
  std::vector<std::string> arr_ids;
  std::vector<Obj> src, tgt;
  std::vector<std::vector<int>> tabs;
  std::unordered_map<std::uint64_t, std::vector<int>> index;

  Obj add_object(const std::string& id, int carrier);
  int find(Obj s, Obj t, const std::vector<int>& tab) const;
  int add(Obj s, Obj t, std::vector<int> tab);
  std::vector<int> identity_table(Obj o) const;
  FinCategory finish();
};

/// Closes the builder's arrow set under composition and under pairing
/// into the given chosen products (triples a, b, prod with the
/// standard row-major index pairing).
struct SaturateProduct {
  Obj a, b, p;
};
void saturate_closure(ConcreteBuilder& bld, const std::vector<SaturateProduct>& prods,
                      std::size_t arrow_budget = 200000);

struct PnnoReport {
  enum Verdict { Holds, FailsExistence, FailsUniqueness, BadShape } verdict;
  std::string witness;           // offending (a, f) pair, if any
  long pairs_checked = 0;
  long pairs_skipped = 0;        // missing products or oversized hom sets
};

/// Recursion-diagram check for a natural-number-object candidate
/// (N, z: 1 -> N, s: N -> N) on finite data: for every a: A -> X and
/// f: X -> X with A x N chosen, demands a unique k: A x N -> X with
/// k<id,z!> = a and k(id x s) = f k.  Finite categories cannot host a
/// genuine pnno; this reports how the candidate fails, and the
/// unbounded arithmetic claims live in the realizability layer instead.
PnnoReport check_pnno(const FinCategory& c, const ProductChoice& p, Obj n, Arr z, Arr s,
                      long bound);

}  // namespace eqc::fincat
