#include "eqc/order.hpp"

#include <algorithm>
#include <map>

namespace eqc::order {

std::string PosetError::describe() const {
  auto ws = [&] {
    std::string s;
    for (auto& w : witness) s += (s.empty() ? "" : ",") + w;
    return s;
  }();
  switch (kind) {
    case NotReflexive: return "NotReflexive(" + ws + ")";
    case NotAntisymmetric: return "NotAntisymmetric(" + ws + ")";
    case NotTransitive: return "NotTransitive(" + ws + ")";
    case DuplicateElement: return "DuplicateElement(" + ws + ")";
  }
  return "?";
}

Result<FinPoset, PosetError> check_poset(
    const std::vector<std::string>& elements,
    const std::vector<std::pair<std::string, std::string>>& leq) {
  const int n = int(elements.size());
  std::map<std::string, int> idx;
  for (int i = 0; i < n; ++i) {
    if (idx.count(elements[i]))
      return PosetError{PosetError::DuplicateElement, {elements[i]}};
    idx[elements[i]] = i;
  }
  std::vector<Bits> up(n, Bits(n));
  for (auto& [a, b] : leq) {
    auto ia = idx.find(a), ib = idx.find(b);
    if (ia == idx.end() || ib == idx.end())
      return PosetError{PosetError::DuplicateElement, {ia == idx.end() ? a : b}};
    up[ia->second].set(ib->second);
  }
  for (int i = 0; i < n; ++i)
    if (!up[i].test(i)) return PosetError{PosetError::NotReflexive, {elements[i]}};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && up[i].test(j) && up[j].test(i))
        return PosetError{PosetError::NotAntisymmetric, {elements[i], elements[j]}};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!up[i].test(j)) continue;
      for (int k = 0; k < n; ++k)
        if (up[j].test(k) && !up[i].test(k))
          return PosetError{PosetError::NotTransitive,
                            {elements[i], elements[j], elements[k]}};
    }
  return FinPoset(elements, std::move(up));
}

FinPoset powerset_poset(int ground) {
  const int n = 1 << ground;
  std::vector<std::string> ids(n);
  for (int m = 0; m < n; ++m) {
    std::string s(ground, '0');
    for (int b = 0; b < ground; ++b)
      if (m & (1 << b)) s[b] = '1';
    ids[m] = s.empty() ? "e" : s;
  }
  std::vector<Bits> up(n, Bits(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if ((a & b) == a) up[a].set(b);
  return FinPoset(std::move(ids), std::move(up));
}

FinPoset chain_poset(int n, const std::string& prefix) {
  std::vector<std::string> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = prefix + std::to_string(i);
  std::vector<Bits> up(n, Bits(n));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) up[a].set(b);
  return FinPoset(std::move(ids), std::move(up));
}

std::optional<std::pair<Elem, Elem>> MonotoneMap::monotonicity_witness() const {
  for (int x = 0; x < dom->size(); ++x)
    for (int y = 0; y < dom->size(); ++y)
      if (dom->leq(x, y) && !cod->leq(graph[x], graph[y]))
        return std::make_pair(Elem(x), Elem(y));
  return std::nullopt;
}

MonotoneMap identity_map(PosetPtr p) {
  MonotoneMap m{p, p, std::vector<Elem>(p->size())};
  for (int i = 0; i < p->size(); ++i) m.graph[i] = i;
  return m;
}

MonotoneMap compose(const MonotoneMap& second, const MonotoneMap& first) {
  assert(first.cod->size() == second.dom->size());
  MonotoneMap m{first.dom, second.cod, std::vector<Elem>(first.dom->size())};
  for (int i = 0; i < first.dom->size(); ++i) m.graph[i] = second.graph[first.graph[i]];
  return m;
}

bool same_map(const MonotoneMap& a, const MonotoneMap& b) { return a.graph == b.graph; }

std::string AdjointError::describe() const {
  return "NoAdjoint(at=" + std::to_string(at) + ", " +
         std::to_string(minimal_candidates.size()) + " minimal candidates)";
}

namespace {

// Shared minimum/maximum search: candidates(b) is the up- or down-set
// selector; returns the unique least/greatest candidate or the antichain.
Result<MonotoneMap, AdjointError> adjoint_impl(const MonotoneMap& f, bool left) {
  const FinPoset& A = *f.dom;
  const FinPoset& B = *f.cod;
  MonotoneMap g{f.cod, f.dom, std::vector<Elem>(B.size(), -1)};
  for (int b = 0; b < B.size(); ++b) {
    std::vector<Elem> cand;
    for (int a = 0; a < A.size(); ++a) {
      bool in = left ? B.leq(b, f.graph[a]) : B.leq(f.graph[a], b);
      if (in) cand.push_back(a);
    }
    Elem best = -1;
    for (Elem a : cand) {
      bool extreme = true;
      for (Elem a2 : cand)
        if (left ? !A.leq(a, a2) : !A.leq(a2, a)) { extreme = false; break; }
      if (extreme) { best = a; break; }
    }
    if (best < 0) {
      // report the minimal (resp. maximal) elements of the candidate set
      std::vector<Elem> frontier;
      for (Elem a : cand) {
        bool minimal = true;
        for (Elem a2 : cand)
          if (a2 != a && (left ? A.leq(a2, a) : A.leq(a, a2))) { minimal = false; break; }
        if (minimal) frontier.push_back(a);
      }
      return AdjointError{Elem(b), frontier};
    }
    g.graph[b] = best;
  }
  // re-verify the adjunction law exhaustively
  for (int b = 0; b < B.size(); ++b)
    for (int a = 0; a < A.size(); ++a) {
      bool lhs = left ? A.leq(g.graph[b], a) : A.leq(a, g.graph[b]);
      bool rhs = left ? B.leq(b, f.graph[a]) : B.leq(f.graph[a], b);
      if (lhs != rhs) return AdjointError{Elem(b), {Elem(a)}};
    }
  return g;
}

}  // namespace

Result<MonotoneMap, AdjointError> left_adjoint(const MonotoneMap& f) {
  return adjoint_impl(f, true);
}

Result<MonotoneMap, AdjointError> right_adjoint(const MonotoneMap& f) {
  return adjoint_impl(f, false);
}

std::string LatticeError::describe() const {
  switch (kind) {
    case NoTop: return "NoTop";
    case NoMeet: return "NoMeet(" + std::to_string(a) + "," + std::to_string(b) + ")";
    case NoBottom: return "NoBottom";
    case NoJoin: return "NoJoin(" + std::to_string(a) + "," + std::to_string(b) + ")";
  }
  return "?";
}

Result<InfSemilattice, LatticeError> inf_semilattice(PosetPtr base) {
  const FinPoset& p = *base;
  const int n = p.size();
  Elem top = -1;
  for (int t = 0; t < n; ++t) {
    bool is_top = true;
    for (int x = 0; x < n; ++x)
      if (!p.leq(x, t)) { is_top = false; break; }
    if (is_top) { top = t; break; }
  }
  if (top < 0) return LatticeError{LatticeError::NoTop};
  std::vector<Elem> meet(std::size_t(n) * n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      Bits lower = p.down_set(a) & p.down_set(b);
      // greatest element of the common lower set
      Elem glb = -1;
      for (int c = 0; c < n; ++c) {
        if (!lower.test(c)) continue;
        if (lower.subset_of(p.down_set(c))) { glb = c; break; }
      }
      if (glb < 0) return LatticeError{LatticeError::NoMeet, Elem(a), Elem(b)};
      meet[std::size_t(a) * n + b] = glb;
      meet[std::size_t(b) * n + a] = glb;
    }
  return InfSemilattice(std::move(base), top, std::move(meet));
}

std::string HeytingError::describe() const {
  switch (kind) {
    case NoBottom: return "NoBottom";
    case NoJoin: return "NoJoin(" + std::to_string(a) + "," + std::to_string(b) + ")";
    case NotHeyting:
      return "NotHeyting(" + std::to_string(a) + "," + std::to_string(b) + "," +
             std::to_string(c) + ")";
  }
  return "?";
}

Result<HeytingAlgebra, HeytingError> heyting_complete(const InfSemilattice& lat) {
  const FinPoset& p = lat.poset();
  const int n = p.size();
  Elem bottom = -1;
  for (int b = 0; b < n; ++b) {
    bool is_bot = true;
    for (int x = 0; x < n; ++x)
      if (!p.leq(b, x)) { is_bot = false; break; }
    if (is_bot) { bottom = b; break; }
  }
  if (bottom < 0) return HeytingError{HeytingError::NoBottom};

  std::vector<Elem> join(std::size_t(n) * n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      Bits upper = p.up_set(a) & p.up_set(b);
      Elem lub = -1;
      for (int c = 0; c < n; ++c) {
        if (!upper.test(c)) continue;
        if (upper.subset_of(p.up_set(c))) { lub = c; break; }
      }
      if (lub < 0) return HeytingError{HeytingError::NoJoin, Elem(a), Elem(b)};
      join[std::size_t(a) * n + b] = lub;
      join[std::size_t(b) * n + a] = lub;
    }

  // a => b is the join of { c : c /\ a <= b }
  std::vector<Elem> impl(std::size_t(n) * n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Elem acc = bottom;
      for (int c = 0; c < n; ++c)
        if (p.leq(lat.meet(c, a), b)) acc = join[std::size_t(acc) * n + c];
      impl[std::size_t(a) * n + b] = acc;
    }

  // residuation: c <= (a => b)  iff  c /\ a <= b
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        bool lhs = p.leq(c, impl[std::size_t(a) * n + b]);
        bool rhs = p.leq(lat.meet(c, a), b);
        if (lhs != rhs)
          return HeytingError{HeytingError::NotHeyting, Elem(a), Elem(b), Elem(c)};
      }
  return HeytingAlgebra(lat, bottom, std::move(join), std::move(impl));
}

bool preserves_meets(const InfSemilattice& dom, const InfSemilattice& cod,
                     const MonotoneMap& f) {
  if (f.graph[dom.top()] != cod.top()) return false;
  for (int a = 0; a < dom.size(); ++a)
    for (int b = 0; b < dom.size(); ++b)
      if (f.graph[dom.meet(a, b)] != cod.meet(f.graph[a], f.graph[b])) return false;
  return true;
}

}  // namespace eqc::order
