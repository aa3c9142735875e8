#include "eqc/ha.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <functional>

#include "eqc/pasm.hpp"

namespace eqc::ha {

namespace {
TermPtr mk(Term t) { return std::make_shared<const Term>(std::move(t)); }
FormulaPtr mkf(Formula f) { return std::make_shared<const Formula>(std::move(f)); }
}  // namespace

TermPtr t_var(const std::string& name) { return mk({Term::Var, name}); }
TermPtr t_zero() { return mk({Term::Zero}); }
TermPtr t_succ(TermPtr t) { return mk({Term::Succ, "", std::move(t)}); }
TermPtr t_plus(TermPtr a, TermPtr b) { return mk({Term::Plus, "", std::move(a), std::move(b)}); }
TermPtr t_times(TermPtr a, TermPtr b) {
  return mk({Term::Times, "", std::move(a), std::move(b)});
}

FormulaPtr f_eq(TermPtr s, TermPtr t) {
  Formula f{Formula::Eq};
  f.s = std::move(s);
  f.t = std::move(t);
  return mkf(std::move(f));
}
FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  Formula f{Formula::And};
  f.a = std::move(a);
  f.b = std::move(b);
  return mkf(std::move(f));
}
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  Formula f{Formula::Or};
  f.a = std::move(a);
  f.b = std::move(b);
  return mkf(std::move(f));
}
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
  Formula f{Formula::Implies};
  f.a = std::move(a);
  f.b = std::move(b);
  return mkf(std::move(f));
}
FormulaPtr f_falsum() { return mkf({Formula::Falsum}); }
FormulaPtr f_exists(const std::string& v, FormulaPtr body) {
  Formula f{Formula::Exists};
  f.var = v;
  f.body = std::move(body);
  return mkf(std::move(f));
}
FormulaPtr f_forall(const std::string& v, FormulaPtr body) {
  Formula f{Formula::Forall};
  f.var = v;
  f.body = std::move(body);
  return mkf(std::move(f));
}

namespace {

void term_vars(const TermPtr& t, std::vector<std::string>& out) {
  switch (t->kind) {
    case Term::Var: out.push_back(t->var); return;
    case Term::Zero: return;
    case Term::Succ: term_vars(t->a, out); return;
    default:
      term_vars(t->a, out);
      term_vars(t->b, out);
  }
}

void collect_free(const FormulaPtr& f, std::vector<std::string>& bound,
                  std::vector<std::string>& out) {
  switch (f->kind) {
    case Formula::Eq: {
      std::vector<std::string> vs;
      term_vars(f->s, vs);
      term_vars(f->t, vs);
      for (auto& v : vs)
        if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.push_back(v);
      return;
    }
    case Formula::Falsum: return;
    case Formula::Exists:
    case Formula::Forall:
      bound.push_back(f->var);
      collect_free(f->body, bound, out);
      bound.pop_back();
      return;
    default:
      collect_free(f->a, bound, out);
      collect_free(f->b, bound, out);
  }
}

TermPtr numeral_term(const Nat& n) {
  TermPtr t = t_zero();
  for (Nat i = 0; i < n; ++i) t = t_succ(t);
  return t;
}

TermPtr subst_term(const TermPtr& t, const std::string& var, const Nat& value) {
  switch (t->kind) {
    case Term::Var: return t->var == var ? numeral_term(value) : t;
    case Term::Zero: return t;
    case Term::Succ: return t_succ(subst_term(t->a, var, value));
    case Term::Plus: return t_plus(subst_term(t->a, var, value), subst_term(t->b, var, value));
    case Term::Times:
      return t_times(subst_term(t->a, var, value), subst_term(t->b, var, value));
  }
  return t;
}

}  // namespace

std::vector<std::string> free_vars(const FormulaPtr& f) {
  std::vector<std::string> bound, out;
  collect_free(f, bound, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_closed(const FormulaPtr& f) { return free_vars(f).empty(); }

FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const Nat& value) {
  switch (f->kind) {
    case Formula::Eq: return f_eq(subst_term(f->s, var, value), subst_term(f->t, var, value));
    case Formula::Falsum: return f;
    case Formula::And: return f_and(substitute(f->a, var, value), substitute(f->b, var, value));
    case Formula::Or: return f_or(substitute(f->a, var, value), substitute(f->b, var, value));
    case Formula::Implies:
      return f_implies(substitute(f->a, var, value), substitute(f->b, var, value));
    case Formula::Exists:
    case Formula::Forall: {
      if (f->var == var) return f;  // shadowed
      FormulaPtr body = substitute(f->body, var, value);
      return f->kind == Formula::Exists ? f_exists(f->var, body) : f_forall(f->var, body);
    }
  }
  return f;
}

bool is_quantifier_free(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Eq:
    case Formula::Falsum: return true;
    case Formula::Exists:
    case Formula::Forall: return false;
    default: return is_quantifier_free(f->a) && is_quantifier_free(f->b);
  }
}

// --- parser ----------------------------------------------------------------

namespace {

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(const std::string& tok) {
    skip_ws();
    if (text.compare(pos, tok.size(), tok) == 0) {
      // keywords must not run into identifier characters
      if (std::isalpha(static_cast<unsigned char>(tok[0]))) {
        std::size_t end = pos + tok.size();
        if (end < text.size() && (std::isalnum(static_cast<unsigned char>(text[end])) ||
                                  text[end] == '_' || text[end] == '\''))
          return false;
      }
      pos += tok.size();
      return true;
    }
    return false;
  }
  bool peek(const std::string& tok) {
    std::size_t save = pos;
    bool r = eat(tok);
    pos = save;
    return r;
  }
  std::optional<std::string> ident() {
    skip_ws();
    std::size_t start = pos;
    if (pos >= text.size() || !std::isalpha(static_cast<unsigned char>(text[pos]))) return {};
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                 text[pos] == '_' || text[pos] == '\''))
      ++pos;
    std::string s = text.substr(start, pos - start);
    if (s == "all" || s == "ex" || s == "S") {
      pos = start;
      return {};
    }
    return s;
  }
  std::optional<long> number() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) return {};
    return std::stol(text.substr(start, pos - start));
  }

  ParseError err(const std::string& msg) { return {pos, msg}; }

  Result<TermPtr, ParseError> primary() {
    skip_ws();
    if (eat("0")) return TermPtr(t_zero());
    if (eat("S")) {
      if (!eat("(")) return err("expected ( after S");
      auto t = term();
      if (!t.ok()) return t;
      if (!eat(")")) return err("expected ) after S(");
      return TermPtr(t_succ(t.value()));
    }
    if (eat("(")) {
      auto t = term();
      if (!t.ok()) return t;
      if (!eat(")")) return err("expected )");
      return t;
    }
    if (auto v = ident()) return TermPtr(t_var(*v));
    return err("expected a term");
  }

  Result<TermPtr, ParseError> factor() {
    auto t = primary();
    if (!t.ok()) return t;
    TermPtr acc = t.value();
    while (eat("*")) {
      auto u = primary();
      if (!u.ok()) return u;
      acc = t_times(acc, u.value());
    }
    return acc;
  }

  Result<TermPtr, ParseError> term() {
    auto t = factor();
    if (!t.ok()) return t;
    TermPtr acc = t.value();
    while (true) {
      skip_ws();
      if (pos < text.size() && text[pos] == '+') {
        ++pos;
        auto u = factor();
        if (!u.ok()) return u;
        acc = t_plus(acc, u.value());
      } else {
        break;
      }
    }
    return acc;
  }

  Result<FormulaPtr, ParseError> atom() {
    skip_ws();
    if (eat("_|_")) return FormulaPtr(f_falsum());
    std::size_t save = pos;
    if (peek("(")) {
      // try a parenthesized term followed by '='; otherwise a formula
      {
        auto t = term();
        if (t.ok()) {
          skip_ws();
          if (pos < text.size() && text[pos] == '=') {
            ++pos;
            auto u = term();
            if (!u.ok()) return u.error();
            return FormulaPtr(f_eq(t.value(), u.value()));
          }
        }
        pos = save;
      }
      eat("(");
      auto f = formula();
      if (!f.ok()) return f;
      if (!eat(")")) return err("expected )");
      return f;
    }
    auto t = term();
    if (!t.ok()) return t.error();
    skip_ws();
    if (pos >= text.size() || text[pos] != '=') return err("expected = in an equation");
    ++pos;
    auto u = term();
    if (!u.ok()) return u.error();
    return FormulaPtr(f_eq(t.value(), u.value()));
  }

  Result<FormulaPtr, ParseError> conj() {
    auto f = atom();
    if (!f.ok()) return f;
    FormulaPtr acc = f.value();
    while (eat("/\\")) {
      auto g = atom();
      if (!g.ok()) return g;
      acc = f_and(acc, g.value());
    }
    return acc;
  }

  Result<FormulaPtr, ParseError> disj() {
    auto f = conj();
    if (!f.ok()) return f;
    FormulaPtr acc = f.value();
    while (eat("\\/")) {
      auto g = conj();
      if (!g.ok()) return g;
      acc = f_or(acc, g.value());
    }
    return acc;
  }

  Result<FormulaPtr, ParseError> impl() {
    auto f = disj();
    if (!f.ok()) return f;
    if (eat("->")) {
      auto g = formula();  // right-associative; quantifiers bind weakest to the right
      if (!g.ok()) return g;
      return FormulaPtr(f_implies(f.value(), g.value()));
    }
    return f;
  }

  Result<FormulaPtr, ParseError> formula() {
    skip_ws();
    bool is_all = false;
    std::size_t save = pos;
    if (eat("all")) is_all = true;
    else if (eat("ex")) is_all = false;
    else return impl();
    auto v = ident();
    if (!v) {
      pos = save;
      return err("expected a variable after the quantifier");
    }
    skip_ws();
    std::optional<long> bound;
    if (pos < text.size() && text[pos] == '<') {
      ++pos;
      bound = number();
      if (!bound) return err("expected a bound after <");
    }
    if (!eat(".")) return err("expected . after the quantifier");
    auto body = formula();
    if (!body.ok()) return body;
    if (!bound) {
      return FormulaPtr(is_all ? f_forall(*v, body.value()) : f_exists(*v, body.value()));
    }
    // bounded sugar: the finite chain of instances
    if (*bound == 0)
      return FormulaPtr(is_all ? f_eq(t_zero(), t_zero()) : f_falsum());
    FormulaPtr acc = substitute(body.value(), *v, 0);
    for (long k = 1; k < *bound; ++k) {
      FormulaPtr inst = substitute(body.value(), *v, k);
      acc = is_all ? f_and(acc, inst) : f_or(acc, inst);
    }
    return acc;
  }
};

}  // namespace

Result<FormulaPtr, ParseError> parse(const std::string& text) {
  Parser p{text};
  auto f = p.formula();
  if (!f.ok()) return f;
  p.skip_ws();
  if (p.pos != text.size()) return ParseError{p.pos, "trailing input"};
  return f;
}

std::string show(const TermPtr& t) {
  switch (t->kind) {
    case Term::Var: return t->var;
    case Term::Zero: return "0";
    case Term::Succ: return "S(" + show(t->a) + ")";
    case Term::Plus: return "(" + show(t->a) + " + " + show(t->b) + ")";
    case Term::Times: return "(" + show(t->a) + " * " + show(t->b) + ")";
  }
  return "?";
}

std::string show(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Eq: return show(f->s) + " = " + show(f->t);
    case Formula::Falsum: return "_|_";
    case Formula::And: return "(" + show(f->a) + " /\\ " + show(f->b) + ")";
    case Formula::Or: return "(" + show(f->a) + " \\/ " + show(f->b) + ")";
    case Formula::Implies: return "(" + show(f->a) + " -> " + show(f->b) + ")";
    case Formula::Exists: return "ex " + f->var + ". " + show(f->body);
    case Formula::Forall: return "all " + f->var + ". " + show(f->body);
  }
  return "?";
}

Result<unsigned long long, std::string> eval_term(const TermPtr& t,
                                                  const std::map<std::string, Nat>& env) {
  switch (t->kind) {
    case Term::Var: {
      auto it = env.find(t->var);
      if (it == env.end()) return std::string("unbound variable " + t->var);
      if (!it->second.fits_ulong_p()) return std::string("value too large");
      return (unsigned long long)it->second.get_ui();
    }
    case Term::Zero: return 0ULL;
    case Term::Succ: {
      auto a = eval_term(t->a, env);
      if (!a.ok()) return a;
      unsigned long long r;
      if (__builtin_add_overflow(a.value(), 1ULL, &r)) return std::string("overflow");
      return r;
    }
    case Term::Plus:
    case Term::Times: {
      auto a = eval_term(t->a, env);
      if (!a.ok()) return a;
      auto b = eval_term(t->b, env);
      if (!b.ok()) return b;
      unsigned long long r;
      bool ovf = t->kind == Term::Plus ? __builtin_add_overflow(a.value(), b.value(), &r)
                                       : __builtin_mul_overflow(a.value(), b.value(), &r);
      if (ovf) return std::string("overflow");
      return r;
    }
  }
  return std::string("bad term");
}

// --- realizability ----------------------------------------------------------

namespace {

/// Classical truth of a quantifier-free sentence; realizability and
/// truth coincide there, independently of any realizer.
std::optional<bool> qf_truth(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Eq: {
      auto a = eval_term(f->s);
      auto b = eval_term(f->t);
      if (!a.ok() || !b.ok()) return std::nullopt;
      return a.value() == b.value();
    }
    case Formula::Falsum: return false;
    case Formula::And: {
      auto a = qf_truth(f->a), b = qf_truth(f->b);
      if (!a || !b) return std::nullopt;
      return *a && *b;
    }
    case Formula::Or: {
      auto a = qf_truth(f->a), b = qf_truth(f->b);
      if (!a || !b) return std::nullopt;
      return *a || *b;
    }
    case Formula::Implies: {
      auto a = qf_truth(f->a), b = qf_truth(f->b);
      if (!a || !b) return std::nullopt;
      return !*a || *b;
    }
    default: return std::nullopt;
  }
}

RzVerdict merge_unknown(RzVerdict v, const RzVerdict& from) {
  v.kind = RzVerdict::Unknown;
  v.fuel_hit = v.fuel_hit || from.fuel_hit;
  v.qbound_hit = v.qbound_hit || from.qbound_hit;
  v.code_bound_hit = v.code_bound_hit || from.code_bound_hit;
  return v;
}

}  // namespace

RzVerdict check_realizer(const Nat& m, const FormulaPtr& phi, const Bounds& b) {
  switch (phi->kind) {
    case Formula::Eq: {
      auto x = eval_term(phi->s);
      auto y = eval_term(phi->t);
      if (!x.ok() || !y.ok()) return {RzVerdict::Unknown, 0, false, false, false, "overflow"};
      return {x.value() == y.value() ? RzVerdict::Realized : RzVerdict::RefutedWithinBounds};
    }
    case Formula::Falsum: return {RzVerdict::RefutedWithinBounds};
    case Formula::And: {
      RzVerdict l = check_realizer(pca::pair_fst(m), phi->a, b);
      if (l.kind == RzVerdict::RefutedWithinBounds) return l;
      RzVerdict r = check_realizer(pca::pair_snd(m), phi->b, b);
      if (r.kind == RzVerdict::RefutedWithinBounds) return r;
      if (l.kind == RzVerdict::Realized && r.kind == RzVerdict::Realized) return l;
      return merge_unknown(l, r);
    }
    case Formula::Or: {
      bool left = pca::pair_fst(m) == 0;
      return check_realizer(pca::pair_snd(m), left ? phi->a : phi->b, b);
    }
    case Formula::Implies: {
      // vacuous when the antecedent is decidably unrealizable
      if (auto t = qf_truth(phi->a); t && !*t) return {RzVerdict::Realized};
      RzVerdict out{RzVerdict::Unknown};
      out.code_bound_hit = true;  // the antecedent realizers are unbounded
      for (Nat k = 0; k <= b.code_bound; ++k) {
        RzVerdict ka = check_realizer(k, phi->a, b);
        if (ka.kind == RzVerdict::RefutedWithinBounds) continue;
        pca::RunResult r = pca::apply_code(m, k, b.fuel);
        if (r.kind == pca::RunResult::OutOfFuel) {
          out.fuel_hit = true;
          continue;
        }
        if (ka.kind == RzVerdict::Unknown) {
          out = merge_unknown(out, ka);
          continue;
        }
        if (r.kind == pca::RunResult::Stuck) return {RzVerdict::RefutedWithinBounds};
        RzVerdict kb = check_realizer(r.value, phi->b, b);
        if (kb.kind == RzVerdict::RefutedWithinBounds) return kb;
        if (kb.kind == RzVerdict::Unknown) out = merge_unknown(out, kb);
      }
      return out;
    }
    case Formula::Exists: {
      Nat k = pca::pair_fst(m);
      return check_realizer(pca::pair_snd(m), substitute(phi->body, phi->var, k), b);
    }
    case Formula::Forall: {
      RzVerdict out{RzVerdict::Unknown};
      out.qbound_hit = true;  // the domain is unbounded
      for (long k = 0; k <= b.qbound; ++k) {
        pca::RunResult r = pca::apply_code(m, k, b.fuel);
        if (r.kind == pca::RunResult::OutOfFuel) {
          out.fuel_hit = true;
          continue;
        }
        if (r.kind == pca::RunResult::Stuck) return {RzVerdict::RefutedWithinBounds};
        RzVerdict kb = check_realizer(r.value, substitute(phi->body, phi->var, k), b);
        if (kb.kind == RzVerdict::RefutedWithinBounds) return kb;
        if (kb.kind == RzVerdict::Unknown) out = merge_unknown(out, kb);
      }
      return out;
    }
  }
  return {RzVerdict::Unknown};
}

RzVerdict search_realizer(const FormulaPtr& phi, const Bounds& b) {
  // decidable fragment first: realizability coincides with truth
  if (auto t = qf_truth(phi)) {
    if (!*t) return {RzVerdict::RefutedWithinBounds};
    RzVerdict v = check_realizer(0, phi, b);
    v.realizer = 0;
    return v;
  }
  RzVerdict summary{RzVerdict::Unknown};
  bool all_refuted = true;
  for (Nat m = 0; m <= b.code_bound; ++m) {
    RzVerdict v = check_realizer(m, phi, b);
    if (v.kind == RzVerdict::Realized) {
      v.realizer = m;
      return v;
    }
    if (v.kind == RzVerdict::Unknown) {
      all_refuted = false;
      summary = merge_unknown(summary, v);
    }
  }
  summary.code_bound_hit = true;
  if (all_refuted) summary.note = "every candidate below the bound is refuted";
  return summary;
}

bool truth_oracle(const FormulaPtr& phi, long qbound) {
  std::function<bool(const FormulaPtr&, std::map<std::string, Nat>&)> ev =
      [&](const FormulaPtr& f, std::map<std::string, Nat>& env) -> bool {
    switch (f->kind) {
      case Formula::Eq: {
        auto a = eval_term(f->s, env);
        auto b = eval_term(f->t, env);
        return a.ok() && b.ok() && a.value() == b.value();
      }
      case Formula::Falsum: return false;
      case Formula::And: return ev(f->a, env) && ev(f->b, env);
      case Formula::Or: return ev(f->a, env) || ev(f->b, env);
      case Formula::Implies: return !ev(f->a, env) || ev(f->b, env);
      case Formula::Exists: {
        for (long k = 0; k <= qbound; ++k) {
          auto saved = env.find(f->var) != env.end() ? std::optional<Nat>(env[f->var])
                                                     : std::nullopt;
          env[f->var] = k;
          bool r = ev(f->body, env);
          if (saved) env[f->var] = *saved;
          else env.erase(f->var);
          if (r) return true;
        }
        return false;
      }
      case Formula::Forall: {
        for (long k = 0; k <= qbound; ++k) {
          auto saved = env.find(f->var) != env.end() ? std::optional<Nat>(env[f->var])
                                                     : std::nullopt;
          env[f->var] = k;
          bool r = ev(f->body, env);
          if (saved) env[f->var] = *saved;
          else env.erase(f->var);
          if (!r) return false;
        }
        return true;
      }
    }
    return false;
  };
  std::map<std::string, Nat> env;
  return ev(phi, env);
}

Nat witness_table_realizer(const std::vector<Nat>& table) {
  std::map<Nat, Nat> entries;
  for (std::size_t i = 0; i < table.size(); ++i) entries[Nat(i)] = table[i];
  return pca::encode(pca::t_lam(
      pca::t_mkpair(pca::t_app(pca::table_term(entries), pca::t_var(0)), pca::t_zero())));
}

Nat doubling_realizer() {
  return pca::encode(pca::t_lam(pca::t_mkpair(
      pca::t_app(pca::t_app(pca::add_term(), pca::t_var(0)), pca::t_var(0)), pca::t_zero())));
}

namespace {

Nat successor_realizer() {
  return pca::encode(pca::t_lam(pca::t_mkpair(pca::t_succ(pca::t_var(0)), pca::t_zero())));
}

}  // namespace

const std::vector<CorpusItem>& corpus() {
  static std::vector<CorpusItem> items = [] {
    std::vector<CorpusItem> v;
    auto delta0 = [&](const std::string& s, bool truth) {
      v.push_back({s, truth ? CorpusItem::TrueDelta0 : CorpusItem::FalseDelta0, 0});
    };
    auto planted = [&](const std::string& s, const Nat& m) {
      v.push_back({s, CorpusItem::PlantedRealizer, m});
    };
    auto open = [&](const std::string& s) { v.push_back({s, CorpusItem::Open, 0}); };

    // decidable sentences, statuses fixed by the truth oracle
    delta0("0 = 0", true);
    delta0("S(0) = S(0)", true);
    delta0("0 = S(0)", false);
    delta0("S(0) + S(0) = S(S(0))", true);
    delta0("S(0) + S(0) = S(S(S(0)))", false);
    delta0("S(0) * S(S(0)) = S(S(0))", true);
    delta0("all x<3. x + 0 = x", true);
    delta0("all x<3. x = 0", false);
    delta0("ex y<4. y = S(S(0))", true);
    delta0("ex x<2. S(x) = 0", false);
    delta0("all x<3. all y<3. x + y = y + x", true);
    delta0("all x<2. x * S(x) = x + x * x", true);
    delta0("ex y<3. y + y = S(S(S(S(0))))", true);
    delta0("all x<4. x * 0 = 0", true);
    delta0("0 = 0 /\\ S(0) = S(0)", true);
    delta0("0 = 0 /\\ 0 = S(0)", false);
    delta0("0 = 0 \\/ 0 = S(0)", true);
    delta0("0 = S(0) \\/ S(0) = S(S(0))", false);
    delta0("0 = S(0) -> 0 = S(S(0))", true);
    delta0("(0 = 0 -> 0 = S(0)) -> 0 = S(0)", true);

    // planted realizers
    planted("ex y. y = S(0)", pca::pair_encode(1, 0));
    planted("ex y. y = 0", pca::pair_encode(0, 0));
    planted("ex x. ex y. x + y = S(S(0))", pca::pair_encode(0, pca::pair_encode(2, 0)));
    planted("ex y. y + y = S(S(S(S(0))))", pca::pair_encode(2, 0));
    planted("ex y. (y = S(0) /\\ S(y) = S(S(0)))", pca::pair_encode(1, 0));
    planted("all x. x + 0 = x", pca::id_code());
    planted("all x. 0 + x = x", pca::id_code());
    planted("all x. ex y. y = S(x)", successor_realizer());
    planted("all x. ex y. y = x + x", doubling_realizer());

    // true but undecided at the working bounds
    open("all x. ex y. (x = y + y \\/ x = S(y + y))");

    return v;
  }();
  return items;
}

CorpusReport check_kleeneequiv_corpus(const Bounds& b) {
  CorpusReport rep;
  for (const auto& item : corpus()) {
    auto parsed = parse(item.text);
    if (!parsed.ok()) {
      rep.ok = false;
      rep.failure = item.text + ": " + parsed.error().describe();
      return rep;
    }
    const FormulaPtr& phi = parsed.value();
    ++rep.checked;
    switch (item.expected) {
      case CorpusItem::TrueDelta0:
      case CorpusItem::FalseDelta0: {
        bool truth = truth_oracle(phi, b.qbound);
        bool expect = item.expected == CorpusItem::TrueDelta0;
        if (truth != expect) {
          rep.ok = false;
          rep.failure = item.text + ": oracle disagrees with the fixture status";
          return rep;
        }
        RzVerdict v = search_realizer(phi, b);
        if (expect && v.kind != RzVerdict::Realized) {
          rep.ok = false;
          rep.failure = item.text + ": decidably true but not realized";
          return rep;
        }
        if (!expect && v.kind != RzVerdict::RefutedWithinBounds) {
          rep.ok = false;
          rep.failure = item.text + ": decidably false but not refuted";
          return rep;
        }
        break;
      }
      case CorpusItem::PlantedRealizer: {
        RzVerdict v = check_realizer(item.planted, phi, b);
        if (v.kind == RzVerdict::RefutedWithinBounds) {
          rep.ok = false;
          rep.failure = item.text + ": planted realizer refuted";
          return rep;
        }
        RzVerdict s = search_realizer(phi, b);
        if (s.kind == RzVerdict::RefutedWithinBounds) {
          rep.ok = false;
          rep.failure = item.text + ": search refuted a realizable sentence";
          return rep;
        }
        if (s.kind == RzVerdict::Unknown) ++rep.unknown;
        // existence property on realized existentials
        if (s.kind == RzVerdict::Realized && phi->kind == Formula::Exists) {
          Nat k = pca::pair_fst(s.realizer);
          RzVerdict inner = check_realizer(pca::pair_snd(s.realizer),
                                           substitute(phi->body, phi->var, k), b);
          if (inner.kind != RzVerdict::Realized) {
            rep.ok = false;
            rep.failure = item.text + ": existence property fails";
            return rep;
          }
        }
        break;
      }
      case CorpusItem::Open: {
        RzVerdict s = search_realizer(phi, b);
        if (s.kind == RzVerdict::RefutedWithinBounds) {
          rep.ok = false;
          rep.failure = item.text + ": open sentence refuted";
          return rep;
        }
        if (s.kind == RzVerdict::Unknown) ++rep.unknown;
        break;
      }
    }
    // disjunction property: a realized disjunction names its branch
    if (phi->kind == Formula::Or) {
      RzVerdict s = search_realizer(phi, b);
      if (s.kind == RzVerdict::Realized) {
        bool left = pca::pair_fst(s.realizer) == 0;
        RzVerdict branch =
            check_realizer(pca::pair_snd(s.realizer), left ? phi->a : phi->b, b);
        if (branch.kind != RzVerdict::Realized) {
          rep.ok = false;
          rep.failure = item.text + ": disjunction property fails";
          return rep;
        }
      }
    }
  }
  return rep;
}

TctSentenceReport check_tct_sentence(long qbound, long fuel, const Nat& code_bound) {
  auto rep = pasm::check_tct_pgamma(qbound, fuel, code_bound);
  return {rep.ok, rep.members};
}

}  // namespace eqc::ha
