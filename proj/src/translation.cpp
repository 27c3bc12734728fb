#include "iqcl/translation.hpp"

#include "iqcl/parser.hpp"

namespace iqcl {

Formula pmv_translate(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Const:
    case Kind::Meta:
      return f;
    case Kind::Neg:
      return Formula::neg(pmv_translate(f.operand()));
    case Kind::Sqrt: {
      const Formula& a = f.operand();
      switch (a.kind()) {
        case Kind::Atom:
        case Kind::Meta:
          return f;
        case Kind::Const:
          return Formula::half();
        case Kind::Neg:
          return pmv_translate(Formula::neg(Formula::sqrt(a.operand())));
        case Kind::Sqrt:
          return pmv_translate(Formula::neg(a.operand()));
        default:
          return Formula::half();
      }
    }
    default:
      return Formula::binary(f.kind(), pmv_translate(f.left()), pmv_translate(f.right()));
  }
}

Theory translate_theory(const Theory& t) {
  Theory out;
  for (const auto& f : t) out.add(pmv_translate(f));
  return out;
}

Tq5Config Tq5Config::for_formula(const Formula& goal) {
  Tq5Config cfg;
  for (const auto& a : iqcl::atoms(goal)) {
    cfg.atoms.push_back(a);
    cfg.t5_formulas.push_back(Formula::atom(a));
    cfg.t5_formulas.push_back(Formula::sqrt(Formula::atom(a)));
  }
  cfg.bound_values = {least_dyadic_above_q5_bound(8)};
  cfg.t5_values = {SConstant(3, 3)};
  return cfg;
}

Theory generate_tq5(const Tq5Config& cfg) {
  using F = Formula;
  for (const auto& s : cfg.bound_values)
    if (!s_above_q5_bound(s)) throw std::invalid_argument("value " + to_string(s) + " is below the bound");
  for (const auto& s : cfg.t5_values)
    if (s.value() < Rational(3, 8)) throw std::invalid_argument("value " + to_string(s) + " is below 3/8");
  const F quarter = F::constant(SConstant(1, 2)), eighth = F::constant(SConstant(1, 3));
  auto q = [&](const F& a) { return F::product(quarter, a); };
  Theory out;
  for (const auto& name : cfg.atoms) {
    const F p = F::atom(name), sp = F::sqrt(p);
    for (const auto& s : cfg.bound_values) {
      const F bound = F::constant(s);
      out.add(F::implies(F::oplus(q(p), q(sp)), bound));
      out.add(F::implies(F::oplus(q(F::neg(p)), q(F::neg(sp))), bound));
      out.add(F::implies(F::oplus(q(F::neg(p)), q(sp)), bound));
      out.add(F::implies(F::oplus(q(p), q(F::neg(sp))), bound));
    }
  }
  for (const auto& a : cfg.t5_formulas)
    for (const auto& s : cfg.t5_values) out.add(F::implies(F::oplus(q(a), eighth), F::constant(s)));
  return out;
}

namespace {

// X <-> X, i.e. (X -> X) * (X -> X), from the identity and L6.
std::size_t self_equivalence(ProofBuilder& pb, const Formula& x) {
  using F = Formula;
  const F id = F::implies(x, x);
  const F both = F::odot(id, id);
  // (id * id -> both) -> (id -> (id -> both))
  std::size_t l6 = pb.lemma(LemmaId::L6, {{{"A", id}, {"B", id}, {"C", both}}, std::nullopt});
  std::size_t curried = pb.mp(pb.identity(both), l6);
  std::size_t i = pb.identity(x);
  return pb.mp(i, pb.mp(i, curried));
}

Substitution translate_subst(const Substitution& s) {
  Substitution out;
  out.op = s.op;
  for (const auto& [k, v] : s.bindings) out.bindings.emplace(k, pmv_translate(v));
  return out;
}

}  // namespace

TranslatedProof translate_proof(const Theory& t, const Proof& proof, const Theory& tq5, const CheckOptions& opt) {
  if (CheckResult r = check_derivation(t, proof, opt); !r)
    throw std::invalid_argument("input proof rejected at step " + std::to_string(r.step) + ": " + r.reason);
  TranslatedProof out;
  out.theory = translate_theory(t);
  for (const auto& f : tq5) out.theory.add(f);
  ProofBuilder pb;
  std::vector<std::size_t> map;
  for (std::size_t i = 0; i < proof.size(); ++i) {
    const ProofStep& st = proof.steps[i];
    const Justification& j = st.why;
    const Formula tf = pmv_translate(st.formula);
    std::size_t idx = 0;
    switch (j.type) {
      case Justification::Type::Member:
        idx = pb.member(out.theory, out.theory.index_of(tf));
        break;
      case Justification::Type::MP:
        idx = pb.mp(map[j.minor], map[j.major]);
        break;
      case Justification::Type::Lemma: {
        auto s = j.subst ? translate_subst(*j.subst) : std::optional<Substitution>{};
        idx = pb.add(tf, Justification::by_lemma(j.lemma, s));
        break;
      }
      case Justification::Type::Axiom:
        switch (j.axiom) {
          case AxiomId::Q1:
          case AxiomId::Q2:
          case AxiomId::Q3:
          case AxiomId::Q4:
            // both sides translate to the same formula
            if (tf.kind() != Kind::Odot || !(tf.left().left() == tf.left().right()))
              throw std::logic_error("translated square-root axiom is not X <-> X");
            idx = self_equivalence(pb, tf.left().left());
            break;
          case AxiomId::Q5:
            if (!out.theory.contains(tf))
              throw std::invalid_argument("step " + std::to_string(i + 1) + ": '" + print_formula(tf) +
                                          "' is not in the bounding theory");
            idx = pb.member(out.theory, out.theory.index_of(tf));
            break;
          default: {
            auto s = j.subst ? translate_subst(*j.subst) : std::optional<Substitution>{};
            idx = pb.add(tf, Justification::by_axiom(j.axiom, s));
          }
        }
        break;
    }
    map.push_back(idx);
  }
  out.goal = pmv_translate(proof.conclusion());
  out.proof = pb.take();
  // the final step may have been deduplicated onto an earlier one
  if (map.back() + 1 != out.proof.size()) out.proof.steps.push_back(out.proof.steps[map.back()]);
  return out;
}

bool is_pmv_proof(const Proof& p) {
  for (const auto& st : p.steps) {
    if (!is_pmv_fragment(st.formula)) return false;
    if (st.why.type == Justification::Type::Axiom && st.why.axiom >= AxiomId::Q1) return false;
  }
  return true;
}

}  // namespace iqcl
