#include "iqcl/calculus.hpp"
#include "iqcl/parser.hpp"

namespace iqcl {

namespace {

// Every intermediate result has the form C_k(phi) = alpha -> (... -> phi)
// with k leading copies of alpha.
class Transform {
 public:
  Transform(const Theory& t, const Formula& alpha) : t_(t), alpha_(alpha) {}

  Formula curried(unsigned k, const Formula& phi) const {
    return k == 0 ? phi : Formula::implies(alpha_, curried(k - 1, phi));
  }

  // (phi -> psi) -> (C_k phi -> C_k psi), k >= 1
  std::size_t lift_law(unsigned k, const Formula& phi, const Formula& psi) {
    std::size_t g = pb_.composition(phi, psi, alpha_);
    for (unsigned m = 2; m <= k; ++m)
      g = pb_.hs(g, pb_.composition(curried(m - 1, phi), curried(m - 1, psi), alpha_));
    return g;
  }

  // From a step proving A -> B to C_k A -> C_k B.
  std::size_t lift(std::size_t imp, unsigned k) {
    for (unsigned m = 1; m <= k; ++m) {
      const Formula f = pb_.formula(imp);
      imp = pb_.mp(imp, pb_.composition(f.left(), f.right(), alpha_));
    }
    return imp;
  }

  struct Item {
    std::size_t step;
    unsigned k;
  };

  Item step(const Proof& p, std::size_t i, const std::vector<Item>& done) {
    const ProofStep& st = p.steps[i];
    const Justification& j = st.why;
    switch (j.type) {
      case Justification::Type::Axiom:
      case Justification::Type::Lemma:
        return {pb_.add(st.formula, j), 0};
      case Justification::Type::Member:
        if (st.formula == alpha_) return {pb_.identity(alpha_), 1};
        return {pb_.member(t_, t_.index_of(st.formula)), 0};
      case Justification::Type::MP:
        break;
    }
    const Item a = done[j.minor], b = done[j.major];
    const Formula& phi = p.steps[j.minor].formula;
    const Formula& psi = st.formula;
    const Formula imp = Formula::implies(phi, psi);
    if (a.k == 0 && b.k == 0) return {pb_.mp(a.step, b.step), 0};
    // x : (phi -> psi) -> C_{a.k} psi
    std::size_t x;
    if (a.k == 0) {
      std::size_t ex = pb_.exchange(imp, phi, psi);
      x = pb_.mp(a.step, pb_.mp(pb_.identity(imp), ex));
    } else {
      std::size_t g = lift_law(a.k, phi, psi);
      std::size_t ex = pb_.exchange(imp, curried(a.k, phi), curried(a.k, psi));
      x = pb_.mp(a.step, pb_.mp(g, ex));
    }
    return {pb_.mp(b.step, lift(x, b.k)), a.k + b.k};
  }

  DeductionResult run(const Proof& p) {
    std::vector<Item> done;
    for (std::size_t i = 0; i < p.size(); ++i) done.push_back(step(p, i, done));
    Item last = done.back();
    const Formula& beta = p.conclusion();
    if (last.k == 0) {
      std::size_t w1 = pb_.axiom(AxiomId::W1, {{{"A", beta}, {"B", alpha_}}, std::nullopt});
      last = {pb_.mp(last.step, w1), 1};
    }
    // alpha^m -> C_{k-m} beta, uncurried one alpha at a time
    for (unsigned m = 1; m < last.k; ++m) {
      Substitution s{{{"A", power(alpha_, m)}, {"B", alpha_}, {"C", curried(last.k - m - 1, beta)}}, std::nullopt};
      std::size_t l5 = pb_.lemma(LemmaId::L5, s);
      last.step = pb_.mp(last.step, l5);
    }
    Proof out = pb_.take();
    if (last.step + 1 != out.size()) out.steps.push_back(out.steps[last.step]);
    return {last.k, std::move(out)};
  }

 private:
  const Theory& t_;
  Formula alpha_;
  ProofBuilder pb_;
};

}  // namespace

DeductionResult deduction_transform(const Theory& t, const Formula& alpha, const Proof& proof,
                                    const CheckOptions& opt) {
  Theory extended = t;
  extended.add(alpha);
  if (CheckResult r = check_derivation(extended, proof, opt); !r)
    throw std::invalid_argument("input proof rejected at step " + std::to_string(r.step) + ": " + r.reason);
  return Transform(t, alpha).run(proof);
}

}  // namespace iqcl
