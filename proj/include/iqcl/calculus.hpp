#pragma once

// Axiom recognition, proof checking, proof construction and the
// deduction transform.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <variant>

#include "iqcl/proof.hpp"
#include "iqcl/search.hpp"
#include "iqcl/theory.hpp"

namespace iqcl {

/// Schema pattern with `$A`-style metavariables. For Q3, `op` selects the
/// connective under the square root.
const Formula& axiom_pattern(AxiomId id, Kind op = Kind::Oplus);
const Formula& lemma_pattern(LemmaId id);

struct AxiomMatch {
  AxiomId id;
  Substitution subst;
};
struct LemmaMatch {
  LemmaId id;
  Substitution subst;
};

/// All schemata `f` is an instance of, side conditions included.
std::vector<AxiomMatch> match_axiom(const Formula& f);
std::vector<LemmaMatch> match_lemma(const Formula& f);

/// Throws std::invalid_argument when a binding is missing or a side
/// condition fails.
Formula instantiate_axiom(AxiomId id, const Substitution& s);
Formula instantiate_lemma(LemmaId id, const Substitution& s);

struct CheckOptions {
  /// Accept `lemma` justifications. The lemma schemata are tautologies but
  /// not all of them are derivable from the 23 axioms alone.
  bool allow_lemmas = true;
  /// Re-evaluate every step under sampled models of the theory.
  bool semantic_sanity = false;
  std::size_t sanity_models = 20;
  std::uint64_t seed = 0;
};

enum class CheckError {
  None,
  EmptyProof,
  BadAxiom,
  BadLemma,
  LemmaDisabled,
  BadMember,
  DanglingReference,
  MpShapeMismatch,
  GoalMismatch,
  SemanticViolation,
};
std::string to_string(CheckError e);

struct CheckResult {
  CheckError error = CheckError::None;
  std::size_t step = 0;  // one-based; 0 when not tied to a step
  std::string reason;
  bool ok() const { return error == CheckError::None; }
  explicit operator bool() const { return ok(); }
};

/// Validates every step; the goal check is skipped when `goal` is null.
CheckResult check_derivation(const Theory& t, const Proof& p, const CheckOptions& opt = {});
CheckResult check_proof(const Theory& t, const Proof& p, const Formula& goal, const CheckOptions& opt = {});

/// Derivation shape for condensed detachment: a leaf names an axiom, a
/// lemma or an existing step; an inner node applies modus ponens with
/// `major` proving phi -> psi and `minor` proving phi.
struct DTree {
  std::variant<AxiomId, LemmaId, std::size_t> leaf;
  std::shared_ptr<const DTree> major, minor;

  bool is_leaf() const { return !major; }
  static DTree ax(AxiomId id) { return DTree{id, nullptr, nullptr}; }
  static DTree lem(LemmaId id) { return DTree{id, nullptr, nullptr}; }
  static DTree step(std::size_t i) { return DTree{i, nullptr, nullptr}; }
  static DTree d(DTree major, DTree minor);
};

/// a -> a
DTree identity_tree();
/// (a -> (b -> c)) -> (b -> (a -> c))
DTree exchange_tree();
/// (a -> b) -> ((c -> a) -> (c -> b))
DTree composition_tree();

/// Appends steps, reusing any step whose formula is already present.
class ProofBuilder {
 public:
  std::size_t add(const Formula& f, const Justification& why);
  std::size_t axiom(AxiomId id, const Substitution& s);
  std::size_t lemma(LemmaId id, const Substitution& s);
  std::size_t member(const Theory& t, std::size_t index);
  /// From minor = phi and major = phi -> psi.
  std::size_t mp(std::size_t minor, std::size_t major);
  /// From phi -> psi and psi -> chi to phi -> chi.
  std::size_t hs(std::size_t first, std::size_t second);
  /// Proves `target` along `tree`, solving for every schema instance by
  /// unification. Throws std::invalid_argument if the shapes do not fit.
  std::size_t theorem(const Formula& target, const DTree& tree);

  std::size_t identity(const Formula& a);
  std::size_t exchange(const Formula& a, const Formula& b, const Formula& c);
  std::size_t composition(const Formula& a, const Formula& b, const Formula& c);

  const Formula& formula(std::size_t i) const { return proof_.steps.at(i).formula; }
  std::size_t size() const { return proof_.steps.size(); }
  Proof proof() const { return proof_; }
  Proof take() { return std::move(proof_); }

 private:
  Proof proof_;
  std::unordered_map<Formula, std::size_t, FormulaHash> index_;
};

/// Proof of `top` from no premises.
Proof prove_top();

struct DeductionResult {
  unsigned n = 1;
  Proof proof;  // proves power(alpha, n) -> beta from t
};

/// `proof` derives beta from t with alpha appended. Any member step whose
/// formula is alpha is treated as the hypothesis. Throws
/// std::invalid_argument when the input does not check.
DeductionResult deduction_transform(const Theory& t, const Formula& alpha, const Proof& proof,
                                    const CheckOptions& opt = {});

struct ConsistencyResult {
  bool model_found = false;
  std::optional<ReducedModel> model;
};
ConsistencyResult consistency_probe(const Theory& t, const SearchOptions& opt = {});

class CertificateError : public std::invalid_argument {
 public:
  CertificateError(std::size_t index, const std::string& why)
      : std::invalid_argument("certificate " + std::to_string(index + 1) + ": " + why), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

struct ProofDegreeReport {
  Rational lower_bound{0};
  std::vector<Rational> certified;
  RelevanceResult numeric;
  /// Some certified r exceeds the numeric value by more than tol.
  bool defect = false;
};

/// Each certificate must prove `r -> alpha` from t for a constant r.
ProofDegreeReport proof_degree(const Theory& t, const Formula& alpha, const std::vector<Proof>& certificates,
                               const SearchOptions& opt = {}, const CheckOptions& check = {});

struct Support {
  Theory theory;
  Proof proof;  // member indices renumbered into `theory`
};
/// Throws std::invalid_argument if the proof does not check against t.
Support finite_support(const Theory& t, const Proof& proof, const CheckOptions& opt = {});

}  // namespace iqcl
