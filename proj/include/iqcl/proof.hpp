#pragma once

// Hilbert-style proofs and their line-oriented text format:
//
//   1. p -> (q -> p)          :: axiom W1 [A := p; B := q]
//   2. p                      :: hyp 1
//   3. q -> p                 :: mp 2 1
//
// `hyp k` names the k-th theory member, `mp i j` takes phi from step i and
// phi -> psi from step j. Substitutions are optional.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iqcl/formula.hpp"

namespace iqcl {

enum class AxiomId {
  W1, W2, W3, W4,
  E1, E2, E3, E4, E5, E6,
  P1, P2, P3, P4, P5,
  S1, S2, S3,
  Q1, Q2, Q3, Q4, Q5,
};
inline constexpr int kAxiomCount = 23;

/// Derived schemata accepted as extra justifications (see CheckOptions).
enum class LemmaId { L2, L3, L4, L5, L6, L7, L8 };
inline constexpr int kLemmaCount = 7;

std::string to_string(AxiomId id);
std::string to_string(LemmaId id);
std::optional<AxiomId> parse_axiom_id(std::string_view s);
std::optional<LemmaId> parse_lemma_id(std::string_view s);

/// Metavariable bindings. A, B, C range over formulas; R, T, S, V over
/// constants; `op` picks the connective of Q3.
struct Substitution {
  std::map<std::string, Formula> bindings;
  std::optional<Kind> op;
  friend bool operator==(const Substitution&, const Substitution&) = default;
};

struct Justification {
  enum class Type { Axiom, Lemma, Member, MP };
  Type type = Type::Member;
  AxiomId axiom = AxiomId::W1;
  LemmaId lemma = LemmaId::L2;
  std::optional<Substitution> subst;
  std::size_t member = 0;  // zero-based theory index
  std::size_t minor = 0;   // zero-based step holding phi
  std::size_t major = 0;   // zero-based step holding phi -> psi

  static Justification by_axiom(AxiomId id, std::optional<Substitution> s = std::nullopt);
  static Justification by_lemma(LemmaId id, std::optional<Substitution> s = std::nullopt);
  static Justification by_member(std::size_t index);
  static Justification by_mp(std::size_t minor, std::size_t major);
};

struct ProofStep {
  Formula formula;
  Justification why;
};

struct Proof {
  std::vector<ProofStep> steps;
  bool empty() const { return steps.empty(); }
  std::size_t size() const { return steps.size(); }
  const Formula& conclusion() const { return steps.back().formula; }
};

/// Throws ParseError with the line and column of the offending text.
Proof parse_proof(std::string_view text);
Proof load_proof(const std::string& path);
std::string print_proof(const Proof& p);
std::string print_substitution(const Substitution& s);

}  // namespace iqcl
