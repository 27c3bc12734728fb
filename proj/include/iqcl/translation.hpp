#pragma once

// Translation into the fragment where sqrt applies only to atoms, and the
// bounding theory that stands in for Q5 there.

#include <vector>

#include "iqcl/calculus.hpp"

namespace iqcl {

/// Pushes sqrt down to atoms: sqrt !a -> !sqrt a, sqrt sqrt a -> !a, and
/// sqrt of a binary formula or a constant becomes 1/2.
Formula pmv_translate(const Formula& f);
Theory translate_theory(const Theory& t);

struct Tq5Config {
  std::vector<std::string> atoms;
  /// Values for the four per-atom groups; each must pass s_above_q5_bound.
  std::vector<SConstant> bound_values;
  /// Values for the (1/4 . a) + 1/8 group; each must be >= 3/8.
  std::vector<SConstant> t5_values;
  std::vector<Formula> t5_formulas;

  /// Bound value: the least 8-bit dyadic above the bound. T5 value 3/8 over
  /// every atom and sqrt atom of `goal`.
  static Tq5Config for_formula(const Formula& goal);
};

/// Throws std::invalid_argument when a value fails its bound test.
Theory generate_tq5(const Tq5Config& cfg);

struct TranslatedProof {
  Theory theory;  // translated theory followed by the bounding members
  Proof proof;
  Formula goal;
};

/// Rewrites a checked proof into the fragment. Steps using W/E/P/S and the
/// lemmas translate schema-wise; Q1-Q4 become derivations of X <-> X; Q5
/// steps must translate to members of `tq5`. Throws std::invalid_argument
/// on an unsupported Q5 step or an invalid input proof.
TranslatedProof translate_proof(const Theory& t, const Proof& proof, const Theory& tq5,
                                const CheckOptions& opt = {});

/// True iff every step is in the fragment and no Q axiom is used.
bool is_pmv_proof(const Proof& p);

}  // namespace iqcl
