#pragma once

// Numeric minimisation of probability values over reduced models subject
// to a theory: relevance degrees, tautology checks and model sampling.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iqcl/semantics.hpp"

namespace iqcl {

struct SearchOptions {
  double grid = 1.0 / 32;
  double tol = 1e-6;
  /// Maximum number of problem evaluations (objective plus constraints).
  std::uint64_t budget = 100000;
  std::uint64_t seed = 0;
  int boundary_samples = 64;
  int local_starts = 8;
};

enum class SearchStatus { Feasible, Infeasible, ToleranceLimited };
std::string to_string(SearchStatus s);

struct RelevanceResult {
  /// Best value found; the true infimum lies in [value - tol, value + tol]
  /// up to global-search incompleteness.
  double value = 1;
  SearchStatus status = SearchStatus::Infeasible;
  /// Exact value when the formula has no atoms.
  std::optional<Rational> exact;
  std::optional<ReducedModel> witness;
  /// Exact value of the formula at the witness.
  std::optional<Rational> witness_value;
  double residual = 1;
  std::uint64_t evaluations = 0;
  double lower() const { return value; }
  double upper(double tol) const { return value + tol; }
};

RelevanceResult relevance_degree(const Theory& t, const Formula& alpha, const SearchOptions& opt = {});

struct TautologyVerdict {
  bool tautology = true;  // no counterexample within budget
  std::optional<ReducedModel> counterexample;
  std::optional<Rational> counterexample_value;
  double min_found = 1;
};

TautologyVerdict check_tautology(const Formula& f, const SearchOptions& opt = {});
/// Checks alpha -> beta.
TautologyVerdict consequence(const Formula& alpha, const Formula& beta, const SearchOptions& opt = {});

/// Models of `t` with exactly verified dyadic coordinates over the atoms of
/// `t` plus `extra_atoms`. May return fewer than `count` when the search
/// cannot produce exact models.
std::vector<ReducedModel> sample_models(const Theory& t, std::size_t count, std::uint64_t seed,
                                        const std::set<std::string>& extra_atoms = {});

/// Rounds each coordinate to the nearest multiple of 2^-bits; nullopt when
/// the rounded pair leaves the disk.
std::optional<ReducedModel> snap_model(const std::vector<std::string>& atoms, const std::vector<double>& u,
                        const std::vector<double>& w, unsigned bits);

}  // namespace iqcl
