#pragma once

// Reduced-model semantics. Every formula denotes a pair (u, w): u is its
// probability value and w the probability value of its square root.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "iqcl/formula.hpp"
#include "iqcl/qmix.hpp"
#include "iqcl/theory.hpp"

namespace iqcl {

struct ProbPair {
  Rational u;
  Rational w;
  friend bool operator==(const ProbPair&, const ProbPair&) = default;
};

class UnassignedAtom : public std::out_of_range {
 public:
  explicit UnassignedAtom(const std::string& atom)
      : std::out_of_range("atom '" + atom + "' has no assignment"), atom_(atom) {}
  const std::string& atom() const { return atom_; }

 private:
  std::string atom_;
};

/// True iff (1-2u)^2 + (1-2w)^2 <= 1.
bool in_disk(const Rational& u, const Rational& w);

/// Atom -> (u, w), each pair inside the disk.
class ReducedModel {
 public:
  /// Throws std::invalid_argument if (u, w) is outside [0,1]^2 or the disk.
  void set(const std::string& atom, Rational u, Rational w);
  /// Like set, but accepts points outside the disk by at most `tol` in the
  /// squared radius. Used for values read from text.
  void set_approx(const std::string& atom, Rational u, Rational w, double tol);

  bool has(const std::string& atom) const { return pairs_.count(atom) > 0; }
  const ProbPair& at(const std::string& atom) const;
  const std::map<std::string, ProbPair>& pairs() const { return pairs_; }

  friend bool operator==(const ReducedModel&, const ReducedModel&) = default;

 private:
  std::map<std::string, ProbPair> pairs_;
};

ProbPair eval_prob(const ReducedModel& m, const Formula& f);

/// Folds the gate operations over Bloch vectors; the numeric counterpart
/// of eval_prob.
BlochQmix eval_bloch(const std::map<std::string, BlochQmix>& assignment, const Formula& f);

/// Bloch vector (0, 1-2w, 1-2u) for each atom.
std::map<std::string, BlochQmix> bloch_assignment(const ReducedModel& m);
/// Drops r1 and keeps ((1-r3)/2, (1-r2)/2), read exactly from the doubles.
ReducedModel reduce_model(const std::map<std::string, BlochQmix>& assignment);

/// Every member evaluates to at least 1 - tol (exactly 1 when tol = 0).
bool is_model_of(const ReducedModel& m, const Theory& t, const Rational& tol = 0);

/// Lines `atom u w` with fractions or decimals; `#` comments.
/// Throws std::invalid_argument with a line number on bad input.
ReducedModel parse_model(std::string_view text, double disk_tol = 1e-9);
ReducedModel load_model(const std::string& path, double disk_tol = 1e-9);
std::string print_model(const ReducedModel& m);

/// Postfix program evaluating a fixed formula on double pairs.
class CompiledFormula {
 public:
  /// Atoms are numbered by their position in `atom_order`.
  CompiledFormula(const Formula& f, const std::vector<std::string>& atom_order);
  /// u[i], w[i] belong to atom i. Returns (u, w) of the formula.
  std::pair<double, double> eval(const double* u, const double* w) const;

 private:
  struct Instr {
    Kind kind;
    int atom = -1;
    double value = 0;
  };
  std::vector<Instr> code_;
  std::size_t depth_ = 0;
};

}  // namespace iqcl
