#pragma once

// Immutable formula trees over atoms, dyadic constants, the unaries
// negation and sqrt, and six primitive binary connectives.

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "iqcl/algebra.hpp"

namespace iqcl {

enum class Kind {
  Atom,
  Const,
  Neg,
  Sqrt,
  Oplus,
  Odot,
  Implies,
  Product,
  Meet,
  Join,
  Meta,  // schema metavariable, never produced by the surface parser
};

inline bool is_binary(Kind k) { return k >= Kind::Oplus && k <= Kind::Join; }
inline bool is_unary(Kind k) { return k == Kind::Neg || k == Kind::Sqrt; }
inline bool is_leaf(Kind k) { return k == Kind::Atom || k == Kind::Const || k == Kind::Meta; }

inline constexpr Kind kBinaryKinds[] = {Kind::Oplus,   Kind::Odot, Kind::Implies,
                                        Kind::Product, Kind::Meet, Kind::Join};

class Formula {
 public:
  /// Default is the constant bot.
  Formula();

  static Formula atom(std::string name);
  static Formula meta(std::string name);
  static Formula constant(SConstant value);
  static Formula neg(Formula a);
  static Formula sqrt(Formula a);
  static Formula binary(Kind op, Formula a, Formula b);
  static Formula oplus(Formula a, Formula b) { return binary(Kind::Oplus, std::move(a), std::move(b)); }
  static Formula odot(Formula a, Formula b) { return binary(Kind::Odot, std::move(a), std::move(b)); }
  static Formula implies(Formula a, Formula b) { return binary(Kind::Implies, std::move(a), std::move(b)); }
  static Formula product(Formula a, Formula b) { return binary(Kind::Product, std::move(a), std::move(b)); }
  static Formula meet(Formula a, Formula b) { return binary(Kind::Meet, std::move(a), std::move(b)); }
  static Formula join(Formula a, Formula b) { return binary(Kind::Join, std::move(a), std::move(b)); }
  /// (a -> b) * (b -> a)
  static Formula equiv(const Formula& a, const Formula& b);

  static Formula bot() { return constant(SConstant::bottom()); }
  static Formula top() { return constant(SConstant::top()); }
  static Formula half() { return constant(SConstant::half()); }

  Kind kind() const { return node_->kind; }
  /// Atom or metavariable name.
  const std::string& name() const { return node_->name; }
  const SConstant& value() const { return node_->value; }
  const Formula& left() const { return node_->children[0]; }
  const Formula& right() const { return node_->children[1]; }
  /// Operand of a unary node.
  const Formula& operand() const { return node_->children[0]; }
  std::size_t hash() const { return node_->hash; }
  /// Number of connective occurrences.
  std::size_t complexity() const { return node_->complexity; }

  friend bool operator==(const Formula& a, const Formula& b);
  /// A total order, used for deterministic sets. Not a semantic order.
  friend bool operator<(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;

  struct Node {
    Kind kind = Kind::Const;
    std::string name;
    SConstant value;
    std::vector<Formula> children;
    std::size_t hash = 0;
    std::size_t complexity = 0;
  };
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

std::size_t complexity(const Formula& f);
std::set<std::string> atoms(const Formula& f);
/// True iff every sqrt node wraps an atom.
bool is_pmv_fragment(const Formula& f);
bool has_meta(const Formula& f);

/// alpha^n = ((alpha * alpha) * ...) * alpha, left nested; n >= 1.
Formula power(const Formula& alpha, unsigned n);

}  // namespace iqcl
