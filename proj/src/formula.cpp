#include "iqcl/formula.hpp"

#include <functional>
#include <stdexcept>

namespace iqcl {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

int compare(const Formula& a, const Formula& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case Kind::Atom:
    case Kind::Meta:
      return a.name().compare(b.name());
    case Kind::Const:
      return a.value() == b.value() ? 0 : (a.value() < b.value() ? -1 : 1);
    case Kind::Neg:
    case Kind::Sqrt:
      return compare(a.operand(), b.operand());
    default:
      if (int c = compare(a.left(), b.left())) return c;
      return compare(a.right(), b.right());
  }
}

}  // namespace

Formula::Formula() : Formula(constant(SConstant::bottom())) {}

Formula Formula::atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty atom name");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->hash = mix(1, std::hash<std::string>{}(name));
  n->name = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::meta(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Meta;
  n->hash = mix(11, std::hash<std::string>{}(name));
  n->name = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::constant(SConstant value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->hash = mix(mix(2, std::hash<std::string>{}(value.numerator().get_str())), value.exponent());
  n->value = std::move(value);
  return Formula(std::move(n));
}

Formula Formula::neg(Formula a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Neg;
  n->hash = mix(3, a.hash());
  n->complexity = a.complexity() + 1;
  n->children = {std::move(a)};
  return Formula(std::move(n));
}

Formula Formula::sqrt(Formula a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sqrt;
  n->hash = mix(4, a.hash());
  n->complexity = a.complexity() + 1;
  n->children = {std::move(a)};
  return Formula(std::move(n));
}

Formula Formula::binary(Kind op, Formula a, Formula b) {
  if (!is_binary(op)) throw std::invalid_argument("not a binary connective");
  auto n = std::make_shared<Node>();
  n->kind = op;
  n->hash = mix(mix(static_cast<std::size_t>(op) + 5, a.hash()), b.hash());
  n->complexity = a.complexity() + b.complexity() + 1;
  n->children = {std::move(a), std::move(b)};
  return Formula(std::move(n));
}

Formula Formula::equiv(const Formula& a, const Formula& b) {
  return odot(implies(a, b), implies(b, a));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.complexity() != b.complexity()) return false;
  return compare(a, b) == 0;
}

bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

std::size_t complexity(const Formula& f) { return f.complexity(); }

namespace {
void collect_atoms(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Kind::Atom:
      out.insert(f.name());
      return;
    case Kind::Const:
    case Kind::Meta:
      return;
    case Kind::Neg:
    case Kind::Sqrt:
      collect_atoms(f.operand(), out);
      return;
    default:
      collect_atoms(f.left(), out);
      collect_atoms(f.right(), out);
  }
}
}  // namespace

std::set<std::string> atoms(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

bool is_pmv_fragment(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Const:
    case Kind::Meta:
      return true;
    case Kind::Sqrt:
      return f.operand().kind() == Kind::Atom;
    case Kind::Neg:
      return is_pmv_fragment(f.operand());
    default:
      return is_pmv_fragment(f.left()) && is_pmv_fragment(f.right());
  }
}

bool has_meta(const Formula& f) {
  if (f.kind() == Kind::Meta) return true;
  if (is_unary(f.kind())) return has_meta(f.operand());
  if (is_binary(f.kind())) return has_meta(f.left()) || has_meta(f.right());
  return false;
}

Formula power(const Formula& alpha, unsigned n) {
  if (n == 0) throw std::invalid_argument("power needs n >= 1");
  Formula out = alpha;
  for (unsigned k = 1; k < n; ++k) out = Formula::odot(out, alpha);
  return out;
}

}  // namespace iqcl
