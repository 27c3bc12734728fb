#include "iqcl/semantics.hpp"

#include <cctype>
#include <sstream>

#include "iqcl/parser.hpp"

namespace iqcl {

bool in_disk(const Rational& u, const Rational& w) {
  Rational a = 1 - 2 * u, b = 1 - 2 * w;
  return a * a + b * b <= 1;
}

void ReducedModel::set(const std::string& atom, Rational u, Rational w) {
  u.canonicalize();
  w.canonicalize();
  if (!in_disk(u, w))
    throw std::invalid_argument("pair (" + to_string(u) + ", " + to_string(w) + ") for '" + atom +
                                "' is outside the disk");
  pairs_[atom] = {std::move(u), std::move(w)};
}

void ReducedModel::set_approx(const std::string& atom, Rational u, Rational w, double tol) {
  u.canonicalize();
  w.canonicalize();
  Rational a = 1 - 2 * u, b = 1 - 2 * w;
  if (u < 0 || u > 1 || w < 0 || w > 1 || to_double(a * a + b * b) > 1 + tol)
    throw std::invalid_argument("pair (" + to_string(u) + ", " + to_string(w) + ") for '" + atom +
                                "' is outside the disk");
  pairs_[atom] = {std::move(u), std::move(w)};
}

const ProbPair& ReducedModel::at(const std::string& atom) const {
  auto it = pairs_.find(atom);
  if (it == pairs_.end()) throw UnassignedAtom(atom);
  return it->second;
}

namespace {

template <class T>
T binary_value(Kind k, const T& x, const T& y) {
  switch (k) {
    case Kind::Oplus: return mv::oplus(x, y);
    case Kind::Odot: return mv::odot(x, y);
    case Kind::Implies: return mv::implies(x, y);
    case Kind::Product: return mv::product(x, y);
    case Kind::Meet: return mv::meet(x, y);
    case Kind::Join: return mv::join(x, y);
    default: throw std::logic_error("not a binary connective");
  }
}

}  // namespace

ProbPair eval_prob(const ReducedModel& m, const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
      return m.at(f.name());
    case Kind::Const:
      return {f.value().value(), Rational(1, 2)};
    case Kind::Meta:
      throw std::invalid_argument("cannot evaluate a schema metavariable");
    case Kind::Neg: {
      ProbPair p = eval_prob(m, f.operand());
      return {1 - p.u, 1 - p.w};
    }
    case Kind::Sqrt: {
      ProbPair p = eval_prob(m, f.operand());
      return {p.w, 1 - p.u};
    }
    default: {
      Rational x = eval_prob(m, f.left()).u;
      Rational y = eval_prob(m, f.right()).u;
      return {binary_value(f.kind(), x, y), Rational(1, 2)};
    }
  }
}

BlochQmix eval_bloch(const std::map<std::string, BlochQmix>& assignment, const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom: {
      auto it = assignment.find(f.name());
      if (it == assignment.end()) throw UnassignedAtom(f.name());
      return it->second;
    }
    case Kind::Const:
      return DiagonalQmix(to_double(f.value().value())).bloch();
    case Kind::Meta:
      throw std::invalid_argument("cannot evaluate a schema metavariable");
    case Kind::Neg:
      return gate_not(eval_bloch(assignment, f.operand()));
    case Kind::Sqrt:
      return gate_sqrt_not(eval_bloch(assignment, f.operand()));
    default: {
      BlochQmix a = eval_bloch(assignment, f.left());
      BlochQmix b = eval_bloch(assignment, f.right());
      switch (f.kind()) {
        case Kind::Oplus: return luk_oplus(a, b);
        case Kind::Odot: return q_odot(a, b);
        case Kind::Implies: return q_implies(a, b);
        case Kind::Product: return iand(a, b);
        case Kind::Meet: return q_meet(a, b);
        default: return q_join(a, b);
      }
    }
  }
}

std::map<std::string, BlochQmix> bloch_assignment(const ReducedModel& m) {
  std::map<std::string, BlochQmix> out;
  for (const auto& [atom, p] : m.pairs())
    out.emplace(atom, BlochQmix(0, to_double(1 - 2 * p.w), to_double(1 - 2 * p.u)));
  return out;
}

ReducedModel reduce_model(const std::map<std::string, BlochQmix>& assignment) {
  ReducedModel m;
  for (const auto& [atom, b] : assignment) {
    Rational u = (1 - rational_from_double(b.r3())) / 2;
    Rational w = (1 - rational_from_double(b.r2())) / 2;
    m.set_approx(atom, u, w, 2 * kBallTolerance);
  }
  return m;
}

bool is_model_of(const ReducedModel& m, const Theory& t, const Rational& tol) {
  for (const auto& f : t)
    if (eval_prob(m, f).u < 1 - tol) return false;
  return true;
}

ReducedModel parse_model(std::string_view text, double disk_tol) {
  ReducedModel m;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string atom, u, w, extra;
    if (!(fields >> atom)) continue;
    auto fail = [&](const std::string& why) {
      return std::invalid_argument("model line " + std::to_string(line_no) + ": " + why);
    };
    if (!(fields >> u >> w) || (fields >> extra)) throw fail("expected 'atom u w'");
    if (!(std::isalpha(static_cast<unsigned char>(atom[0])) || atom[0] == '_'))
      throw fail("bad atom name '" + atom + "'");
    try {
      m.set_approx(atom, parse_rational(u), parse_rational(w), disk_tol);
    } catch (const std::invalid_argument& e) {
      throw fail(e.what());
    }
  }
  return m;
}

ReducedModel load_model(const std::string& path, double disk_tol) {
  return parse_model(read_file(path), disk_tol);
}

std::string print_model(const ReducedModel& m) {
  std::string out;
  for (const auto& [atom, p] : m.pairs()) out += atom + " " + to_string(p.u) + " " + to_string(p.w) + "\n";
  return out;
}

CompiledFormula::CompiledFormula(const Formula& f, const std::vector<std::string>& atom_order) {
  std::size_t depth = 0;
  auto emit = [&](auto&& self, const Formula& g) -> void {
    switch (g.kind()) {
      case Kind::Atom: {
        int idx = -1;
        for (std::size_t i = 0; i < atom_order.size(); ++i)
          if (atom_order[i] == g.name()) idx = static_cast<int>(i);
        if (idx < 0) throw UnassignedAtom(g.name());
        code_.push_back({Kind::Atom, idx, 0});
        depth_ = std::max(depth_, ++depth);
        return;
      }
      case Kind::Const:
        code_.push_back({Kind::Const, -1, to_double(g.value().value())});
        depth_ = std::max(depth_, ++depth);
        return;
      case Kind::Meta:
        throw std::invalid_argument("cannot compile a schema metavariable");
      case Kind::Neg:
      case Kind::Sqrt:
        self(self, g.operand());
        code_.push_back({g.kind(), -1, 0});
        return;
      default:
        self(self, g.left());
        self(self, g.right());
        code_.push_back({g.kind(), -1, 0});
        --depth;
    }
  };
  emit(emit, f);
}

std::pair<double, double> CompiledFormula::eval(const double* u, const double* w) const {
  thread_local std::vector<std::pair<double, double>> stack;
  stack.clear();
  stack.reserve(depth_);
  for (const Instr& in : code_) {
    switch (in.kind) {
      case Kind::Atom:
        stack.emplace_back(u[in.atom], w[in.atom]);
        break;
      case Kind::Const:
        stack.emplace_back(in.value, 0.5);
        break;
      case Kind::Neg: {
        auto& top = stack.back();
        top = {1 - top.first, 1 - top.second};
        break;
      }
      case Kind::Sqrt: {
        auto& top = stack.back();
        top = {top.second, 1 - top.first};
        break;
      }
      default: {
        double y = stack.back().first;
        stack.pop_back();
        auto& top = stack.back();
        top = {binary_value(in.kind, top.first, y), 0.5};
      }
    }
  }
  return stack.back();
}

}  // namespace iqcl
