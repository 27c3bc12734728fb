#include "iqcl/calculus.hpp"

#include <array>
#include <functional>

#include "iqcl/parser.hpp"

namespace iqcl {

namespace {

Formula pat(const char* text) {
  ParseOptions opt;
  opt.allow_meta = true;
  return parse_formula(text, opt);
}

const std::array<Formula, kAxiomCount>& axiom_table() {
  static const std::array<Formula, kAxiomCount> table = {
      pat("$A -> ($B -> $A)"),
      pat("($A -> $B) -> (($B -> $C) -> ($A -> $C))"),
      pat("(!$A -> !$B) -> ($B -> $A)"),
      pat("(($A -> $B) -> $B) -> (($B -> $A) -> $A)"),
      pat("$A * $B <-> !(!$A + !$B)"),
      pat("($A -> $B) <-> !($A * !$B)"),
      pat("!$A <-> ($A -> bot)"),
      pat("$A & $B <-> $A * ($A -> $B)"),
      pat("$A | $B <-> (($A -> $B) -> $B)"),
      pat("!bot <-> top"),
      pat("$A . $B -> $B . $A"),
      pat("top . $A <-> $A"),
      pat("$A . $B -> $B"),
      pat("($A . $B) . $C <-> $A . ($B . $C)"),
      pat("$A . ($B * !$C) <-> ($A . $B) * !($A . $C)"),
      pat("$R * $T <-> $V"),
      pat("($R -> $T) <-> $V"),
      pat("$R . $T <-> $V"),
      pat("??$A <-> !$A"),
      pat("?!$A <-> !?$A"),
      pat("?($A + $B) <-> 1/2"),  // replaced per connective in axiom_pattern
      pat("?$S <-> 1/2"),
      pat("1/4 . $A + 1/4 . ?$A -> $S"),
  };
  return table;
}

const std::array<Formula, 6>& q3_table() {
  static const std::array<Formula, 6> table = [] {
    std::array<Formula, 6> t;
    for (int i = 0; i < 6; ++i)
      t[i] = Formula::equiv(Formula::sqrt(Formula::binary(kBinaryKinds[i], Formula::meta("A"), Formula::meta("B"))),
                            Formula::half());
    return t;
  }();
  return table;
}

const std::array<Formula, kLemmaCount>& lemma_table() {
  static const std::array<Formula, kLemmaCount> table = {
      pat("$A * $B -> $A"),
      pat("$A * $B -> $B * $A"),
      pat("$A * ($A -> $B) -> $B * ($B -> $A)"),
      pat("($A -> ($B -> $C)) -> ($A * $B -> $C)"),
      pat("($A * $B -> $C) -> ($A -> ($B -> $C))"),
      pat("(($A -> $B) -> $C) -> ((($B -> $A) -> $C) -> $C)"),
      pat("bot -> $A"),
  };
  return table;
}

bool constant_key(const std::string& k) { return k == "R" || k == "T" || k == "S" || k == "V"; }

bool match(const Formula& p, const Formula& f, std::map<std::string, Formula>& b) {
  switch (p.kind()) {
    case Kind::Meta: {
      if (constant_key(p.name()) && f.kind() != Kind::Const) return false;
      auto [it, fresh] = b.emplace(p.name(), f);
      return fresh || it->second == f;
    }
    case Kind::Atom:
    case Kind::Const:
      return p == f;
    default:
      if (p.kind() != f.kind()) return false;
      if (is_unary(p.kind())) return match(p.operand(), f.operand(), b);
      return match(p.left(), f.left(), b) && match(p.right(), f.right(), b);
  }
}

Formula substitute(const Formula& p, const std::function<Formula(const std::string&)>& lookup) {
  switch (p.kind()) {
    case Kind::Meta:
      return lookup(p.name());
    case Kind::Atom:
    case Kind::Const:
      return p;
    case Kind::Neg:
      return Formula::neg(substitute(p.operand(), lookup));
    case Kind::Sqrt:
      return Formula::sqrt(substitute(p.operand(), lookup));
    default:
      return Formula::binary(p.kind(), substitute(p.left(), lookup), substitute(p.right(), lookup));
  }
}

const SConstant& const_of(const std::map<std::string, Formula>& b, const char* key) {
  return b.at(key).value();
}

bool side_condition(AxiomId id, const std::map<std::string, Formula>& b) {
  auto rational_of = [&](const char* k) { return const_of(b, k).value(); };
  switch (id) {
    case AxiomId::S1: return rational_of("V") == mv::odot(rational_of("R"), rational_of("T"));
    case AxiomId::S2: return rational_of("V") == mv::implies(rational_of("R"), rational_of("T"));
    case AxiomId::S3: return rational_of("V") == mv::product(rational_of("R"), rational_of("T"));
    case AxiomId::Q5: return s_above_q5_bound(const_of(b, "S"));
    default: return true;
  }
}

std::set<std::string> metas(const Formula& p) {
  std::set<std::string> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.kind() == Kind::Meta) out.insert(g.name());
    else if (is_unary(g.kind())) walk(g.operand());
    else if (is_binary(g.kind())) {
      walk(g.left());
      walk(g.right());
    }
  };
  walk(p);
  return out;
}

Formula instantiate(const Formula& pattern, const Substitution& s) {
  std::set<std::string> need = metas(pattern);
  for (const auto& [k, v] : s.bindings) {
    if (!need.count(k)) throw std::invalid_argument("metavariable '" + k + "' does not occur in the schema");
    if (constant_key(k) && v.kind() != Kind::Const)
      throw std::invalid_argument("metavariable '" + k + "' must be a constant");
    if (has_meta(v)) throw std::invalid_argument("binding for '" + k + "' contains a metavariable");
  }
  return substitute(pattern, [&](const std::string& name) {
    auto it = s.bindings.find(name);
    if (it == s.bindings.end()) throw std::invalid_argument("metavariable '" + name + "' is unbound");
    return it->second;
  });
}

}  // namespace

const Formula& axiom_pattern(AxiomId id, Kind op) {
  if (id == AxiomId::Q3) {
    for (int i = 0; i < 6; ++i)
      if (kBinaryKinds[i] == op) return q3_table()[i];
    throw std::invalid_argument("Q3 needs a binary connective");
  }
  return axiom_table()[static_cast<int>(id)];
}

const Formula& lemma_pattern(LemmaId id) { return lemma_table()[static_cast<int>(id)]; }

std::vector<AxiomMatch> match_axiom(const Formula& f) {
  std::vector<AxiomMatch> out;
  for (int i = 0; i < kAxiomCount; ++i) {
    auto id = static_cast<AxiomId>(i);
    if (id == AxiomId::Q3) {
      for (Kind op : kBinaryKinds) {
        std::map<std::string, Formula> b;
        if (match(axiom_pattern(id, op), f, b)) out.push_back({id, {std::move(b), op}});
      }
      continue;
    }
    std::map<std::string, Formula> b;
    if (match(axiom_pattern(id), f, b) && side_condition(id, b)) out.push_back({id, {std::move(b), std::nullopt}});
  }
  return out;
}

std::vector<LemmaMatch> match_lemma(const Formula& f) {
  std::vector<LemmaMatch> out;
  for (int i = 0; i < kLemmaCount; ++i) {
    std::map<std::string, Formula> b;
    if (match(lemma_table()[i], f, b)) out.push_back({static_cast<LemmaId>(i), {std::move(b), std::nullopt}});
  }
  return out;
}

Formula instantiate_axiom(AxiomId id, const Substitution& s) {
  if (id == AxiomId::Q3 && !s.op) throw std::invalid_argument("Q3 needs 'op'");
  if (id != AxiomId::Q3 && s.op) throw std::invalid_argument("'op' only applies to Q3");
  Formula f = instantiate(axiom_pattern(id, s.op.value_or(Kind::Oplus)), s);
  if (!side_condition(id, s.bindings))
    throw std::invalid_argument("side condition of " + to_string(id) + " fails");
  return f;
}

Formula instantiate_lemma(LemmaId id, const Substitution& s) {
  if (s.op) throw std::invalid_argument("'op' only applies to Q3");
  return instantiate(lemma_pattern(id), s);
}

std::string to_string(CheckError e) {
  switch (e) {
    case CheckError::None: return "ok";
    case CheckError::EmptyProof: return "empty proof";
    case CheckError::BadAxiom: return "bad axiom claim";
    case CheckError::BadLemma: return "bad lemma claim";
    case CheckError::LemmaDisabled: return "lemma justifications disabled";
    case CheckError::BadMember: return "bad theory member";
    case CheckError::DanglingReference: return "dangling MP reference";
    case CheckError::MpShapeMismatch: return "MP shape mismatch";
    case CheckError::GoalMismatch: return "goal mismatch";
    default: return "semantic violation";
  }
}

namespace {

CheckResult fail(CheckError e, std::size_t step, std::string why) { return {e, step, std::move(why)}; }

CheckResult check_step(const Theory& t, const Proof& p, std::size_t i, const CheckOptions& opt) {
  const ProofStep& st = p.steps[i];
  const Justification& j = st.why;
  const std::size_t n = i + 1;
  if (has_meta(st.formula)) return fail(CheckError::BadAxiom, n, "formula contains a metavariable");
  switch (j.type) {
    case Justification::Type::Axiom: {
      if (j.subst) {
        try {
          if (instantiate_axiom(j.axiom, *j.subst) == st.formula) return {};
          return fail(CheckError::BadAxiom, n, "substitution does not produce this formula");
        } catch (const std::invalid_argument& e) {
          return fail(CheckError::BadAxiom, n, e.what());
        }
      }
      for (const auto& m : match_axiom(st.formula))
        if (m.id == j.axiom) return {};
      return fail(CheckError::BadAxiom, n, "not an instance of " + to_string(j.axiom));
    }
    case Justification::Type::Lemma: {
      if (!opt.allow_lemmas) return fail(CheckError::LemmaDisabled, n, to_string(j.lemma) + " used in strict mode");
      if (j.subst) {
        try {
          if (instantiate_lemma(j.lemma, *j.subst) == st.formula) return {};
          return fail(CheckError::BadLemma, n, "substitution does not produce this formula");
        } catch (const std::invalid_argument& e) {
          return fail(CheckError::BadLemma, n, e.what());
        }
      }
      for (const auto& m : match_lemma(st.formula))
        if (m.id == j.lemma) return {};
      return fail(CheckError::BadLemma, n, "not an instance of " + to_string(j.lemma));
    }
    case Justification::Type::Member:
      if (j.member >= t.size())
        return fail(CheckError::BadMember, n, "theory has no member " + std::to_string(j.member + 1));
      if (!(t[j.member] == st.formula))
        return fail(CheckError::BadMember, n, "formula differs from theory member " + std::to_string(j.member + 1));
      return {};
    case Justification::Type::MP: {
      if (j.minor >= i || j.major >= i)
        return fail(CheckError::DanglingReference, n, "MP must cite earlier steps");
      const Formula& major = p.steps[j.major].formula;
      if (major.kind() != Kind::Implies || !(major.left() == p.steps[j.minor].formula) ||
          !(major.right() == st.formula))
        return fail(CheckError::MpShapeMismatch, n,
                    "step " + std::to_string(j.major + 1) + " is not step " + std::to_string(j.minor + 1) +
                        " -> this formula");
      return {};
    }
  }
  return {};
}

}  // namespace

CheckResult check_derivation(const Theory& t, const Proof& p, const CheckOptions& opt) {
  if (p.empty()) return fail(CheckError::EmptyProof, 0, "proof has no steps");
  for (std::size_t i = 0; i < p.size(); ++i)
    if (CheckResult r = check_step(t, p, i, opt); !r) return r;
  if (opt.semantic_sanity) {
    std::set<std::string> extra;
    for (const auto& st : p.steps) {
      auto a = atoms(st.formula);
      extra.insert(a.begin(), a.end());
    }
    for (const auto& m : sample_models(t, opt.sanity_models, opt.seed, extra))
      for (std::size_t i = 0; i < p.size(); ++i)
        if (eval_prob(m, p.steps[i].formula).u != 1)
          return fail(CheckError::SemanticViolation, i + 1, "evaluates below 1 in a model of the theory");
  }
  return {};
}

CheckResult check_proof(const Theory& t, const Proof& p, const Formula& goal, const CheckOptions& opt) {
  CheckResult r = check_derivation(t, p, opt);
  if (!r) return r;
  if (!(p.conclusion() == goal))
    return fail(CheckError::GoalMismatch, p.size(),
                "proves '" + print_formula(p.conclusion()) + "' instead of '" + print_formula(goal) + "'");
  return {};
}

DTree DTree::d(DTree major, DTree minor) {
  DTree t;
  t.leaf = std::size_t{0};
  t.major = std::make_shared<const DTree>(std::move(major));
  t.minor = std::make_shared<const DTree>(std::move(minor));
  return t;
}

// Found by a condensed-detachment search over W1, W2 and W4.
DTree identity_tree() {
  using T = DTree;
  return T::d(T::d(T::ax(AxiomId::W2), T::ax(AxiomId::W1)),
              T::d(T::ax(AxiomId::W4), T::d(T::ax(AxiomId::W1), T::ax(AxiomId::W1))));
}

DTree exchange_tree() {
  using T = DTree;
  DTree w2w2 = T::d(T::ax(AxiomId::W2), T::ax(AxiomId::W2));
  return T::d(T::d(w2w2, w2w2), T::d(T::d(T::ax(AxiomId::W2), T::ax(AxiomId::W1)), T::ax(AxiomId::W4)));
}

DTree composition_tree() {
  using T = DTree;
  return T::d(T::d(T::ax(AxiomId::W2), T::ax(AxiomId::W1)),
              T::d(T::d(T::ax(AxiomId::W2), T::ax(AxiomId::W4)), T::d(T::ax(AxiomId::W2), T::ax(AxiomId::W2))));
}

std::size_t ProofBuilder::add(const Formula& f, const Justification& why) {
  if (auto it = index_.find(f); it != index_.end()) return it->second;
  proof_.steps.push_back({f, why});
  index_.emplace(f, proof_.steps.size() - 1);
  return proof_.steps.size() - 1;
}

std::size_t ProofBuilder::axiom(AxiomId id, const Substitution& s) {
  return add(instantiate_axiom(id, s), Justification::by_axiom(id, s));
}

std::size_t ProofBuilder::lemma(LemmaId id, const Substitution& s) {
  return add(instantiate_lemma(id, s), Justification::by_lemma(id, s));
}

std::size_t ProofBuilder::member(const Theory& t, std::size_t index) {
  return add(t[index], Justification::by_member(index));
}

std::size_t ProofBuilder::mp(std::size_t minor, std::size_t major) {
  const Formula& imp = formula(major);
  if (imp.kind() != Kind::Implies || !(imp.left() == formula(minor)))
    throw std::invalid_argument("modus ponens shape mismatch: '" + print_formula(formula(minor)) + "' and '" +
                                print_formula(imp) + "'");
  return add(imp.right(), Justification::by_mp(minor, major));
}

std::size_t ProofBuilder::hs(std::size_t first, std::size_t second) {
  const Formula& a = formula(first);
  const Formula& b = formula(second);
  if (a.kind() != Kind::Implies || b.kind() != Kind::Implies || !(a.right() == b.left()))
    throw std::invalid_argument("cannot chain '" + print_formula(a) + "' and '" + print_formula(b) + "'");
  Substitution s{{{"A", a.left()}, {"B", a.right()}, {"C", b.right()}}, std::nullopt};
  std::size_t w2 = axiom(AxiomId::W2, s);
  return mp(second, mp(first, w2));
}

namespace {

// Syntactic unification over formulas whose Meta nodes are variables.
class Unifier {
 public:
  Formula resolve(const Formula& f) const {
    switch (f.kind()) {
      case Kind::Meta: {
        auto it = sigma_.find(f.name());
        return it == sigma_.end() ? f : resolve(it->second);
      }
      case Kind::Atom:
      case Kind::Const:
        return f;
      case Kind::Neg:
        return Formula::neg(resolve(f.operand()));
      case Kind::Sqrt:
        return Formula::sqrt(resolve(f.operand()));
      default:
        return Formula::binary(f.kind(), resolve(f.left()), resolve(f.right()));
    }
  }

  bool unify(const Formula& a0, const Formula& b0) {
    Formula a = walk(a0), b = walk(b0);
    if (a.kind() == Kind::Meta && b.kind() == Kind::Meta && a.name() == b.name()) return true;
    if (a.kind() == Kind::Meta) return bind(a.name(), b);
    if (b.kind() == Kind::Meta) return bind(b.name(), a);
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case Kind::Atom:
      case Kind::Const:
        return a == b;
      case Kind::Neg:
      case Kind::Sqrt:
        return unify(a.operand(), b.operand());
      default:
        return unify(a.left(), b.left()) && unify(a.right(), b.right());
    }
  }

 private:
  Formula walk(Formula f) const {
    while (f.kind() == Kind::Meta) {
      auto it = sigma_.find(f.name());
      if (it == sigma_.end()) break;
      f = it->second;
    }
    return f;
  }

  bool occurs(const std::string& v, const Formula& f) const {
    Formula g = walk(f);
    if (g.kind() == Kind::Meta) return g.name() == v;
    if (is_unary(g.kind())) return occurs(v, g.operand());
    if (is_binary(g.kind())) return occurs(v, g.left()) || occurs(v, g.right());
    return false;
  }

  bool bind(const std::string& v, const Formula& f) {
    if (occurs(v, f)) return false;
    sigma_.emplace(v, f);
    return true;
  }

  std::map<std::string, Formula> sigma_;
};

struct Node {
  const DTree* tree;
  Formula type;
  std::map<std::string, std::string> renaming;  // schema key -> fresh variable
  std::vector<std::size_t> kids;               // major, minor
};

Formula ground(const Formula& f) {
  return substitute(f, [](const std::string&) { return Formula::bot(); });
}

}  // namespace

std::size_t ProofBuilder::theorem(const Formula& target, const DTree& tree) {
  Unifier u;
  std::vector<Node> nodes;
  std::size_t fresh = 0;
  // Builds node types bottom-up; returns the node index.
  std::function<std::size_t(const DTree&)> build = [&](const DTree& t) -> std::size_t {
    Node n{&t, Formula::bot(), {}, {}};
    if (t.is_leaf()) {
      if (auto* step = std::get_if<std::size_t>(&t.leaf)) {
        n.type = formula(*step);
      } else {
        const Formula& p = std::holds_alternative<AxiomId>(t.leaf) ? axiom_pattern(std::get<AxiomId>(t.leaf))
                                                                     : lemma_pattern(std::get<LemmaId>(t.leaf));
        for (const auto& m : metas(p)) n.renaming[m] = "_" + std::to_string(fresh++);
        n.type = substitute(p, [&](const std::string& k) { return Formula::meta(n.renaming.at(k)); });
      }
    } else {
      std::size_t major = build(*t.major);
      std::size_t minor = build(*t.minor);
      Formula result = Formula::meta("_" + std::to_string(fresh++));
      if (!u.unify(nodes[major].type, Formula::implies(nodes[minor].type, result)))
        throw std::invalid_argument("derivation tree does not fit at a detachment");
      n.type = result;
      n.kids = {major, minor};
    }
    nodes.push_back(std::move(n));
    return nodes.size() - 1;
  };
  std::size_t root = build(tree);
  if (!u.unify(nodes[root].type, target))
    throw std::invalid_argument("derivation does not prove '" + print_formula(target) + "'");

  std::function<std::size_t(std::size_t)> emit = [&](std::size_t i) -> std::size_t {
    const Node& n = nodes[i];
    if (!n.kids.empty()) {
      std::size_t major = emit(n.kids[0]);
      std::size_t minor = emit(n.kids[1]);
      return mp(minor, major);
    }
    if (auto* step = std::get_if<std::size_t>(&n.tree->leaf)) return *step;
    Substitution s;
    for (const auto& [key, var] : n.renaming) s.bindings.emplace(key, ground(u.resolve(Formula::meta(var))));
    if (std::holds_alternative<AxiomId>(n.tree->leaf)) return axiom(std::get<AxiomId>(n.tree->leaf), s);
    return lemma(std::get<LemmaId>(n.tree->leaf), s);
  };
  std::size_t out = emit(root);
  if (!(formula(out) == target)) throw std::logic_error("derivation produced a different formula");
  return out;
}

std::size_t ProofBuilder::identity(const Formula& a) { return theorem(Formula::implies(a, a), identity_tree()); }

std::size_t ProofBuilder::exchange(const Formula& a, const Formula& b, const Formula& c) {
  using F = Formula;
  return theorem(F::implies(F::implies(a, F::implies(b, c)), F::implies(b, F::implies(a, c))), exchange_tree());
}

std::size_t ProofBuilder::composition(const Formula& a, const Formula& b, const Formula& c) {
  using F = Formula;
  return theorem(F::implies(F::implies(a, b), F::implies(F::implies(c, a), F::implies(c, b))), composition_tree());
}

Proof prove_top() {
  using F = Formula;
  ProofBuilder pb;
  const F bot = F::bot(), top = F::top(), nbot = F::neg(bot);
  // !bot <-> top gives !bot -> top
  std::size_t e6 = pb.axiom(AxiomId::E6, {});
  std::size_t nbot_top = pb.mp(e6, pb.lemma(LemmaId::L2, {{{"A", F::implies(nbot, top)}, {"B", F::implies(top, nbot)}}, {}}));
  // !bot <-> (bot -> bot), swapped, gives (bot -> bot) -> !bot
  std::size_t e3 = pb.axiom(AxiomId::E3, {{{"A", bot}}, {}});
  const F fwd = F::implies(nbot, F::implies(bot, bot)), back = F::implies(F::implies(bot, bot), nbot);
  std::size_t swapped = pb.mp(e3, pb.lemma(LemmaId::L3, {{{"A", fwd}, {"B", back}}, {}}));
  std::size_t bb_nbot = pb.mp(swapped, pb.lemma(LemmaId::L2, {{{"A", back}, {"B", fwd}}, {}}));
  std::size_t n = pb.mp(pb.identity(bot), bb_nbot);
  pb.mp(n, nbot_top);
  return pb.take();
}

ConsistencyResult consistency_probe(const Theory& t, const SearchOptions& opt) {
  RelevanceResult r = relevance_degree(t, Formula::bot(), opt);
  ConsistencyResult out;
  if (r.status != SearchStatus::Infeasible && r.witness) {
    out.model_found = true;
    out.model = r.witness;
  }
  return out;
}

ProofDegreeReport proof_degree(const Theory& t, const Formula& alpha, const std::vector<Proof>& certificates,
                               const SearchOptions& opt, const CheckOptions& check) {
  ProofDegreeReport rep;
  for (std::size_t i = 0; i < certificates.size(); ++i) {
    const Proof& c = certificates[i];
    if (c.empty()) throw CertificateError(i, "empty proof");
    const Formula& concl = c.conclusion();
    if (concl.kind() != Kind::Implies || concl.left().kind() != Kind::Const || !(concl.right() == alpha))
      throw CertificateError(i, "conclusion is not 'r -> " + print_formula(alpha) + "'");
    if (CheckResult r = check_derivation(t, c, check); !r)
      throw CertificateError(i, "step " + std::to_string(r.step) + ": " + r.reason);
    rep.certified.push_back(concl.left().value().value());
    if (rep.certified.back() > rep.lower_bound) rep.lower_bound = rep.certified.back();
  }
  rep.numeric = relevance_degree(t, alpha, opt);
  rep.defect = to_double(rep.lower_bound) > rep.numeric.value + opt.tol;
  return rep;
}

Support finite_support(const Theory& t, const Proof& proof, const CheckOptions& opt) {
  if (CheckResult r = check_derivation(t, proof, opt); !r)
    throw std::invalid_argument("step " + std::to_string(r.step) + ": " + r.reason);
  Support s;
  s.proof = proof;
  for (auto& st : s.proof.steps)
    if (st.why.type == Justification::Type::Member) {
      s.theory.add(t[st.why.member]);
      st.why.member = s.theory.index_of(t[st.why.member]);
    }
  return s;
}

}  // namespace iqcl
