#include <gtest/gtest.h>

#include "generators.hpp"
#include "iqcl/parser.hpp"
#include "iqcl/translation.hpp"

using namespace iqcl;

namespace {

Formula f(const char* text) { return parse_formula(text); }

Theory thy(std::initializer_list<const char*> members) {
  Theory t;
  for (const char* m : members) t.add(f(m));
  return t;
}

Proof fixture(const char* name) { return load_proof(std::string(IQCL_FIXTURES) + "/" + name); }
Theory fixture_theory(const char* name) { return load_theory(std::string(IQCL_FIXTURES) + "/" + name); }

}  // namespace

TEST(Translate, Examples) {
  EXPECT_EQ(pmv_translate(f("?(p + q)")), Formula::half());
  EXPECT_EQ(pmv_translate(f("?!p")), f("!?p"));
  EXPECT_EQ(pmv_translate(f("??p")), f("!p"));
  EXPECT_EQ(pmv_translate(f("?p + q")), f("?p + q"));
  EXPECT_EQ(pmv_translate(f("?3/8")), Formula::half());
  EXPECT_EQ(pmv_translate(f("???p")), f("!?p"));
  EXPECT_EQ(pmv_translate(f("?!!p -> ?(p <-> q)")), f("!!?p -> 1/2"));
}

TEST(Translate, Theories) {
  Theory t = translate_theory(thy({"??p"}));
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0], f("!p"));
  EXPECT_EQ(translate_theory(Theory{}).size(), 0u);
  Theory frag = thy({"?p + q", "3/8 -> p"});
  Theory same = translate_theory(frag);
  ASSERT_EQ(same.size(), frag.size());
  for (std::size_t i = 0; i < frag.size(); ++i) EXPECT_EQ(same[i], frag[i]);
  // members that translate to the same formula merge
  EXPECT_EQ(translate_theory(thy({"??p", "!p"})).size(), 1u);
}

TEST(Translate, FaithfulIdempotentAndInFragment) {
  gen::Gen g(61);
  const std::vector<std::string> names = {"p", "q", "r"};
  for (int k = 0; k < 1000; ++k) {
    Formula a = g.formula(g.integer(0, 6), names, true);
    Formula t = pmv_translate(a);
    ASSERT_TRUE(is_pmv_fragment(t)) << print_formula(a);
    ASSERT_EQ(pmv_translate(t), t);
    ReducedModel m = g.model(names);
    ProbPair x = eval_prob(m, a), y = eval_prob(m, t);
    ASSERT_EQ(x.u, y.u) << print_formula(a);
  }
}

TEST(Tq5, Examples) {
  Tq5Config one;
  one.atoms = {"p"};
  one.bound_values = {SConstant(Integer(7), 4)};
  Theory t = generate_tq5(one);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_TRUE(t.contains(f("1/4 . p + 1/4 . ?p -> 7/16")));
  EXPECT_TRUE(t.contains(f("1/4 . !p + 1/4 . !?p -> 7/16")));
  EXPECT_TRUE(t.contains(f("1/4 . !p + 1/4 . ?p -> 7/16")));
  EXPECT_TRUE(t.contains(f("1/4 . p + 1/4 . !?p -> 7/16")));

  Tq5Config t5;
  t5.t5_values = {SConstant(Integer(3), 3)};
  t5.t5_formulas = {f("p")};
  Theory g5 = generate_tq5(t5);
  ASSERT_EQ(g5.size(), 1u);
  EXPECT_EQ(print_formula(g5[0]), "1/4 . p + 1/8 -> 3/8");

  EXPECT_EQ(generate_tq5(Tq5Config{}).size(), 0u);
}

TEST(Tq5, RejectsValuesBelowTheBounds) {
  Tq5Config low;
  low.atoms = {"p"};
  low.bound_values = {SConstant(Integer(109), 8)};
  EXPECT_THROW(generate_tq5(low), std::invalid_argument);
  Tq5Config t5;
  t5.t5_values = {SConstant(Integer(5), 4)};
  t5.t5_formulas = {f("p")};
  EXPECT_THROW(generate_tq5(t5), std::invalid_argument);
}

TEST(Tq5, DefaultsFromAGoal) {
  Tq5Config cfg = Tq5Config::for_formula(f("?p -> q"));
  EXPECT_EQ(cfg.atoms, (std::vector<std::string>{"p", "q"}));
  ASSERT_EQ(cfg.bound_values.size(), 1u);
  EXPECT_EQ(cfg.bound_values[0], SConstant(Integer(55), 7));
  Theory t = generate_tq5(cfg);
  // four per atom, and one for each of p, ?p, q, ?q
  EXPECT_EQ(t.size(), 12u);
}

TEST(Tq5, MembersHoldInEveryModel) {
  gen::Gen g(62);
  Tq5Config cfg;
  cfg.atoms = {"p", "q"};
  cfg.bound_values = {least_dyadic_above_q5_bound(8), SConstant(Integer(7), 4), SConstant::top()};
  cfg.t5_values = {SConstant(Integer(3), 3), SConstant(Integer(1), 1)};
  for (int k = 0; k < 20; ++k) cfg.t5_formulas.push_back(g.formula(g.integer(0, 3), cfg.atoms, false));
  Theory t = generate_tq5(cfg);
  for (int k = 0; k < 300; ++k) {
    ReducedModel m = g.model(cfg.atoms);
    for (const auto& member : t) ASSERT_EQ(eval_prob(m, member).u, 1) << print_formula(member);
  }
}

TEST(Bridge, QFiveStepBecomesAMember) {
  Proof p = parse_proof("1. 1/4 . p + 1/4 . ?p -> 55/128 :: axiom Q5\n");
  Formula goal = p.conclusion();
  Theory tq5 = generate_tq5(Tq5Config::for_formula(goal));
  TranslatedProof tp = translate_proof(Theory{}, p, tq5);
  EXPECT_EQ(tp.goal, goal);
  EXPECT_TRUE(is_pmv_proof(tp.proof));
  EXPECT_TRUE(check_proof(tp.theory, tp.proof, tp.goal).ok());
}

TEST(Bridge, QFiveOutsideTheBoundingTheoryThrows) {
  Proof p = parse_proof("1. 1/4 . p + 1/4 . ?p -> 7/16 :: axiom Q5\n");
  Theory tq5 = generate_tq5(Tq5Config::for_formula(p.conclusion()));
  EXPECT_THROW(translate_proof(Theory{}, p, tq5), std::invalid_argument);
}

TEST(Bridge, FixtureProofs) {
  struct Case {
    const char* theory;
    const char* proof;
  };
  for (Case c : {Case{"double_root.thy", "double_root.prf"}, Case{"root_sum.thy", "root_sum.prf"}}) {
    Theory t = fixture_theory(c.theory);
    Proof p = fixture(c.proof);
    ASSERT_TRUE(check_derivation(t, p).ok()) << c.proof;
    Theory tq5 = generate_tq5(Tq5Config::for_formula(p.conclusion()));
    TranslatedProof tp = translate_proof(t, p, tq5);
    EXPECT_EQ(tp.goal, pmv_translate(p.conclusion()));
    EXPECT_TRUE(is_pmv_proof(tp.proof)) << c.proof;
    CheckResult r = check_proof(tp.theory, tp.proof, tp.goal);
    EXPECT_TRUE(r.ok()) << c.proof << ": " << r.reason;
  }
}

TEST(Bridge, RejectsInvalidInput) {
  EXPECT_THROW(translate_proof(Theory{}, parse_proof("1. p :: hyp 1\n"), Theory{}), std::invalid_argument);
}

TEST(Bridge, PmvProofDetection) {
  EXPECT_TRUE(is_pmv_proof(parse_proof("1. p -> (q -> p) :: axiom W1\n")));
  EXPECT_FALSE(is_pmv_proof(parse_proof("1. ??p <-> !p :: axiom Q1\n")));
  EXPECT_FALSE(is_pmv_proof(parse_proof("1. ?(p + q) -> ?(p + q) :: hyp 1\n")));
}
