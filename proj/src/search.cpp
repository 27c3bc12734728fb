#include "iqcl/search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace iqcl {

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Feasible: return "feasible";
    case SearchStatus::Infeasible: return "infeasible";
    default: return "tolerance-limited";
  }
}

namespace {

constexpr double kPi = 3.14159265358979323846;

// Each atom is a point of the disk in polar form: (1-2u, 1-2w) = r(cos t, sin t).
struct Point {
  std::vector<double> r, t;
};

struct Sample {
  double obj = 0, res = 0;
};

class Problem {
 public:
  Problem(const Theory& theory, const Formula* objective, std::vector<std::string> atom_order,
          std::uint64_t budget)
      : atoms_(std::move(atom_order)), budget_(budget), u_(atoms_.size()), w_(atoms_.size()) {
    if (objective) objective_.emplace(*objective, atoms_);
    for (const auto& f : theory) constraints_.emplace_back(f, atoms_);
  }

  std::size_t dim() const { return atoms_.size(); }
  const std::vector<std::string>& atoms() const { return atoms_; }
  std::uint64_t used() const { return used_; }
  bool exhausted() const { return used_ >= budget_; }

  void to_pairs(const Point& p, std::vector<double>& u, std::vector<double>& w) const {
    u.resize(dim());
    w.resize(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      u[i] = std::clamp((1 - p.r[i] * std::cos(p.t[i])) / 2, 0.0, 1.0);
      w[i] = std::clamp((1 - p.r[i] * std::sin(p.t[i])) / 2, 0.0, 1.0);
    }
  }

  Sample eval(const Point& p) {
    ++used_;
    to_pairs(p, u_, w_);
    Sample s;
    if (objective_) s.obj = objective_->eval(u_.data(), w_.data()).first;
    double worst = 1;
    for (const auto& c : constraints_) worst = std::min(worst, c.eval(u_.data(), w_.data()).first);
    s.res = std::max(0.0, 1 - worst);
    return s;
  }

 private:
  std::vector<std::string> atoms_;
  std::optional<CompiledFormula> objective_;
  std::vector<CompiledFormula> constraints_;
  std::uint64_t budget_, used_ = 0;
  std::vector<double> u_, w_;
};

// Pattern search on obj + mu * res. Polls every coordinate and diagonal
// direction, moves to the best improving poll, halves the step otherwise.
// Returns false if the evaluation limit stopped it early.
bool compass(Problem& prob, Point& x, Sample& fx, double mu, double step, double min_step,
             std::uint64_t limit) {
  auto merit = [mu](const Sample& s) { return s.obj + mu * s.res; };
  const std::size_t k = prob.dim();
  Point y = x;
  std::mt19937_64 rng(k);
  std::normal_distribution<double> gauss;
  while (step >= min_step) {
    double best = merit(fx);
    Point best_point;
    Sample best_sample;
    bool improved = false;
    for (std::size_t i = 0; i < k; ++i) {
      static constexpr int dr[] = {1, -1, 0, 0, 1, 1, -1, -1};
      static constexpr int dt[] = {0, 0, 1, -1, 1, -1, 1, -1};
      for (int d = 0; d < 8; ++d) {
        if (prob.used() >= limit) return false;
        y.r[i] = std::clamp(x.r[i] + dr[d] * step, 0.0, 1.0);
        y.t[i] = x.t[i] + dt[d] * step;
        if (y.r[i] == x.r[i] && dt[d] == 0) continue;
        Sample s = prob.eval(y);
        if (merit(s) < best) {
          best = merit(s);
          best_point = y;
          best_sample = s;
          improved = true;
        }
      }
      y.r[i] = x.r[i];
      y.t[i] = x.t[i];
    }
    // single-atom moves stall where several members are active at once,
    // so try a few joint directions before shrinking
    if (!improved && k > 1) {
      for (std::size_t d = 0; d < 4 * k && !improved; ++d) {
        if (prob.used() >= limit) return false;
        for (std::size_t i = 0; i < k; ++i) {
          y.r[i] = std::clamp(x.r[i] + step * (gauss(rng)), 0.0, 1.0);
          y.t[i] = x.t[i] + step * gauss(rng);
        }
        Sample s = prob.eval(y);
        if (merit(s) < best) {
          best_point = y;
          best_sample = s;
          improved = true;
        }
      }
      y = x;
    }
    if (improved) {
      x = best_point;
      y = x;
      fx = best_sample;
    } else {
      step /= 2;
    }
  }
  return true;
}

std::vector<std::pair<double, double>> disk_candidates(const SearchOptions& opt) {
  std::vector<std::pair<double, double>> out;  // (r, t)
  const int n = std::max(1, static_cast<int>(std::lround(1 / opt.grid)));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      double a = 1 - 2.0 * i / n, b = 1 - 2.0 * j / n;
      double r = std::hypot(a, b);
      if (r <= 1 + 1e-12) out.emplace_back(std::min(r, 1.0), std::atan2(b, a));
    }
  for (int k = 0; k < opt.boundary_samples; ++k)
    out.emplace_back(1.0, 2 * kPi * k / opt.boundary_samples);
  return out;
}

std::vector<std::string> problem_atoms(const Theory& t, const Formula* alpha) {
  std::set<std::string> all;
  if (alpha) all = atoms(*alpha);
  for (const auto& f : t) {
    auto a = atoms(f);
    all.insert(a.begin(), a.end());
  }
  return {all.begin(), all.end()};
}

struct Start {
  Point point;
  Sample sample;
  std::size_t index;
};

struct Outcome {
  bool feasible = false;
  bool budget_hit = false;
  Point point;
  Sample sample;
};

// Penalty continuation from the best grid/boundary seeds.
Outcome minimise(Problem& prob, const SearchOptions& opt, std::uint64_t budget) {
  const std::size_t k = prob.dim();
  auto cands = disk_candidates(opt);
  const double csize = static_cast<double>(cands.size());
  const std::uint64_t cap = std::max<std::uint64_t>(1, budget / 4);
  std::vector<Start> seeds;
  auto add_seed = [&](const std::vector<std::size_t>& pick) {
    Point p{std::vector<double>(k), std::vector<double>(k)};
    for (std::size_t i = 0; i < k; ++i) std::tie(p.r[i], p.t[i]) = cands[pick[i]];
    Sample s = prob.eval(p);
    seeds.push_back({std::move(p), s, seeds.size()});
  };
  if (std::pow(csize, static_cast<double>(k)) <= static_cast<double>(cap)) {
    std::vector<std::size_t> pick(k, 0);
    while (true) {
      add_seed(pick);
      std::size_t i = 0;
      while (i < k && ++pick[i] == cands.size()) pick[i++] = 0;
      if (i == k) break;
    }
  } else {
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::size_t> any(0, cands.size() - 1);
    std::vector<std::size_t> pick(k);
    for (std::uint64_t n = 0; n < cap; ++n) {
      for (auto& p : pick) p = any(rng);
      add_seed(pick);
    }
  }

  auto score = [](const Start& s) { return s.sample.obj + 100 * s.sample.res; };
  std::vector<std::size_t> order(seeds.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return score(seeds[a]) < score(seeds[b]); });
  std::vector<std::size_t> chosen(order.begin(),
                                  order.begin() + std::min<std::size_t>(opt.local_starts, order.size()));
  auto least_res = std::min_element(seeds.begin(), seeds.end(), [](const Start& a, const Start& b) {
    return a.sample.res < b.sample.res;
  });
  if (std::find(chosen.begin(), chosen.end(), least_res->index) == chosen.end())
    chosen.push_back(least_res->index);

  const double mu_max = std::max(10.0, 1e3 / opt.tol);
  Outcome best;
  std::size_t best_rank = 0;
  for (std::size_t rank = 0; rank < chosen.size(); ++rank) {
    const std::uint64_t remaining = budget > prob.used() ? budget - prob.used() : 0;
    const std::uint64_t limit = prob.used() + remaining / (chosen.size() - rank);
    Start s = seeds[chosen[rank]];
    bool finished = true;
    double step = 0.25;
    for (double mu = 10; finished; mu *= 10) {
      s.sample = prob.eval(s.point);
      finished = compass(prob, s.point, s.sample, std::min(mu, mu_max), step, opt.tol / 10, limit);
      step = 1e-2;
      if (mu >= mu_max) break;
    }
    if (!finished) best.budget_hit = true;
    if (s.sample.res >= opt.tol) continue;
    if (!best.feasible || s.sample.obj < best.sample.obj ||
        (s.sample.obj == best.sample.obj && chosen[rank] < chosen[best_rank])) {
      best.feasible = true;
      best.point = s.point;
      best.sample = s.sample;
      best_rank = rank;
    }
  }
  return best;
}

// Tries every dyadic resolution and keeps the exactly valid model of `t`
// with the least exact objective value.
std::optional<std::pair<ReducedModel, Rational>> exact_witness(const Problem& prob, const Point& p,
                                                               const Theory& t, const Formula* alpha) {
  std::vector<double> u, w;
  prob.to_pairs(p, u, w);
  std::optional<std::pair<ReducedModel, Rational>> best;
  for (unsigned bits = 1; bits <= 52; ++bits) {
    auto m = snap_model(prob.atoms(), u, w, bits);
    if (!m || !is_model_of(*m, t)) continue;
    Rational v = alpha ? eval_prob(*m, *alpha).u : Rational(0);
    if (!best || v < best->second) best.emplace(std::move(*m), std::move(v));
  }
  return best;
}

}  // namespace

std::optional<ReducedModel> snap_model(const std::vector<std::string>& atoms, const std::vector<double>& u,
                                       const std::vector<double>& w, unsigned bits) {
  const double scale = std::ldexp(1.0, static_cast<int>(bits));
  Integer denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), 2, bits);
  ReducedModel m;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    Rational su(Integer(static_cast<long>(std::llround(u[i] * scale))), denom);
    Rational sw(Integer(static_cast<long>(std::llround(w[i] * scale))), denom);
    su.canonicalize();
    sw.canonicalize();
    if (!in_disk(su, sw)) return std::nullopt;
    m.set(atoms[i], su, sw);
  }
  return m;
}

RelevanceResult relevance_degree(const Theory& t, const Formula& alpha, const SearchOptions& opt) {
  RelevanceResult out;
  const bool atom_free = atoms(alpha).empty();
  Problem prob(t, atom_free ? nullptr : &alpha, problem_atoms(t, &alpha), opt.budget);

  Outcome o;
  if (prob.dim() == 0) {
    o.feasible = is_model_of(ReducedModel{}, t);
    o.point = {};
    if (o.feasible && !atom_free) o.sample = prob.eval(o.point);
  } else {
    o = minimise(prob, opt, opt.budget);
  }
  out.evaluations = prob.used();

  if (!o.feasible) {
    out.value = 1;
    out.status = o.budget_hit ? SearchStatus::ToleranceLimited : SearchStatus::Infeasible;
    return out;
  }
  out.status = o.budget_hit ? SearchStatus::ToleranceLimited : SearchStatus::Feasible;
  out.residual = o.sample.res;
  if (atom_free) {
    out.exact = eval_prob(ReducedModel{}, alpha).u;
    out.value = to_double(*out.exact);
  } else {
    out.value = o.sample.obj;
  }
  if (auto w = exact_witness(prob, o.point, t, &alpha)) {
    out.witness = std::move(w->first);
    out.witness_value = std::move(w->second);
  }
  return out;
}

TautologyVerdict check_tautology(const Formula& f, const SearchOptions& opt) {
  TautologyVerdict v;
  if (atoms(f).empty()) {
    Rational val = eval_prob(ReducedModel{}, f).u;
    v.min_found = to_double(val);
    if (val < 1) {
      v.tautology = false;
      v.counterexample = ReducedModel{};
      v.counterexample_value = val;
    }
    return v;
  }
  Theory none;
  Problem prob(none, &f, problem_atoms(none, &f), opt.budget);
  Outcome o = minimise(prob, opt, opt.budget);
  v.min_found = o.sample.obj;
  if (o.feasible && o.sample.obj < 1 - 1e-12) {
    if (auto w = exact_witness(prob, o.point, none, &f); w && w->second < 1) {
      v.tautology = false;
      v.counterexample = std::move(w->first);
      v.counterexample_value = std::move(w->second);
    }
  }
  return v;
}

TautologyVerdict consequence(const Formula& alpha, const Formula& beta, const SearchOptions& opt) {
  return check_tautology(Formula::implies(alpha, beta), opt);
}

std::vector<ReducedModel> sample_models(const Theory& t, std::size_t count, std::uint64_t seed,
                                        const std::set<std::string>& extra_atoms) {
  std::set<std::string> all(extra_atoms);
  for (const auto& f : t) {
    auto a = atoms(f);
    all.insert(a.begin(), a.end());
  }
  std::vector<std::string> order(all.begin(), all.end());
  std::vector<ReducedModel> out;
  if (order.empty()) {
    if (is_model_of(ReducedModel{}, t)) out.assign(count, ReducedModel{});
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t k = order.size();
  std::vector<double> u, w;
  for (std::size_t attempt = 0; out.size() < count && attempt < 8 * count; ++attempt) {
    Problem prob(t, nullptr, order, 20000);
    Point p{std::vector<double>(k), std::vector<double>(k)};
    for (std::size_t i = 0; i < k; ++i) {
      p.r[i] = std::sqrt(unit(rng));
      p.t[i] = 2 * kPi * unit(rng);
    }
    Sample s = prob.eval(p);
    compass(prob, p, s, 1, 0.25, 1e-13, 20000);
    prob.to_pairs(p, u, w);
    for (unsigned bits = 30; bits >= 1; --bits) {
      auto m = snap_model(order, u, w, bits);
      if (m && is_model_of(*m, t)) {
        out.push_back(std::move(*m));
        break;
      }
    }
  }
  return out;
}

}  // namespace iqcl
