#pragma once

// Independent reference computations for the test suites. Nothing here calls
// the library's extremum or expansion code.

#include "cdd/designspace.hpp"
#include "cdd/surface.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace cdd::testing {

inline double central_difference(const std::function<double(std::span<const double>)>& f,
                                 std::vector<double> x, std::size_t j, double h) {
  const double x0 = x[j];
  x[j] = x0 + h;
  const double up = f(x);
  x[j] = x0 - h;
  const double down = f(x);
  return (up - down) / (2.0 * h);
}

// Max of beta x + gamma x^2 over n evenly spaced points of [lo, hi].
inline double grid_term_max(double beta, double gamma, double lo, double hi, std::size_t n) {
  double best = -INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    double x = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    best = std::max(best, beta * x + gamma * x * x);
  }
  return best;
}

// Direct polynomial evaluation, without the library.
inline double direct_eval(const QuadraticResponseSurface& s, std::span<const double> x) {
  double z = s.beta0();
  for (std::size_t j = 0; j < x.size(); ++j) z += s.linear()[j] * x[j] + s.quadratic()[j] * x[j] * x[j];
  return z;
}

inline QuadraticResponseSurface random_surface(std::mt19937_64& rng, std::size_t n, const std::string& name,
                                               double scale = 2.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> lin(n), quad(n);
  for (std::size_t j = 0; j < n; ++j) {
    lin[j] = u(rng);
    quad[j] = u(rng);
  }
  return {name, "u", u(rng), std::move(lin), std::move(quad)};
}

// Random problem with N in [1, max_dim], 1..3 constrained surfaces, random
// ambient bounds and a seed whose slack on every constraint is in [0.05, 1].
inline DesignProblem random_problem(std::mt19937_64& rng, std::size_t max_dim = 3) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim), count(1, 3);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  DesignProblem p;
  p.name = "random";
  const std::size_t n = dim(rng);
  for (std::size_t j = 0; j < n; ++j) {
    double lo = -2.0 + 2.0 * u01(rng);
    double hi = lo + 0.5 + 2.0 * u01(rng);
    p.variables.push_back({"x" + std::to_string(j), "u", {lo, hi}});
    p.seed.push_back(lo + (hi - lo) * (0.2 + 0.6 * u01(rng)));
  }
  const std::size_t m = count(rng);
  for (std::size_t i = 0; i < m; ++i) {
    auto s = random_surface(rng, n, "z" + std::to_string(i));
    double bound = direct_eval(s, p.seed) + 0.05 + 0.95 * u01(rng);
    p.surfaces.push_back(std::move(s));
    p.constraints.push_back({p.surfaces.back().name(), bound});
  }
  return p;
}

// Formulas over {P/1, R/2} with variables v1..v3, kept apart from the library
// AST. Truth is computed from bitmasks: bit x of pmask is P(x); bit x*n+y of
// rmask is R(x, y), the row-major tuple order.
struct MiniFormula {
  enum class Kind { P, R, Eq, Not, And, Or, Implies, ForAll, Exists };
  Kind kind = Kind::P;
  int a = 0;  // variable index, or the bound variable
  int b = 0;
  std::shared_ptr<const MiniFormula> lhs, rhs;
};
using MiniPtr = std::shared_ptr<const MiniFormula>;

inline std::string mini_var(int v) { return "v" + std::to_string(v + 1); }

inline std::string mini_text(const MiniFormula& f) {
  using K = MiniFormula::Kind;
  switch (f.kind) {
    case K::P: return "P(" + mini_var(f.a) + ")";
    case K::R: return "R(" + mini_var(f.a) + ", " + mini_var(f.b) + ")";
    case K::Eq: return mini_var(f.a) + " = " + mini_var(f.b);
    case K::Not: return "not (" + mini_text(*f.lhs) + ")";
    case K::And: return "(" + mini_text(*f.lhs) + ") and (" + mini_text(*f.rhs) + ")";
    case K::Or: return "(" + mini_text(*f.lhs) + ") or (" + mini_text(*f.rhs) + ")";
    case K::Implies: return "(" + mini_text(*f.lhs) + ") -> (" + mini_text(*f.rhs) + ")";
    case K::ForAll: return "forall " + mini_var(f.a) + ". (" + mini_text(*f.lhs) + ")";
    case K::Exists: return "exists " + mini_var(f.a) + ". (" + mini_text(*f.lhs) + ")";
  }
  return {};
}

inline bool mini_eval(const MiniFormula& f, int n, std::uint64_t pmask, std::uint64_t rmask, std::array<int, 3> env) {
  using K = MiniFormula::Kind;
  switch (f.kind) {
    case K::P: return (pmask >> env[f.a]) & 1u;
    case K::R: return (rmask >> (env[f.a] * n + env[f.b])) & 1u;
    case K::Eq: return env[f.a] == env[f.b];
    case K::Not: return !mini_eval(*f.lhs, n, pmask, rmask, env);
    case K::And: return mini_eval(*f.lhs, n, pmask, rmask, env) && mini_eval(*f.rhs, n, pmask, rmask, env);
    case K::Or: return mini_eval(*f.lhs, n, pmask, rmask, env) || mini_eval(*f.rhs, n, pmask, rmask, env);
    case K::Implies: return !mini_eval(*f.lhs, n, pmask, rmask, env) || mini_eval(*f.rhs, n, pmask, rmask, env);
    case K::ForAll:
    case K::Exists: {
      const bool all = f.kind == K::ForAll;
      for (int d = 0; d < n; ++d) {
        env[f.a] = d;
        if (mini_eval(*f.lhs, n, pmask, rmask, env) != all) return !all;
      }
      return all;
    }
  }
  return false;
}

inline MiniPtr mini_node(MiniFormula f) { return std::make_shared<const MiniFormula>(std::move(f)); }

// Which relation symbols may appear in generated atoms; equality always may.
enum class MiniAtoms { Both, OnlyP, OnlyR };

inline MiniPtr random_mini(std::mt19937_64& rng, int depth, MiniAtoms atoms = MiniAtoms::Both) {
  using K = MiniFormula::Kind;
  std::uniform_int_distribution<int> var(0, 2);
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 8);
  const int k = pick(rng);
  MiniFormula f;
  f.kind = static_cast<K>(k);
  f.a = var(rng);
  f.b = var(rng);
  if (atoms == MiniAtoms::OnlyP && f.kind == K::R) f.kind = K::P;
  if (atoms == MiniAtoms::OnlyR && f.kind == K::P) f.kind = K::R;
  if (k >= 3) f.lhs = random_mini(rng, depth - 1, atoms);
  if (k >= 4 && k <= 6) f.rhs = random_mini(rng, depth - 1, atoms);
  return mini_node(std::move(f));
}

inline void mini_free(const MiniFormula& f, std::array<bool, 3>& bound, std::array<bool, 3>& free) {
  using K = MiniFormula::Kind;
  switch (f.kind) {
    case K::P: if (!bound[f.a]) free[f.a] = true; return;
    case K::R:
    case K::Eq:
      if (!bound[f.a]) free[f.a] = true;
      if (!bound[f.b]) free[f.b] = true;
      return;
    case K::ForAll:
    case K::Exists: {
      bool saved = bound[f.a];
      bound[f.a] = true;
      mini_free(*f.lhs, bound, free);
      bound[f.a] = saved;
      return;
    }
    default:
      mini_free(*f.lhs, bound, free);
      if (f.rhs) mini_free(*f.rhs, bound, free);
  }
}

// Closes every free variable except those flagged in keep with a random
// quantifier.
inline MiniPtr mini_close(std::mt19937_64& rng, MiniPtr f, std::array<bool, 3> keep = {}) {
  std::array<bool, 3> bound{}, free{};
  mini_free(*f, bound, free);
  std::bernoulli_distribution coin(0.5);
  for (int v = 2; v >= 0; --v)
    if (free[v] && !keep[v])
      f = mini_node({coin(rng) ? MiniFormula::Kind::ForAll : MiniFormula::Kind::Exists, v, 0, f, nullptr});
  return f;
}

// Random sentence: a random body closed by random quantifiers over its free
// variables.
inline MiniPtr random_mini_sentence(std::mt19937_64& rng, int depth, MiniAtoms atoms = MiniAtoms::Both) {
  return mini_close(rng, random_mini(rng, depth, atoms));
}

}  // namespace cdd::testing
