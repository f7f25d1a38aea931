#pragma once

// Decides, on a hypercube window [1, N]^u, whether the values of f admit a
// Selberg factor system
//
//     f(n_1, ..., n_u) = C * prod_{p <= N} F_p(nu_p(n_1), ..., nu_p(n_u)).
//
// Primes above N only ever see the zero signature inside the window, so
// their contribution folds into the constant C.
//
// Two phases:
//   1. Zero pattern. For every prime p, Z_p collects the signatures whose
//      every window point vanishes. A factor system exists only if each zero
//      of f has some prime p with its signature in Z_p. Using the largest such
//      Z_p loses nothing: support points never carry a signature from Z_p.
//   2. Ratios on the support. The per-prime gauge (F_p -> l_p F_p together
//      with C -> C / prod l_p) is fixed by setting F_p to 1 at the signatures
//      of a base support point. Equations with a single unknown factor then
//      determine it; every remaining equation is checked exactly.
//
// A refutation carries the violated equation together with the equations
// that derived each factor it uses, so the set is inconsistent on its own.
// Output is renormalized so F_p(0,...,0) = 1 wherever that value is nonzero.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "multclass/numtheory.hpp"
#include "multclass/rational.hpp"

namespace multclass {

using Point = std::vector<u64>;
using Signature = std::vector<unsigned>;

enum class Verdict { consistent, refuted, identically_zero, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::consistent: return "consistent";
    case Verdict::refuted: return "refuted";
    case Verdict::identically_zero: return "identically_zero";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

inline std::string point_str(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

inline std::string signature_str(const Signature& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e[i]);
  }
  return s + ")";
}

inline Signature signature_of(u64 p, const Point& n) {
  Signature e(n.size(), 0);
  for (std::size_t i = 0; i < n.size(); ++i) {
    u64 v = n[i];
    while (v % p == 0) {
      v /= p;
      ++e[i];
    }
  }
  return e;
}

/// Constant plus per-prime tables. Signatures missing from a table are
/// unconstrained by the window and read as 1.
struct FactorSystem {
  unsigned arity = 1;
  u64 window = 0;
  Rational constant;
  std::map<u64, std::map<Signature, Rational>> tables;

  [[nodiscard]] Rational factor(u64 p, const Signature& e) const {
    auto t = tables.find(p);
    if (t == tables.end()) return Rational(1);
    auto it = t->second.find(e);
    return it == t->second.end() ? Rational(1) : it->second;
  }

  /// Primes whose factor at the zero signature differs from 1.
  [[nodiscard]] std::vector<u64> exception_primes() const {
    std::vector<u64> out;
    const Signature zero(arity, 0);
    for (const auto& [p, table] : tables) {
      if (factor(p, zero) != Rational(1)) out.push_back(p);
    }
    return out;
  }

  [[nodiscard]] Rational evaluate(const Point& n) const {
    Rational v = constant;
    for (const auto& [p, table] : tables) {
      (void)table;
      v *= factor(p, signature_of(p, n));
      if (v.is_zero()) break;
    }
    return v;
  }
};

struct WindowEquation {
  Point point;
  Rational value;
  friend bool operator==(const WindowEquation&, const WindowEquation&) = default;
};

struct SelbergSolveResult {
  Verdict verdict = Verdict::inconclusive;
  unsigned arity = 1;
  u64 window = 0;
  std::optional<FactorSystem> system;
  /// "zero-pattern", "ratio" or, for inconclusive runs, "underdetermined".
  std::string obstruction;
  std::optional<Point> witness;
  Rational predicted;
  Rational actual;
  /// Inconsistent equation set (refuted) or the stalled equations (inconclusive).
  std::vector<WindowEquation> equations;
};

namespace detail {

/// Lexicographic enumeration of [1, N]^u.
inline std::vector<Point> hypercube(unsigned arity, u64 window, std::size_t limit = 1'000'000) {
  if (arity == 0) throw std::invalid_argument("multclass: arity must be >= 1");
  double count = 1;
  for (unsigned i = 0; i < arity; ++i) count *= static_cast<double>(window);
  if (count > static_cast<double>(limit)) {
    throw std::invalid_argument("multclass: window " + std::to_string(window) + "^" + std::to_string(arity) +
                                " is too large");
  }
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(count));
  Point cur(arity, 1);
  while (true) {
    out.push_back(cur);
    std::size_t i = arity;
    while (i > 0) {
      --i;
      if (cur[i] < window) {
        ++cur[i];
        break;
      }
      cur[i] = 1;
      if (i == 0) return out;
    }
  }
}

}  // namespace detail

template <typename Eval>
SelbergSolveResult solve_selberg(const Eval& f, unsigned arity, u64 window, std::size_t max_bases = 64) {
  SelbergSolveResult res;
  res.arity = arity;
  res.window = window;

  const std::vector<Point> points = detail::hypercube(arity, window);
  const std::size_t np = points.size();
  std::vector<Rational> values;
  values.reserve(np);
  for (const auto& pt : points) values.push_back(f(pt));

  std::vector<u64> primes;
  for (u64 p : Sieve::instance().primes()) {
    if (p > window) break;
    primes.push_back(p);
  }
  const std::size_t nq = primes.size();

  // sid[q][i]: id of prime q's signature at point i.
  std::vector<std::vector<std::size_t>> sid(nq, std::vector<std::size_t>(np));
  std::vector<std::vector<Signature>> sigs(nq);
  for (std::size_t q = 0; q < nq; ++q) {
    std::map<Signature, std::size_t> ids;
    for (std::size_t i = 0; i < np; ++i) {
      Signature e = signature_of(primes[q], points[i]);
      auto [it, inserted] = ids.emplace(e, sigs[q].size());
      if (inserted) sigs[q].push_back(std::move(e));
      sid[q][i] = it->second;
    }
  }

  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < np; ++i) {
    if (!values[i].is_zero()) support.push_back(i);
  }
  if (support.empty()) {
    res.verdict = Verdict::identically_zero;
    FactorSystem fs;
    fs.arity = arity;
    fs.window = window;
    fs.constant = Rational(0);
    res.system = fs;
    return res;
  }

  // Phase 1: maximal zero sets and coverage of every zero.
  std::vector<std::vector<char>> zmax(nq);
  std::vector<std::vector<std::size_t>> nonzero_rep(nq);  // a support point per signature
  for (std::size_t q = 0; q < nq; ++q) {
    zmax[q].assign(sigs[q].size(), 1);
    nonzero_rep[q].assign(sigs[q].size(), np);
    for (std::size_t i : support) {
      const std::size_t s = sid[q][i];
      if (zmax[q][s]) {
        zmax[q][s] = 0;
        nonzero_rep[q][s] = i;
      }
    }
  }
  for (std::size_t i = 0; i < np; ++i) {
    if (!values[i].is_zero()) continue;
    bool covered = false;
    for (std::size_t q = 0; q < nq && !covered; ++q) covered = zmax[q][sid[q][i]] != 0;
    if (covered) continue;
    res.verdict = Verdict::refuted;
    res.obstruction = "zero-pattern";
    res.witness = points[i];
    res.actual = Rational(0);
    res.predicted = Rational(0);
    res.equations.push_back({points[i], values[i]});
    std::set<std::size_t> reps;
    for (std::size_t q = 0; q < nq; ++q) reps.insert(nonzero_rep[q][sid[q][i]]);
    for (std::size_t r : reps) res.equations.push_back({points[r], values[r]});
    if (nq == 0) res.predicted = values[support.front()];
    return res;
  }

  // Greedy choice of the zero entries that are actually needed: primes
  // ascending, signatures in first-appearance order.
  std::vector<std::vector<char>> zchosen(nq);
  {
    std::vector<char> covered(np, 0);
    for (std::size_t q = 0; q < nq; ++q) {
      zchosen[q].assign(sigs[q].size(), 0);
      for (std::size_t s = 0; s < sigs[q].size(); ++s) {
        if (!zmax[q][s]) continue;
        bool useful = false;
        for (std::size_t i = 0; i < np; ++i) {
          if (sid[q][i] == s && !covered[i]) {
            useful = true;
            covered[i] = 1;
          }
        }
        if (useful) zchosen[q][s] = 1;
      }
    }
  }

  // Phase 2: propagation from a gauge-fixing base point.
  struct Attempt {
    std::vector<std::vector<std::optional<Rational>>> known;
    std::vector<std::vector<std::size_t>> origin;  // deriving point index
    Rational constant;
    std::size_t base = 0;
    bool stalled = false;
  };

  auto run = [&](std::size_t base) {
    Attempt a;
    a.base = base;
    a.known.resize(nq);
    a.origin.resize(nq);
    for (std::size_t q = 0; q < nq; ++q) {
      a.known[q].assign(sigs[q].size(), std::nullopt);
      a.origin[q].assign(sigs[q].size(), np);
      a.known[q][sid[q][base]] = Rational(1);
      a.origin[q][sid[q][base]] = base;
    }
    a.constant = values[base];
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t i : support) {
        std::size_t unknown_q = nq;
        int unknowns = 0;
        Rational prod = a.constant;
        for (std::size_t q = 0; q < nq; ++q) {
          const auto& k = a.known[q][sid[q][i]];
          if (k) {
            prod *= *k;
          } else if (++unknowns == 1) {
            unknown_q = q;
          } else {
            break;
          }
        }
        if (unknowns == 1) {
          a.known[unknown_q][sid[unknown_q][i]] = values[i] / prod;
          a.origin[unknown_q][sid[unknown_q][i]] = i;
          progress = true;
        }
      }
    }
    for (std::size_t i : support) {
      for (std::size_t q = 0; q < nq; ++q) {
        if (!a.known[q][sid[q][i]]) {
          a.stalled = true;
          return a;
        }
      }
    }
    return a;
  };

  Attempt attempt = run(support.front());
  for (std::size_t b = 1; attempt.stalled && b < support.size() && b < max_bases; ++b) {
    Attempt next = run(support[b]);
    if (!next.stalled) attempt = std::move(next);
  }

  if (attempt.stalled) {
    res.verdict = Verdict::inconclusive;
    res.obstruction = "underdetermined";
    for (std::size_t i : support) {
      for (std::size_t q = 0; q < nq; ++q) {
        if (!attempt.known[q][sid[q][i]]) {
          res.equations.push_back({points[i], values[i]});
          break;
        }
      }
    }
    return res;
  }

  // Check every support equation in lexicographic order.
  for (std::size_t i : support) {
    Rational pred = attempt.constant;
    for (std::size_t q = 0; q < nq; ++q) pred *= *attempt.known[q][sid[q][i]];
    if (pred == values[i]) continue;
    res.verdict = Verdict::refuted;
    res.obstruction = "ratio";
    res.witness = points[i];
    res.predicted = pred;
    res.actual = values[i];
    std::set<std::size_t> closure{i, attempt.base};
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      for (std::size_t q = 0; q < nq; ++q) {
        const std::size_t o = attempt.origin[q][sid[q][cur]];
        if (o != np && o != cur && closure.insert(o).second) stack.push_back(o);
      }
    }
    for (std::size_t j : closure) res.equations.push_back({points[j], values[j]});
    return res;
  }

  FactorSystem fs;
  fs.arity = arity;
  fs.window = window;
  fs.constant = attempt.constant;
  const Signature zero_sig(arity, 0);
  for (std::size_t q = 0; q < nq; ++q) {
    auto& table = fs.tables[primes[q]];
    std::optional<Rational> at_zero;
    for (std::size_t s = 0; s < sigs[q].size(); ++s) {
      if (sigs[q][s] == zero_sig && attempt.known[q][s]) at_zero = attempt.known[q][s];
    }
    const Rational scale_by = at_zero ? *at_zero : Rational(1);
    fs.constant *= scale_by;
    for (std::size_t s = 0; s < sigs[q].size(); ++s) {
      if (attempt.known[q][s]) {
        table.emplace(sigs[q][s], *attempt.known[q][s] / scale_by);
      } else if (zchosen[q][s]) {
        table.emplace(sigs[q][s], Rational(0));
      }
    }
  }
  res.verdict = Verdict::consistent;
  res.system = std::move(fs);
  return res;
}

}  // namespace multclass
