#pragma once

// Arithmetical functions N -> Q with exact values, the classical built-ins,
// Dirichlet and unitary convolution, and the composition transforms
// f(kn), f(k/n), f(n/k), f((k,n)), f([k,n]).

#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "multclass/numtheory.hpp"
#include "multclass/rational.hpp"

namespace multclass {

/// A total map from positive integers to exact rationals with a display name.
/// Copies share the evaluator and memo cache; both are immutable in value.
class ArithFn {
 public:
  using Eval = std::function<Rational(u64)>;
  static constexpr std::size_t kDefaultMemoLimit = std::size_t{1} << 20;

  ArithFn() = default;
  ArithFn(std::string name, Eval eval, bool memoize = false)
      : name_(std::move(name)), impl_(std::make_shared<Impl>(std::move(eval), memoize)) {}

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] bool valid() const { return impl_ != nullptr; }

  Rational operator()(u64 n) const {
    if (n == 0) throw std::domain_error("multclass: " + name_ + " evaluated at 0");
    return impl_->get(n);
  }

  /// Same values, cached. Cache fills are idempotent so concurrent readers
  /// always observe the uncached value.
  [[nodiscard]] ArithFn memoized(std::size_t limit = kDefaultMemoLimit) const {
    ArithFn copy = *this;
    auto inner = impl_;
    copy.impl_ = std::make_shared<Impl>([inner](u64 n) { return inner->get(n); }, true, limit);
    return copy;
  }

  [[nodiscard]] ArithFn renamed(std::string name) const {
    ArithFn copy = *this;
    copy.name_ = std::move(name);
    return copy;
  }

  /// Values on [first, last].
  [[nodiscard]] std::vector<Rational> table(u64 first, u64 last) const {
    std::vector<Rational> out;
    if (last < first) return out;
    out.reserve(last - first + 1);
    for (u64 n = first; n <= last; ++n) out.push_back((*this)(n));
    return out;
  }

 private:
  struct Impl {
    Impl(Eval e, bool memo, std::size_t limit = kDefaultMemoLimit)
        : eval(std::move(e)), memoize(memo), memo_limit(limit) {}

    Rational get(u64 n) const {
      if (!memoize) return eval(n);
      {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
      }
      Rational v = eval(n);
      std::lock_guard lock(mutex);
      if (cache.size() < memo_limit) cache.emplace(n, v);
      return v;
    }

    Eval eval;
    bool memoize;
    std::size_t memo_limit;
    mutable std::mutex mutex;
    mutable std::unordered_map<u64, Rational> cache;
  };

  std::string name_;
  std::shared_ptr<const Impl> impl_;
};

enum class Classical { mobius, euler_phi, one, identity_n };

inline ArithFn classical(Classical which) {
  switch (which) {
    case Classical::mobius:
      return {"mobius", [](u64 n) { return Rational(mobius(n)); }};
    case Classical::euler_phi:
      return {"phi", [](u64 n) { return Rational(static_cast<i64>(euler_phi(n))); }};
    case Classical::one:
      return {"one", [](u64) { return Rational(1); }};
    case Classical::identity_n:
      return {"id", [](u64 n) { return Rational(static_cast<i64>(n)); }};
  }
  throw std::invalid_argument("multclass: unknown classical function");
}

/// eta_k(m) = m if m | k, else 0.
inline ArithFn eta(u64 k) {
  if (k == 0) throw std::domain_error("multclass: eta requires k >= 1");
  return {"eta[" + std::to_string(k) + "]",
          [k](u64 m) { return k % m == 0 ? Rational(static_cast<i64>(m)) : Rational(0); }};
}

/// The constant function 0; used as the identically-zero probe.
inline ArithFn zero_fn() {
  return {"zero", [](u64) { return Rational(0); }};
}

inline ArithFn dirichlet(const ArithFn& f, const ArithFn& g) {
  return ArithFn(
      "dirichlet(" + f.name() + "," + g.name() + ")",
      [f, g](u64 n) {
        Rational s;
        for (u64 d : divisors(n)) {
          const Rational fd = f(d);
          if (fd.is_zero()) continue;
          s += fd * g(n / d);
        }
        return s;
      },
      true);
}

inline ArithFn unitary(const ArithFn& f, const ArithFn& g) {
  return ArithFn(
      "unitary(" + f.name() + "," + g.name() + ")",
      [f, g](u64 n) {
        Rational s;
        for (u64 d : unitary_divisors(n)) {
          const Rational fd = f(d);
          if (fd.is_zero()) continue;
          s += fd * g(n / d);
        }
        return s;
      },
      true);
}

inline ArithFn pointwise_product(const ArithFn& f, const ArithFn& g) {
  return {"product(" + f.name() + "," + g.name() + ")", [f, g](u64 n) {
            const Rational fn = f(n);
            return fn.is_zero() ? fn : fn * g(n);
          }};
}

inline ArithFn scale(const ArithFn& f, const Rational& c) {
  if (c.is_zero()) throw std::domain_error("multclass: scale requires a nonzero constant");
  return {"scale:" + c.str() + "(" + f.name() + ")", [f, c](u64 n) { return c * f(n); }};
}

enum class Composition { dilate_kn, k_over_n, n_over_k, gcd_k, lcm_k };

inline const char* composition_keyword(Composition kind) {
  switch (kind) {
    case Composition::dilate_kn: return "dilate";
    case Composition::k_over_n: return "kovern";
    case Composition::n_over_k: return "noverk";
    case Composition::gcd_k: return "gcdk";
    case Composition::lcm_k: return "lcmk";
  }
  return "?";
}

/// f(kn), f(k/n), f(n/k), f((k,n)) or f([k,n]); non-integral arguments give 0.
inline ArithFn compose(const ArithFn& f, Composition kind, u64 k) {
  if (k == 0) throw std::domain_error("multclass: compose requires k >= 1");
  std::string name = std::string(composition_keyword(kind)) + ":" + std::to_string(k) + "(" + f.name() + ")";
  switch (kind) {
    case Composition::dilate_kn:
      return {std::move(name), [f, k](u64 n) { return f(checked::mul(k, n)); }};
    case Composition::k_over_n:
      return {std::move(name), [f, k](u64 n) { return k % n == 0 ? f(k / n) : Rational(0); }};
    case Composition::n_over_k:
      return {std::move(name), [f, k](u64 n) { return n % k == 0 ? f(n / k) : Rational(0); }};
    case Composition::gcd_k:
      return {std::move(name), [f, k](u64 n) { return f(gcd(k, n)); }};
    case Composition::lcm_k:
      return {std::move(name), [f, k](u64 n) { return f(lcm(k, n)); }};
  }
  throw std::invalid_argument("multclass: unknown composition");
}

namespace detail {

/// Representation counts of 0..limit as ordered sums of s squares (signs and
/// order counted), built by repeated additive convolution of the one-square
/// count table. Pure enumeration; no closed forms.
class SquareSumTable {
 public:
  explicit SquareSumTable(unsigned s) : s_(s) {}

  Rational get(u64 n, u64 budget) {
    if (n > budget) {
      throw std::domain_error("multclass: r_" + std::to_string(s_) + "(" + std::to_string(n) +
                              ") exceeds the enumeration budget " + std::to_string(budget));
    }
    std::lock_guard lock(mutex_);
    if (n >= counts_.size()) rebuild(std::min<u64>(budget, std::max<u64>(n, 2 * counts_.size())));
    return Rational::from_int128(counts_[n]);
  }

 private:
  void rebuild(u64 limit) {
    std::vector<Int128> one(limit + 1, 0);
    for (u64 x = 0; x * x <= limit; ++x) one[x * x] += (x == 0 ? 1 : 2);
    std::vector<Int128> acc = one;
    for (unsigned k = 1; k < s_; ++k) {
      std::vector<Int128> next(limit + 1, 0);
      for (u64 i = 0; i <= limit; ++i) {
        if (acc[i] == 0) continue;
        for (u64 x = 0; i + x * x <= limit; ++x) {
          next[i + x * x] += acc[i] * one[x * x];
        }
      }
      acc = std::move(next);
    }
    counts_ = std::move(acc);
  }

  unsigned s_;
  std::mutex mutex_;
  std::vector<Int128> counts_;
};

}  // namespace detail

/// r_s(n): number of integer s-tuples with sum of squares n. s in {2, 4, 8}.
inline ArithFn sum_of_squares(unsigned s, u64 budget = 10'000) {
  if (s != 2 && s != 4 && s != 8) throw std::invalid_argument("multclass: sum_of_squares supports s = 2, 4, 8");
  auto table = std::make_shared<detail::SquareSumTable>(s);
  return {"r" + std::to_string(s), [table, budget](u64 n) { return table->get(n, budget); }};
}

}  // namespace multclass
