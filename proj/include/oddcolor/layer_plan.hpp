#ifndef ODDCOLOR_LAYER_PLAN_HPP
#define ODDCOLOR_LAYER_PLAN_HPP

// Parameters of the k-layer colorer: First-Fit width c, group-coloring degree
// threshold delta, per-layer base budgets r*_l and even-diameter caps a_l, and
// the static palette layout
//
//   [First-Fit: c] [group coloring, layer 0] ... [layer k-1] [terminal]
//
// Quantities of the form coef * n^(num/den) are compared and rounded with
// exact integer arithmetic so that perfect powers (400^(1/2), 32^(2/5)) never
// round the wrong way.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oddcolor/graph.hpp"

namespace oddcolor {

/// The real number coef * base^(num/den).
class RootPower {
 public:
  RootPower(std::uint64_t coef, std::uint64_t base, std::uint32_t num, std::uint32_t den)
      : coef_(coef), base_(base), num_(num), den_(den) {
    if (den == 0) throw std::invalid_argument("RootPower: zero denominator");
  }

  /// An integer constant.
  static RootPower constant(std::uint64_t value) { return {value, 1, 0, 1}; }

  double value() const {
    if (coef_ == 0) return 0.0;
    if (num_ == 0 || base_ == 1) return static_cast<double>(coef_);
    return static_cast<double>(coef_) *
           std::exp(static_cast<double>(num_) / static_cast<double>(den_) * std::log(static_cast<double>(base_)));
  }

  /// Sign of x - value, exactly.
  int compare(std::uint64_t x) const {
    // x^den  vs  coef^den * base^num
    auto lhs = pow_sat(x, den_);
    auto rhs = mul_sat(pow_sat(coef_, den_), pow_sat(base_, num_));
    if (lhs && rhs) return *lhs < *rhs ? -1 : (*lhs > *rhs ? 1 : 0);
    // Saturated: fall back to logarithms, which cannot tie at these sizes.
    long double l = x == 0 ? -1e300L : den_ * std::log(static_cast<long double>(x));
    long double r = coef_ == 0 ? -1e300L
                               : den_ * std::log(static_cast<long double>(coef_)) +
                                     (base_ == 0 ? -1e300L : num_ * std::log(static_cast<long double>(base_)));
    return l < r ? -1 : 1;
  }

  /// x <= value.
  bool admits(std::uint64_t x) const { return compare(x) <= 0; }

  std::uint64_t floor() const {
    auto m = static_cast<std::uint64_t>(std::max(0.0, std::floor(value())));
    while (m > 0 && compare(m) > 0) --m;
    while (compare(m + 1) <= 0) ++m;
    return m;
  }

  std::uint64_t ceil() const {
    auto m = static_cast<std::uint64_t>(std::max(0.0, std::ceil(value())));
    while (compare(m) < 0) ++m;
    while (m > 0 && compare(m - 1) >= 0) --m;
    return m;
  }

  RootPower squared() const { return {coef_ * coef_, base_, 2 * num_, den_}; }

 private:
  using u128 = unsigned __int128;

  static std::optional<u128> mul_sat(std::optional<u128> a, std::optional<u128> b) {
    if (!a || !b) return std::nullopt;
    if (*a == 0 || *b == 0) return u128{0};
    constexpr u128 kMax = ~u128{0};
    if (*a > kMax / *b) return std::nullopt;
    return *a * *b;
  }

  static std::optional<u128> pow_sat(std::uint64_t base, std::uint32_t exp) {
    std::optional<u128> acc = u128{1};
    for (std::uint32_t i = 0; i < exp; ++i) {
      acc = mul_sat(acc, u128{base});
      if (!acc) return std::nullopt;
    }
    return acc;
  }

  std::uint64_t coef_;
  std::uint64_t base_;
  std::uint32_t num_;
  std::uint32_t den_;
};

/// Largest number of layers the plan supports; a_k must fit comfortably in 64 bits.
inline constexpr unsigned kMaxLayers = 20;

/// Even-diameter cap of layer l: a_0 = 2, a_l = 5 a_{l-1} + 14.
inline std::uint64_t diameter_cap(unsigned layer) {
  if (layer > kMaxLayers) throw std::out_of_range("layer index too large");
  std::uint64_t a = 2;
  for (unsigned l = 1; l <= layer; ++l) a = 5 * a + 14;
  return a;
}

/// Closed form (11 * 5^l - 7) / 2 of the same sequence.
inline std::uint64_t diameter_cap_closed_form(unsigned layer) {
  if (layer > kMaxLayers) throw std::out_of_range("layer index too large");
  std::uint64_t p = 1;
  for (unsigned l = 0; l < layer; ++l) p *= 5;
  return (11 * p - 7) / 2;
}

/// Odd girth the k-layer colorer needs: a_k + 5.
inline std::uint64_t required_odd_girth(unsigned k) { return diameter_cap(k) + 5; }

/// ceil(n^(2/(k+4))).
inline std::uint64_t first_fit_width(unsigned k, std::size_t n) {
  return RootPower(1, n, 2, k + 4).ceil();
}

/// Worst-case color count of the k-layer colorer on a valid n-vertex input:
/// 2 * ceil(n^(2/(k+4))) + k * (36 * ceil(n^(2/(k+4))) + 2).
inline std::uint64_t color_budget(unsigned k, std::size_t n) {
  if (n == 0) return 0;
  std::uint64_t c = first_fit_width(k, n);
  return 2 * c + static_cast<std::uint64_t>(k) * (36 * c + 2);
}

/// First-Fit bound k * ceil(n^(1/k)) for graphs of girth >= 2k + 1.
inline std::uint64_t first_fit_girth_bound(unsigned k, std::size_t n) {
  if (k == 0) throw std::invalid_argument("first-fit girth bound needs k >= 1");
  return k * RootPower(1, n, 1, k).ceil();
}

/// Tightest first-fit bound over all k with 2k + 1 <= girth.
inline std::uint64_t best_first_fit_bound(std::uint64_t girth, std::size_t n) {
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (unsigned k = 1; 2 * static_cast<std::uint64_t>(k) + 1 <= girth && k <= 64; ++k) {
    best = std::min(best, first_fit_girth_bound(k, n));
  }
  return best;
}

/// Test-only knobs that replace c and delta with fixed integers.  Budgets are
/// then derived from r*_0 = n / c and r*_{l+1} = 6 r*_l / delta.
struct PlanOverrides {
  std::optional<std::uint64_t> ff_colors;
  std::optional<std::uint64_t> delta;

  bool any() const { return ff_colors || delta; }
  friend bool operator==(const PlanOverrides&, const PlanOverrides&) = default;
};

class LayerPlan {
 public:
  LayerPlan(std::size_t n, unsigned k, PlanOverrides overrides = {})
      : n_(n), k_(k), overrides_(overrides), delta_(RootPower(6, n == 0 ? 1 : n, 1, k + 4)) {
    if (k > kMaxLayers) throw std::invalid_argument("at most " + std::to_string(kMaxLayers) + " layers");
    std::size_t nn = n == 0 ? 1 : n;
    ff_colors_ = overrides.ff_colors ? *overrides.ff_colors : first_fit_width(k, nn);
    if (ff_colors_ == 0) throw std::invalid_argument("First-Fit width must be positive");
    if (overrides.delta) delta_ = RootPower::constant(*overrides.delta);
    gc_block_ = delta_.squared().floor() + 2;

    if (!overrides.any()) {
      for (unsigned l = 0; l <= k; ++l) {
        RootPower r(1, nn, k + 2 - l, k + 4);
        r_star_.push_back(r.value());
        base_budget_.push_back(r.ceil());
      }
    } else {
      long double r = static_cast<long double>(nn) / static_cast<long double>(ff_colors_);
      long double d = static_cast<long double>(delta_.value());
      for (unsigned l = 0; l <= k; ++l) {
        r_star_.push_back(static_cast<double>(r));
        base_budget_.push_back(static_cast<std::uint64_t>(std::ceil(r - 1e-9L)));
        r = d > 0 ? 6 * r / d : std::numeric_limits<long double>::infinity();
        if (!std::isfinite(static_cast<double>(r))) r = static_cast<long double>(nn) * 6;
      }
    }
    for (unsigned l = 0; l <= k; ++l) d_star_.push_back(diameter_cap(l));
  }

  std::size_t n() const noexcept { return n_; }
  unsigned k() const noexcept { return k_; }
  const PlanOverrides& overrides() const noexcept { return overrides_; }

  Color ff_colors() const { return static_cast<Color>(ff_colors_); }
  const RootPower& delta() const noexcept { return delta_; }
  /// Palette size of one reducer's group coloring: floor(delta^2) + 2.
  Color gc_block() const { return static_cast<Color>(gc_block_); }

  std::uint64_t base_budget(unsigned layer) const { return base_budget_.at(layer); }
  double r_star(unsigned layer) const { return r_star_.at(layer); }
  std::uint64_t d_star(unsigned layer) const { return d_star_.at(layer); }

  Color terminal_block() const { return static_cast<Color>(base_budget_.at(k_)); }

  /// Colors before the first group-coloring block, i.e. the First-Fit block.
  Color gc_offset(unsigned layer) const { return ff_colors() + layer * gc_block(); }
  Color terminal_offset() const { return ff_colors() + k_ * gc_block(); }
  Color palette_size() const { return terminal_offset() + terminal_block(); }

 private:
  std::size_t n_;
  unsigned k_;
  PlanOverrides overrides_;
  RootPower delta_;
  std::uint64_t ff_colors_ = 0;
  std::uint64_t gc_block_ = 0;
  std::vector<std::uint64_t> base_budget_;
  std::vector<double> r_star_;
  std::vector<std::uint64_t> d_star_;
};

}  // namespace oddcolor

#endif  // ODDCOLOR_LAYER_PLAN_HPP
