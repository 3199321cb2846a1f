#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tameline {

enum class Cmp { LT = -1, EQ = 0, GT = 1 };

// Ordinal notation in hereditary Cantor normal form, below epsilon_0:
// a finite sum w^e1*c1 + ... + w^ek*ck with e1 > e2 > ... > ek and ci >= 1.
// The empty sum is 0. Values are immutable once built.
struct Ordinal {
  struct Term {
    std::vector<Term> exponent;  // an Ordinal's term list, inlined
    std::uint64_t coeff = 1;
  };
  std::vector<Term> terms;

  Ordinal() = default;
  static Ordinal zero() { return Ordinal{}; }
  static Ordinal finite(std::uint64_t n);
  static Ordinal omega();
  // w^exp * coeff as a single-term ordinal. coeff >= 1.
  static Ordinal power(const Ordinal& exp, std::uint64_t coeff = 1);

  bool is_zero() const { return terms.empty(); }
  bool is_finite() const;
  // Defined only for finite values small enough to matter in practice.
  std::uint64_t finite_value() const;

  bool is_limit() const;     // nonzero and last exponent > 0
  Ordinal pred() const;      // throws PredOfLimit unless successor
  Ordinal succ() const;
  Ordinal add(const Ordinal& b) const;  // CNF ordinal addition (left absorbing)

  bool operator==(const Ordinal& b) const { return cmp(*this, b) == Cmp::EQ; }
  bool operator<(const Ordinal& b) const { return cmp(*this, b) == Cmp::LT; }
  bool operator<=(const Ordinal& b) const { return cmp(*this, b) != Cmp::GT; }

  static Cmp cmp(const Ordinal& a, const Ordinal& b);

  // Notation size: 1 for 0, otherwise 1 + sum(size(exp_i) + coeff_i).
  // Finite per value, and each size class is finite; drives enumerations.
  std::uint64_t size() const;

  std::string str() const;                    // DSL spelling, e.g. "w^2*3 + w + 4"
  static Ordinal parse(const std::string& text);
};

Ordinal ord_max(const Ordinal& a, const Ordinal& b);

// All ordinals of notation size exactly s, sorted ascending. Memoized.
const std::vector<Ordinal>& ordinals_of_size(std::uint64_t s);

// First n ordinals strictly below alpha, enumerated by notation size and,
// within a size class, ascending. Covers every ordinal < alpha eventually.
std::vector<Ordinal> enumerate_below(const Ordinal& alpha, std::size_t n);

struct TwoSidedIndex {
  bool above = false;  // false: left (ascending) copy; true: right (descending)
  Ordinal rank;
};

// Dovetailed prefix of alpha*: strict alternation below/above over the
// enumerate_below ranks. alpha must be a limit ordinal.
std::vector<TwoSidedIndex> two_sided_enum(const Ordinal& alpha, std::size_t n);

}  // namespace tameline
