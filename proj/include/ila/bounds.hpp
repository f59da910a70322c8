#pragma once

// Abstract bounds: one poset per sort. Cipher bounds are scheme specific.

#include <optional>
#include <string>
#include <variant>

#include "ila/ast.hpp"
#include "ila/numeric.hpp"

namespace ila {

struct MsgBound {
  bool operator==(const MsgBound&) const = default;
};

struct PlainBound {
  Rational inf, sup;
  bool operator==(const PlainBound&) const = default;
};

struct BgvCipherBound {
  Rational inf, sup, eps;
  int level = 0;
  bool operator==(const BgvCipherBound&) const = default;
};

struct BfvCipherBound {
  Rational inf, sup, eps;
  bool operator==(const BfvCipherBound&) const = default;
};

struct TfheCipherBound {
  CipherKind id = CipherKind::Lwe;
  Rational inf, sup, eps;
  bool operator==(const TfheCipherBound&) const = default;
};

using Bound = std::variant<MsgBound, PlainBound, BgvCipherBound, BfvCipherBound, TfheCipherBound>;

Sort bound_sort(const Bound& b);

// Interval and noise accessors; nullopt where the bound has no such field.
std::optional<std::pair<Rational, Rational>> interval_of(const Bound& b);
std::optional<Rational> noise_of(const Bound& b);
std::optional<int> level_of(const Bound& b);

enum class Order { Le, Ge, Eq, Incomparable };
std::string_view order_name(Order o);

// Throws std::invalid_argument when the sorts differ.
Order compare_bounds(const Bound& a, const Bound& b);
// a <= b; false (not an exception) across sorts.
bool bound_le(const Bound& a, const Bound& b);

// Least upper bound: interval hull and max noise. nullopt when the two have
// different sorts, schemes, levels or TFHE ids.
std::optional<Bound> join(const Bound& a, const Bound& b);

std::string describe(const Bound& b);

enum class FailureKind { Noise, Value, Level, Sort };
std::string_view failure_kind_name(FailureKind k);

// Why a bounds map is undefined: one violated condition.
struct BoundFailure {
  FailureKind kind = FailureKind::Sort;
  std::string condition;
  Rational measured;
  Rational threshold;
};

}  // namespace ila
