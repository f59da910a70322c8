#include "ila/bounds.hpp"

#include <cstdio>
#include <stdexcept>

namespace ila {

namespace {

// Product order on (interval containment, eps).
Order combine(bool le, bool ge) {
  if (le && ge) return Order::Eq;
  if (le) return Order::Le;
  if (ge) return Order::Ge;
  return Order::Incomparable;
}

bool contains(const Rational& inf, const Rational& sup, const Rational& inf2, const Rational& sup2) {
  return inf <= inf2 && sup2 <= sup;
}

template <class B>
Order compare_interval_eps(const B& a, const B& b) {
  bool le = contains(b.inf, b.sup, a.inf, a.sup) && a.eps <= b.eps;
  bool ge = contains(a.inf, a.sup, b.inf, b.sup) && b.eps <= a.eps;
  return combine(le, ge);
}

std::string interval(const Rational& inf, const Rational& sup) {
  return "[" + to_string(inf) + ", " + to_string(sup) + "]";
}

std::string eps_text(const Rational& eps) {
  if (eps > 0 && bit_length(eps.get_num()) > 40) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "2^%.2f", log2_of(eps));
    return buf;
  }
  return to_string(eps);
}

}  // namespace

Sort bound_sort(const Bound& b) {
  switch (b.index()) {
    case 0: return Sort::Msg;
    case 1: return Sort::Plain;
    default: return Sort::Cipher;
  }
}

std::optional<std::pair<Rational, Rational>> interval_of(const Bound& b) {
  return std::visit(
      [](const auto& x) -> std::optional<std::pair<Rational, Rational>> {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, MsgBound>) return std::nullopt;
        else return std::make_pair(x.inf, x.sup);
      },
      b);
}

std::optional<Rational> noise_of(const Bound& b) {
  if (auto* c = std::get_if<BgvCipherBound>(&b)) return c->eps;
  if (auto* c = std::get_if<BfvCipherBound>(&b)) return c->eps;
  if (auto* c = std::get_if<TfheCipherBound>(&b)) return c->eps;
  return std::nullopt;
}

std::optional<int> level_of(const Bound& b) {
  if (auto* c = std::get_if<BgvCipherBound>(&b)) return c->level;
  return std::nullopt;
}

std::string_view order_name(Order o) {
  switch (o) {
    case Order::Le: return "LE";
    case Order::Ge: return "GE";
    case Order::Eq: return "EQ";
    case Order::Incomparable: return "INCOMPARABLE";
  }
  return "?";
}

Order compare_bounds(const Bound& a, const Bound& b) {
  if (a.index() != b.index()) throw std::invalid_argument("compare_bounds: bounds of different sorts");
  switch (a.index()) {
    case 0: return Order::Eq;
    case 1: {
      const auto& x = std::get<PlainBound>(a);
      const auto& y = std::get<PlainBound>(b);
      return combine(contains(y.inf, y.sup, x.inf, x.sup), contains(x.inf, x.sup, y.inf, y.sup));
    }
    case 2: {
      const auto& x = std::get<BgvCipherBound>(a);
      const auto& y = std::get<BgvCipherBound>(b);
      if (x.level != y.level) return Order::Incomparable;
      return compare_interval_eps(x, y);
    }
    case 3: return compare_interval_eps(std::get<BfvCipherBound>(a), std::get<BfvCipherBound>(b));
    default: {
      const auto& x = std::get<TfheCipherBound>(a);
      const auto& y = std::get<TfheCipherBound>(b);
      if (x.id != y.id) return Order::Incomparable;
      return compare_interval_eps(x, y);
    }
  }
}

bool bound_le(const Bound& a, const Bound& b) {
  if (a.index() != b.index()) return false;
  Order o = compare_bounds(a, b);
  return o == Order::Le || o == Order::Eq;
}

std::optional<Bound> join(const Bound& a, const Bound& b) {
  if (a.index() != b.index()) return std::nullopt;
  auto hull = [](auto x, const auto& y) {
    x.inf = std::min(x.inf, y.inf);
    x.sup = std::max(x.sup, y.sup);
    return x;
  };
  switch (a.index()) {
    case 0: return a;
    case 1: return Bound{hull(std::get<PlainBound>(a), std::get<PlainBound>(b))};
    case 2: {
      const auto& y = std::get<BgvCipherBound>(b);
      auto x = std::get<BgvCipherBound>(a);
      if (x.level != y.level) return std::nullopt;
      x = hull(x, y);
      x.eps = std::max(x.eps, y.eps);
      return Bound{x};
    }
    case 3: {
      const auto& y = std::get<BfvCipherBound>(b);
      auto x = hull(std::get<BfvCipherBound>(a), y);
      x.eps = std::max(x.eps, y.eps);
      return Bound{x};
    }
    default: {
      const auto& y = std::get<TfheCipherBound>(b);
      auto x = std::get<TfheCipherBound>(a);
      if (x.id != y.id) return std::nullopt;
      x = hull(x, y);
      x.eps = std::max(x.eps, y.eps);
      return Bound{x};
    }
  }
}

std::string describe(const Bound& b) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, MsgBound>) return "msg";
        else if constexpr (std::is_same_v<T, PlainBound>) return "plain " + interval(x.inf, x.sup);
        else if constexpr (std::is_same_v<T, BgvCipherBound>)
          return "cipher " + interval(x.inf, x.sup) + " eps=" + eps_text(x.eps) + " level=" +
                 std::to_string(x.level);
        else if constexpr (std::is_same_v<T, BfvCipherBound>)
          return "cipher " + interval(x.inf, x.sup) + " eps=" + eps_text(x.eps);
        else
          return "cipher<" + std::string(kind_name(x.id)) + "> " + interval(x.inf, x.sup) +
                 " eps=" + eps_text(x.eps);
      },
      b);
}

std::string_view failure_kind_name(FailureKind k) {
  switch (k) {
    case FailureKind::Noise: return "noise";
    case FailureKind::Value: return "value";
    case FailureKind::Level: return "level";
    case FailureKind::Sort: return "sort";
  }
  return "?";
}

}  // namespace ila
