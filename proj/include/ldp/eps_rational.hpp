#pragma once

#include "ldp/rational.hpp"

#include <compare>
#include <string>

namespace ldp {

/// Element of Q[eps]/(eps^2): std + eps * eps_part, ordered lexicographically.
///
/// The infinitesimal keeps strict inequalities strict through the hunt's
/// scaling step; a concrete small value could not.
class EpsRational {
 public:
  EpsRational() = default;
  EpsRational(Rational std_part) : std_(std::move(std_part)) {}  // NOLINT
  EpsRational(long long n) : std_(n) {}                          // NOLINT
  EpsRational(Rational std_part, Rational eps_part)
      : std_(std::move(std_part)), eps_(std::move(eps_part)) {}

  static EpsRational eps() { return EpsRational(Rational(0), Rational(1)); }

  const Rational& std() const { return std_; }
  const Rational& eps_part() const { return eps_; }
  bool is_zero() const { return std_.is_zero() && eps_.is_zero(); }
  bool is_pure() const { return eps_.is_zero(); }

  EpsRational operator-() const { return {-std_, -eps_}; }

  friend EpsRational operator+(const EpsRational& a, const EpsRational& b) {
    return {a.std_ + b.std_, a.eps_ + b.eps_};
  }
  friend EpsRational operator-(const EpsRational& a, const EpsRational& b) {
    return {a.std_ - b.std_, a.eps_ - b.eps_};
  }
  // (x + eps y)(u + eps v) = xu + eps(xv + yu), eps^2 = 0.
  friend EpsRational operator*(const EpsRational& a, const EpsRational& b) {
    return {a.std_ * b.std_, a.std_ * b.eps_ + a.eps_ * b.std_};
  }
  // 1/(u + eps v) = 1/u - eps v/u^2, needs u != 0.
  friend EpsRational operator/(const EpsRational& a, const EpsRational& b) {
    if (b.std_.is_zero())
      fail(ErrorKind::DegenerateRay, "division by infinitesimal or zero");
    Rational inv_std = Rational(1) / b.std_;
    EpsRational inv(inv_std, -b.eps_ * inv_std * inv_std);
    return a * inv;
  }

  EpsRational& operator+=(const EpsRational& o) { return *this = *this + o; }
  EpsRational& operator-=(const EpsRational& o) { return *this = *this - o; }
  EpsRational& operator*=(const EpsRational& o) { return *this = *this * o; }

  friend bool operator==(const EpsRational& a, const EpsRational& b) {
    return a.std_ == b.std_ && a.eps_ == b.eps_;
  }
  friend std::strong_ordering operator<=>(const EpsRational& a, const EpsRational& b) {
    auto c = a.std_ <=> b.std_;
    return c != std::strong_ordering::equal ? c : a.eps_ <=> b.eps_;
  }

  /// "p/q" when the eps part vanishes, otherwise "p/q+(r/s)e".
  std::string str() const {
    if (eps_.is_zero()) return std_.str();
    return std_.str() + "+(" + eps_.str() + ")e";
  }

  friend std::ostream& operator<<(std::ostream& os, const EpsRational& r) {
    return os << r.str();
  }

 private:
  Rational std_;
  Rational eps_;
};

}  // namespace ldp
