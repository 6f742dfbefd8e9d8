#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace voa {

// Exact rational. Values that fit in int64 numerator/denominator stay
// unboxed; anything larger lives in a shared immutable mpq_class. The
// representation is canonical, so two equal values always compare equal
// field by field.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int v) : num_(v) {}
  Scalar(long v) : num_(v) {}
  Scalar(long long v) : num_(v) {}
  Scalar(long long num, long long den);
  explicit Scalar(const mpq_class& q);

  // "p/q" or "p"; throws std::invalid_argument on malformed text
  static Scalar parse(std::string_view text);

  std::string str() const;
  double to_double() const;
  mpq_class to_mpq() const;

  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  bool is_integer() const;
  int sign() const;

  Scalar operator-() const;
  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

 private:
  void assign(const mpq_class& q);
  void assign128(__int128 n, __int128 d);

  int64_t num_ = 0;
  int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// C(p, j) for any integer p (negative allowed) and j >= 0
Scalar binomial(long long p, long long j);
Scalar factorial(long long n);

}  // namespace voa
