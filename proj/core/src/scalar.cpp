#include "voa/scalar.hpp"

#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace voa {

namespace {

constexpr int64_t kMax = std::numeric_limits<int64_t>::max();

bool fits(__int128 v) { return v >= -static_cast<__int128>(kMax) && v <= kMax; }

uint64_t gcd64(uint64_t a, uint64_t b) { return std::gcd(a, b); }

uint64_t abs64(int64_t v) { return v < 0 ? uint64_t(0) - uint64_t(v) : uint64_t(v); }

mpz_class mpz_from_i128(__int128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? (unsigned __int128)0 - (unsigned __int128)v : (unsigned __int128)v;
  mpz_class hi = static_cast<unsigned long>(uint64_t(u >> 64));
  mpz_class lo = static_cast<unsigned long>(uint64_t(u));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

}  // namespace

Scalar::Scalar(long long num, long long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  assign128(num, den);
}

Scalar::Scalar(const mpq_class& q) { assign(q); }

void Scalar::assign128(__int128 n, __int128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (n == 0) {
    num_ = 0;
    den_ = 1;
    big_.reset();
    return;
  }
  unsigned __int128 a = n < 0 ? (unsigned __int128)(-n) : (unsigned __int128)n;
  unsigned __int128 b = (unsigned __int128)d;
  while (b) {
    unsigned __int128 t = a % b;
    a = b;
    b = t;
  }
  n /= (__int128)a;
  d /= (__int128)a;
  if (fits(n) && d <= kMax) {
    num_ = int64_t(n);
    den_ = int64_t(d);
    big_.reset();
    return;
  }
  mpq_class q(mpz_from_i128(n), mpz_from_i128(d));
  q.canonicalize();
  assign(q);
}

void Scalar::assign(const mpq_class& q) {
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != std::numeric_limits<long>::min()) {
    num_ = n.get_si();
    den_ = d.get_si();
    big_.reset();
  } else {
    num_ = 0;
    den_ = 1;
    big_ = std::make_shared<const mpq_class>(q);
  }
}

mpq_class Scalar::to_mpq() const {
  if (big_) return *big_;
  mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
  return q;
}

Scalar Scalar::parse(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty scalar");
  auto slash = s.find('/');
  mpz_class n, d(1);
  auto valid_int = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string ns = s.substr(0, slash);
  if (!ns.empty() && ns[0] == '+') ns = ns.substr(1);
  if (!valid_int(ns)) throw std::invalid_argument("bad scalar: " + s);
  n.set_str(ns, 10);
  if (slash != std::string::npos) {
    std::string ds = s.substr(slash + 1);
    if (!valid_int(ds)) throw std::invalid_argument("bad scalar: " + s);
    d.set_str(ds, 10);
    if (d == 0) throw std::invalid_argument("zero denominator: " + s);
  }
  mpq_class q(n, d);
  q.canonicalize();
  return Scalar(q);
}

std::string Scalar::str() const {
  if (big_) return big_->get_str(10);
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

double Scalar::to_double() const {
  if (big_) return big_->get_d();
  return double(num_) / double(den_);
}

bool Scalar::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Scalar::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

Scalar Scalar::operator-() const {
  Scalar r;
  if (big_) {
    r.assign(mpq_class(-*big_));
  } else {
    r.num_ = -num_;
    r.den_ = den_;
  }
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (big_) {
    Scalar r;
    r.assign(mpq_class(1 / *big_));
    return r;
  }
  Scalar r;
  r.assign128(den_, num_);
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (!big_ && !o.big_) {
    if (den_ == 1 && o.den_ == 1) {
      int64_t s;
      if (!__builtin_add_overflow(num_, o.num_, &s) && s != std::numeric_limits<int64_t>::min()) {
        num_ = s;
        return *this;
      }
      assign128(__int128(num_) + o.num_, 1);
      return *this;
    }
    uint64_t g = gcd64(uint64_t(den_), uint64_t(o.den_));
    if (g == 1) {
      __int128 n = __int128(num_) * o.den_ + __int128(o.num_) * den_;
      __int128 d = __int128(den_) * o.den_;
      if (fits(n) && d <= kMax) {
        num_ = int64_t(n);
        den_ = int64_t(d);
        if (num_ == 0) den_ = 1;
        return *this;
      }
      assign128(n, d);
      return *this;
    }
    __int128 t = __int128(num_) * (o.den_ / int64_t(g)) + __int128(o.num_) * (den_ / int64_t(g));
    __int128 r = t % __int128(g);
    if (r < 0) r = -r;
    uint64_t g2 = gcd64(uint64_t(r), g);
    __int128 n = t / __int128(g2);
    __int128 d = __int128(den_ / int64_t(g)) * (o.den_ / int64_t(g2));
    if (n == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    if (fits(n) && d <= kMax) {
      num_ = int64_t(n);
      den_ = int64_t(d);
      return *this;
    }
    assign128(n, d);
    return *this;
  }
  assign(mpq_class(to_mpq() + o.to_mpq()));
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (!big_ && !o.big_) {
    if (num_ == 0 || o.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    uint64_t g1 = gcd64(abs64(num_), uint64_t(o.den_));
    uint64_t g2 = gcd64(abs64(o.num_), uint64_t(den_));
    __int128 n = __int128(num_ / int64_t(g1)) * (o.num_ / int64_t(g2));
    __int128 d = __int128(den_ / int64_t(g2)) * (o.den_ / int64_t(g1));
    if (fits(n) && d <= kMax) {
      num_ = int64_t(n);
      den_ = int64_t(d);
      return *this;
    }
    mpq_class q(mpz_from_i128(n), mpz_from_i128(d));
    assign(q);
    return *this;
  }
  assign(mpq_class(to_mpq() * o.to_mpq()));
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (!a.big_ && !b.big_) {
    __int128 l = __int128(a.num_) * b.den_;
    __int128 r = __int128(b.num_) * a.den_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

Scalar binomial(long long p, long long j) {
  if (j < 0) return Scalar(0);
  if (p >= 0 && j > p) return Scalar(0);
  Scalar r(1);
  for (long long i = 0; i < j; ++i) r = r * Scalar(p - i) / Scalar(i + 1);
  return r;
}

Scalar factorial(long long n) {
  Scalar r(1);
  for (long long i = 2; i <= n; ++i) r *= Scalar(i);
  return r;
}

}  // namespace voa
