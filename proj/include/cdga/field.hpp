#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cdga {

/// Exact rational scalar. Values are kept canonical (reduced, positive
/// denominator) by GMP itself.
using Rational = mpq_class;

/// Prime field element with an odd prime modulus chosen at runtime.
///
/// An element either carries its modulus or is an "unbound" integer literal
/// (p == 0). Literals adopt the modulus of the first bound operand they meet,
/// which lets field-generic code write K(0), K(1), K(-1) without threading a
/// field context through every call.
struct Fp {
  long long v = 0;
  std::uint64_t p = 0;

  Fp() = default;
  Fp(long long value) : v(value) {}
  Fp(long long value, std::uint64_t mod) : v(value), p(mod) { reduce(); }

  void reduce() {
    if (p == 0) return;
    long long m = static_cast<long long>(p);
    v %= m;
    if (v < 0) v += m;
  }

  bool bound() const { return p != 0; }

  friend std::uint64_t commonModulus(const Fp& a, const Fp& b) {
    if (a.p && b.p && a.p != b.p)
      throw std::logic_error("mixed prime field moduli");
    return a.p ? a.p : b.p;
  }

  Fp bind(std::uint64_t mod) const {
    if (p != 0) return *this;
    return Fp(v, mod);
  }

  friend Fp operator+(const Fp& a, const Fp& b) {
    std::uint64_t m = commonModulus(a, b);
    if (m == 0) return Fp(a.v + b.v);
    return Fp(a.bind(m).v + b.bind(m).v, m);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    std::uint64_t m = commonModulus(a, b);
    if (m == 0) return Fp(a.v - b.v);
    return Fp(a.bind(m).v - b.bind(m).v, m);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    std::uint64_t m = commonModulus(a, b);
    if (m == 0) return Fp(a.v * b.v);
    return Fp(a.bind(m).v * b.bind(m).v, m);
  }
  Fp operator-() const { return p ? Fp(-v, p) : Fp(-v); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }

  friend bool operator==(const Fp& a, const Fp& b) {
    std::uint64_t m = commonModulus(a, b);
    if (m == 0) return a.v == b.v;
    return a.bind(m).v == b.bind(m).v;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
};

inline Fp inverse(const Fp& a) {
  if (!a.bound()) {
    // Only +1 and -1 are invertible in every modulus, so only they have a
    // modulus-agnostic inverse (their own value).
    if (a.v == 1 || a.v == -1) return a;
    throw std::logic_error("cannot invert an unbound literal without a modulus");
  }
  long long m = static_cast<long long>(a.p);
  long long r0 = m, r1 = a.v % m, s0 = 0, s1 = 1;
  if (r1 < 0) r1 += m;
  if (r1 == 0) throw std::domain_error("division by zero in F_p");
  while (r1 != 0) {
    long long q = r0 / r1;
    long long r2 = r0 - q * r1;
    long long s2 = s0 - q * s1;
    r0 = r1; r1 = r2; s0 = s1; s1 = s2;
  }
  return Fp(s0, a.p);
}

inline Fp operator/(const Fp& a, const Fp& b) {
  std::uint64_t m = commonModulus(a, b);
  if (m == 0) throw std::logic_error("literal/literal division in F_p");
  return a.bind(m) * inverse(b.bind(m));
}

inline bool isZero(const Fp& a) { return a.bound() ? a.v == 0 : a.v == 0; }
inline bool isZero(const Rational& a) { return sgn(a) == 0; }

inline Rational inverse(const Rational& a) {
  if (isZero(a)) throw std::domain_error("division by zero in Q");
  return 1 / a;
}

/// Runtime description of the scalar field, as it appears in documents.
struct FieldSpec {
  enum class Kind { Q, Fp } kind = Kind::Q;
  std::uint64_t p = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec primeField(std::uint64_t p) {
    FieldSpec s;
    s.kind = Kind::Fp;
    s.p = p;
    if (p < 3 || p % 2 == 0)
      throw std::invalid_argument("prime field modulus must be an odd prime (characteristic 2 unsupported)");
    for (std::uint64_t q = 3; q * q <= p; q += 2)
      if (p % q == 0) throw std::invalid_argument("prime field modulus must be prime");
    return s;
  }

  /// Parses "Q" or "Fp:<p>".
  static FieldSpec parse(std::string_view s) {
    if (s == "Q") return rationals();
    if (s.rfind("Fp:", 0) == 0) {
      std::uint64_t p = 0;
      for (char c : s.substr(3)) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad field spec: " + std::string(s));
        p = p * 10 + static_cast<std::uint64_t>(c - '0');
        if (p > (1ull << 20)) throw std::invalid_argument("prime field modulus too large");
      }
      return primeField(p);
    }
    throw std::invalid_argument("bad field spec: " + std::string(s));
  }

  std::string str() const {
    return kind == Kind::Q ? "Q" : "Fp:" + std::to_string(p);
  }
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

template <class K>
struct FieldOps;

template <>
struct FieldOps<Rational> {
  static Rational parse(std::string_view s, const FieldSpec&) {
    std::string t(s);
    if (t.empty()) throw std::invalid_argument("empty scalar");
    mpq_class q;
    if (q.set_str(t, 10) != 0)
      throw std::invalid_argument("bad rational scalar: " + t);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + t);
    q.canonicalize();
    return q;
  }
  static std::string str(const Rational& x) { return x.get_str(); }
  static Rational fromInt(long long n, const FieldSpec&) {
    return Rational(static_cast<long>(n));
  }
};

template <>
struct FieldOps<Fp> {
  static Fp parse(std::string_view s, const FieldSpec& spec) {
    std::string t(s);
    std::size_t slash = t.find('/');
    if (slash != std::string::npos) {
      Fp num = parse(t.substr(0, slash), spec);
      Fp den = parse(t.substr(slash + 1), spec);
      return num / den;
    }
    try {
      return Fp(std::stoll(t), spec.p);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad F_p scalar: " + t);
    }
  }
  static std::string str(const Fp& x) { return std::to_string(x.v); }
  static Fp fromInt(long long n, const FieldSpec& spec) { return Fp(n, spec.p); }
};

template <class K>
concept ScalarField = requires(K a, K b) {
  { a + b } -> std::convertible_to<K>;
  { a - b } -> std::convertible_to<K>;
  { a * b } -> std::convertible_to<K>;
  { a / b } -> std::convertible_to<K>;
  { -a } -> std::convertible_to<K>;
  { a == b } -> std::convertible_to<bool>;
  { isZero(a) } -> std::convertible_to<bool>;
  K(0);
  K(1);
};

}  // namespace cdga
