#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "corat/error.hpp"

namespace corat {

// Base ring of scalars: Z/m (m >= 2) or Q.
struct BaseRing {
  enum class Kind { ZMod, Rationals } kind = Kind::ZMod;
  std::int64_t modulus = 0; // only meaningful for ZMod

  static BaseRing zmod(std::int64_t m) {
    if (m < 2) throw Error(ErrKind::TypeMismatch, "modulus must be >= 2");
    return BaseRing{Kind::ZMod, m};
  }
  static BaseRing rationals() { return BaseRing{Kind::Rationals, 0}; }

  bool is_zmod() const { return kind == Kind::ZMod; }
  bool operator==(const BaseRing& o) const = default;
  std::string str() const {
    return is_zmod() ? "Z/" + std::to_string(modulus) : "Q";
  }
};

inline void require_same_ring(const BaseRing& a, const BaseRing& b) {
  if (!(a == b))
    throw Error(ErrKind::TypeMismatch,
                "ring mismatch: " + a.str() + " vs " + b.str());
}

// A scalar tagged with its ring. For Z/m the value is the canonical residue
// in [0, m); for Q it is a reduced fraction.
struct Scalar {
  BaseRing ring;
  mpq_class v;

  static Scalar make(const BaseRing& r, const mpq_class& x) {
    Scalar s{r, x};
    s.reduce();
    return s;
  }
  void reduce() {
    if (ring.is_zmod()) {
      if (v.get_den() != 1)
        throw Error(ErrKind::TypeMismatch, "fraction in Z/" + std::to_string(ring.modulus));
      mpz_class m(static_cast<long>(ring.modulus));
      mpz_class r;
      mpz_mod(r.get_mpz_t(), v.get_num().get_mpz_t(), m.get_mpz_t());
      v = mpq_class(r);
    }
  }
  bool operator==(const Scalar& o) const { return ring == o.ring && v == o.v; }
};

inline Scalar sc_add(const Scalar& a, const Scalar& b) {
  require_same_ring(a.ring, b.ring);
  return Scalar::make(a.ring, a.v + b.v);
}
inline Scalar sc_sub(const Scalar& a, const Scalar& b) {
  require_same_ring(a.ring, b.ring);
  return Scalar::make(a.ring, a.v - b.v);
}
inline Scalar sc_mul(const Scalar& a, const Scalar& b) {
  require_same_ring(a.ring, b.ring);
  return Scalar::make(a.ring, a.v * b.v);
}
inline Scalar sc_neg(const Scalar& a) { return Scalar::make(a.ring, -a.v); }

inline bool sc_is_unit(const Scalar& a) {
  if (!a.ring.is_zmod()) return a.v != 0;
  mpz_class g;
  mpz_class m(static_cast<long>(a.ring.modulus));
  mpz_gcd(g.get_mpz_t(), a.v.get_num().get_mpz_t(), m.get_mpz_t());
  return g == 1;
}

// Throws NonInvertible when the element has no multiplicative inverse.
inline Scalar sc_inv(const Scalar& a) {
  if (!a.ring.is_zmod()) {
    if (a.v == 0) throw Error(ErrKind::NonInvertible, "1/0 in Q");
    return Scalar::make(a.ring, 1 / a.v);
  }
  mpz_class m(static_cast<long>(a.ring.modulus)), r;
  if (!mpz_invert(r.get_mpz_t(), a.v.get_num().get_mpz_t(), m.get_mpz_t()))
    throw Error(ErrKind::NonInvertible,
                a.v.get_str() + " has no inverse mod " + std::to_string(a.ring.modulus));
  return Scalar::make(a.ring, mpq_class(r));
}

inline Scalar sc_of_int(const BaseRing& r, long x) {
  return Scalar::make(r, mpq_class(x));
}

// Canonical residue of z modulo m (in [0, m)); identity when m == 0.
inline mpz_class zmod_reduce(const mpz_class& z, std::int64_t m) {
  if (m == 0) return z;
  mpz_class mm(static_cast<long>(m)), r;
  mpz_mod(r.get_mpz_t(), z.get_mpz_t(), mm.get_mpz_t());
  return r;
}

} // namespace corat
