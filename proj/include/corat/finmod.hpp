#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "corat/intmat.hpp"
#include "corat/ring.hpp"

namespace corat {

// Finitely generated module over Z/m or Q in invariant-factor form.
// Over Z/m: factors form an ascending divisibility chain, each >= 2 and
// dividing m. Over Q: every factor is 0 (free of rank size()).
struct FinMod {
  BaseRing ring;
  std::vector<std::int64_t> factors;

  int ngens() const { return static_cast<int>(factors.size()); }
  bool operator==(const FinMod& o) const = default;

  static FinMod zero(const BaseRing& r) { return FinMod{r, {}}; }
  // R as a module over itself
  static FinMod unit(const BaseRing& r) {
    return FinMod{r, {r.is_zmod() ? r.modulus : 0}};
  }
  static FinMod free_of_rank(const BaseRing& r, int n) {
    return FinMod{r, std::vector<std::int64_t>(n, r.is_zmod() ? r.modulus : 0)};
  }
  // validated construction (throws TypeMismatch unless canonical)
  static FinMod of(const BaseRing& r, std::vector<std::int64_t> fs);

  // element count; nullopt when infinite (nonzero module over Q)
  std::optional<mpz_class> card() const;
};

using Elem = std::vector<mpq_class>; // generator coordinates

Elem elem_reduce(const FinMod& m, Elem x);
Elem elem_zero(const FinMod& m);
Elem elem_add(const FinMod& m, const Elem& x, const Elem& y);
Elem elem_scale(const FinMod& m, const mpq_class& c, const Elem& x);

// Morphism of modules. matrix is target.ngens() x source.ngens(), column j =
// image of source generator j; entries are canonical residues mod the target
// row order (exact rationals over Q). Entry (i,j) must satisfy
// source.factors[j] * m(i,j) == 0 mod target.factors[i].
struct ModMorphism {
  FinMod source, target;
  bool packed = true;                 // int64 entries (Z/m with m < 2^31)
  std::vector<std::int64_t> ai;       // packed storage
  std::vector<mpq_class> aq;          // exact storage

  mpq_class at(int i, int j) const {
    size_t ix = static_cast<size_t>(i) * source.ngens() + j;
    return packed ? mpq_class(static_cast<long>(ai[ix])) : aq[ix];
  }
  bool operator==(const ModMorphism& o) const = default;
};

ModMorphism mor(const FinMod& src, const FinMod& dst, const std::vector<mpq_class>& entries);
ModMorphism mor64(const FinMod& src, const FinMod& dst, const std::vector<std::int64_t>& entries);
ModMorphism mor_zero(const FinMod& src, const FinMod& dst);
ModMorphism identity(const FinMod& m);
ModMorphism compose(const ModMorphism& g, const ModMorphism& f); // g after f
ModMorphism mor_add(const ModMorphism& f, const ModMorphism& g);
ModMorphism mor_sub(const ModMorphism& f, const ModMorphism& g);
Elem apply_mor(const ModMorphism& f, const Elem& x);

struct SumData {
  FinMod sum;
  ModMorphism inj1, inj2, proj1, proj2;
};
SumData direct_sum(const FinMod& m, const FinMod& n);

// --- tensor product -------------------------------------------------------
// Raw generators of M (x) N are pairs (i,j), i outer, with order
// gcd(order_i, order_j); trivial pairs drop out and the remaining list is
// re-canonicalized. All identification maps below are deterministic.
FinMod tensor(const FinMod& m, const FinMod& n);
ModMorphism tensor_mor(const ModMorphism& f, const ModMorphism& g);
ModMorphism swap_mor(const FinMod& m, const FinMod& n); // M(x)N -> N(x)M
ModMorphism assoc(const FinMod& m, const FinMod& n, const FinMod& p);     // (M(x)N)(x)P -> M(x)(N(x)P)
ModMorphism assoc_inv(const FinMod& m, const FinMod& n, const FinMod& p);
ModMorphism lunit(const FinMod& m);     // R(x)M -> M
ModMorphism lunit_inv(const FinMod& m);
ModMorphism runit(const FinMod& m);     // M(x)R -> M
ModMorphism runit_inv(const FinMod& m);

// canonical coordinates of the pure tensor e_i (x) e_j in tensor(M, N)
Elem tensor_coords(const FinMod& m, const FinMod& n, int i, int j);
// build M -> tensor(A, B) from raw-pair columns: cols[j] has length
// A.ngens()*B.ngens() (raw grid, i-outer), giving the image of e_j
ModMorphism mor_to_tensor(const FinMod& m, const FinMod& a, const FinMod& b,
                          const std::vector<std::vector<mpq_class>>& cols);
// build tensor(A, B) -> T from images of the raw pure tensors e_i (x) e_j
ModMorphism mor_from_tensor(const FinMod& a, const FinMod& b, const FinMod& t,
                            const std::vector<Elem>& images);

// --- internal hom ---------------------------------------------------------
// Raw generators of hom(M, N) are pairs (j,i) (source-major) with order
// gcd(order_j, order_i); generator (j,i) is the morphism e_j -> cogen * e_i
// where cogen = order_i / gcd (1 over Q). Canonicalized like tensor.
FinMod hom_module(const FinMod& m, const FinMod& n);
Elem hom_encode(const ModMorphism& f);
ModMorphism hom_decode(const FinMod& m, const FinMod& n, const Elem& coords);
ModMorphism eval_mor(const FinMod& x, const FinMod& z); // hom(X,Z)(x)X -> Z
// curry of f : Y(x)X -> Z (f.source must equal tensor(y, x))
ModMorphism curry(const ModMorphism& f, const FinMod& y, const FinMod& x);
// inverse: g : Y -> hom(X,Z) back to Y(x)X -> Z
ModMorphism uncurry(const ModMorphism& g, const FinMod& x, const FinMod& z);
ModMorphism hom_post(const FinMod& w, const ModMorphism& g); // hom(W,X) -> hom(W,Z), phi -> g.phi
ModMorphism hom_pre(const ModMorphism& f, const FinMod& x);  // hom(W,X) -> hom(W',X), phi -> phi.f

// --- limits and colimits ---------------------------------------------------
struct SubData {
  FinMod obj;
  ModMorphism incl; // obj -> ambient, mono
};
struct QuotData {
  FinMod obj;
  ModMorphism proj; // ambient -> obj, epi
};
struct ImageData {
  FinMod obj;
  ModMorphism incl; // obj -> target, mono
  ModMorphism proj; // source -> obj, epi; incl . proj == f
};
struct PullbackData {
  FinMod obj;
  ModMorphism p1, p2;
};
struct PushoutData {
  FinMod obj;
  ModMorphism q1, q2;
};

SubData kernel(const ModMorphism& f);
QuotData cokernel(const ModMorphism& f);
ImageData image(const ModMorphism& f);
SubData equaliser(const ModMorphism& f, const ModMorphism& g);    // kernel(f - g)
QuotData coequaliser(const ModMorphism& f, const ModMorphism& g); // cokernel(f - g)
PullbackData pullback(const ModMorphism& f, const ModMorphism& g); // f: X->Z, g: Y->Z
PushoutData pushout(const ModMorphism& f, const ModMorphism& g);   // f: Z->X, g: Z->Y

bool is_mono(const ModMorphism& f);
bool is_epi(const ModMorphism& f);
struct IsoCheck {
  bool iso = false;
  ModMorphism inverse;
};
IsoCheck is_iso(const ModMorphism& f);

// solve f(x) = y; nullopt when unsolvable
std::optional<Elem> solve_elem(const ModMorphism& f, const Elem& y);
// g with incl . g = f (precondition: incl mono); nullopt when f does not land
// in the image of incl
std::optional<ModMorphism> factor_through_mono(const ModMorphism& f, const ModMorphism& incl);
// g with g . proj = f (precondition: proj epi); nullopt when ker proj is not
// killed by f
std::optional<ModMorphism> factor_through_epi(const ModMorphism& f, const ModMorphism& proj);
// mutual factorization of two monos into the same target
bool same_submodule(const ModMorphism& m1, const ModMorphism& m2);

// all elements in lexicographic generator-coordinate order; throws TooLarge
// past the bound and InfiniteRing for nonzero modules over Q
std::vector<Elem> enumerate_elements(const FinMod& m, std::uint64_t bound);
bool is_projective(const FinMod& m);

} // namespace corat
