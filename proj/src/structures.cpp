#include "corat/structures.hpp"

#include <numeric>
#include <random>
#include <sstream>

#include "corat/error.hpp"

namespace corat {

std::string elem_str(const Elem& e) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < e.size(); ++i) {
    if (i) os << ", ";
    os << e[i].get_str();
  }
  os << ")";
  return os.str();
}

std::optional<std::string> morphism_diff(const ModMorphism& a, const ModMorphism& b) {
  if (!(a.source == b.source) || !(a.target == b.target))
    throw Error(ErrKind::TypeMismatch, "morphism_diff: morphisms are not parallel");
  for (int j = 0; j < a.source.ngens(); ++j) {
    bool same = true;
    for (int i = 0; i < a.target.ngens(); ++i)
      if (a.at(i, j) != b.at(i, j)) { same = false; break; }
    if (same) continue;
    Elem ca(a.target.ngens()), cb(b.target.ngens());
    for (int i = 0; i < a.target.ngens(); ++i) { ca[i] = a.at(i, j); cb[i] = b.at(i, j); }
    std::ostringstream os;
    os << "generator " << j << ": " << elem_str(ca) << " vs " << elem_str(cb);
    return os.str();
  }
  return std::nullopt;
}

namespace {

void law(Report& rep, const std::string& name, const ModMorphism& lhs, const ModMorphism& rhs) {
  auto w = morphism_diff(lhs, rhs);
  rep.add(name, !w.has_value(), std::move(w));
}

void need(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrKind::TypeMismatch, what);
}

}  // namespace

Report check_algebra(const Algebra& a) {
  const FinMod& A = a.carrier;
  const FinMod U = FinMod::unit(A.ring);
  need(a.mult.source == tensor(A, A) && a.mult.target == A,
       "mult must map carrier (x) carrier -> carrier");
  need(a.unit.source == U && a.unit.target == A, "unit must map R -> carrier");
  const ModMorphism id = identity(A);
  Report rep;
  law(rep, "associativity",
      compose(a.mult, tensor_mor(a.mult, id)),
      compose(a.mult, compose(tensor_mor(id, a.mult), assoc(A, A, A))));
  law(rep, "left unit", compose(a.mult, compose(tensor_mor(a.unit, id), lunit_inv(A))), id);
  law(rep, "right unit", compose(a.mult, compose(tensor_mor(id, a.unit), runit_inv(A))), id);
  return rep;
}

Report check_coalgebra(const Coalgebra& c) {
  const FinMod& C = c.carrier;
  const FinMod U = FinMod::unit(C.ring);
  need(c.comult.source == C && c.comult.target == tensor(C, C),
       "comult must map carrier -> carrier (x) carrier");
  need(c.counit.source == C && c.counit.target == U, "counit must map carrier -> R");
  const ModMorphism id = identity(C);
  Report rep;
  law(rep, "coassociativity",
      compose(assoc(C, C, C), compose(tensor_mor(c.comult, id), c.comult)),
      compose(tensor_mor(id, c.comult), c.comult));
  law(rep, "left counit", compose(lunit(C), compose(tensor_mor(c.counit, id), c.comult)), id);
  law(rep, "right counit", compose(runit(C), compose(tensor_mor(id, c.counit), c.comult)), id);
  return rep;
}

Report check_module(const ModuleAction& m) {
  const FinMod& A = m.alg.carrier;
  const FinMod& V = m.carrier;
  require_same_ring(A.ring, V.ring);
  need(m.action.source == tensor(A, V) && m.action.target == V,
       "action must map algebra (x) carrier -> carrier");
  const ModMorphism idA = identity(A);
  const ModMorphism idV = identity(V);
  Report rep;
  law(rep, "action associativity",
      compose(m.action, tensor_mor(m.alg.mult, idV)),
      compose(m.action, compose(tensor_mor(idA, m.action), assoc(A, A, V))));
  law(rep, "action unit",
      compose(m.action, compose(tensor_mor(m.alg.unit, idV), lunit_inv(V))), idV);
  return rep;
}

Report check_comodule(const Comodule& m) {
  const FinMod& C = m.coa.carrier;
  const FinMod& V = m.carrier;
  require_same_ring(C.ring, V.ring);
  need(m.coaction.source == V && m.coaction.target == tensor(C, V),
       "coaction must map carrier -> coalgebra (x) carrier");
  const ModMorphism idC = identity(C);
  const ModMorphism idV = identity(V);
  Report rep;
  law(rep, "coaction coassociativity",
      compose(assoc(C, C, V), compose(tensor_mor(m.coa.comult, idV), m.coaction)),
      compose(tensor_mor(idC, m.coaction), m.coaction));
  law(rep, "coaction counit",
      compose(lunit(V), compose(tensor_mor(m.coa.counit, idV), m.coaction)), idV);
  return rep;
}

bool is_algebra_morphism(const Algebra& a, const Algebra& b, const ModMorphism& f) {
  if (!(f.source == a.carrier) || !(f.target == b.carrier)) return false;
  if (!(compose(f, a.mult) == compose(b.mult, tensor_mor(f, f)))) return false;
  return compose(f, a.unit) == b.unit;
}

bool is_coalgebra_morphism(const Coalgebra& a, const Coalgebra& b, const ModMorphism& f) {
  if (!(f.source == a.carrier) || !(f.target == b.carrier)) return false;
  if (!(compose(tensor_mor(f, f), a.comult) == compose(b.comult, f))) return false;
  return compose(b.counit, f) == a.counit;
}

bool is_module_morphism(const ModuleAction& a, const ModuleAction& b, const ModMorphism& f) {
  if (!(a.alg.carrier == b.alg.carrier) || !(a.alg.mult == b.alg.mult) ||
      !(a.alg.unit == b.alg.unit))
    return false;
  if (!(f.source == a.carrier) || !(f.target == b.carrier)) return false;
  return compose(f, a.action) == compose(b.action, tensor_mor(identity(a.alg.carrier), f));
}

bool is_comodule_morphism(const Comodule& a, const Comodule& b, const ModMorphism& f) {
  if (!(a.coa.carrier == b.coa.carrier) || !(a.coa.comult == b.coa.comult) ||
      !(a.coa.counit == b.coa.counit))
    return false;
  if (!(f.source == a.carrier) || !(f.target == b.carrier)) return false;
  return compose(b.coaction, f) == compose(tensor_mor(identity(a.coa.carrier), f), a.coaction);
}

Coalgebra group_like(const BaseRing& ring) {
  const FinMod U = FinMod::unit(ring);
  return Coalgebra{U, lunit_inv(U), identity(U)};
}

Coalgebra comatrix(int n, const BaseRing& ring) {
  need(n >= 1, "comatrix size must be positive");
  const FinMod C = FinMod::free_of_rank(ring, n * n);
  const FinMod U = FinMod::unit(ring);
  std::vector<std::vector<mpq_class>> cols(n * n);
  std::vector<std::int64_t> counit_row(n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int g = i * n + j;
      std::vector<mpq_class> col(static_cast<size_t>(n) * n * n * n, 0);
      for (int k = 0; k < n; ++k)
        col[static_cast<size_t>(i * n + k) * (n * n) + (k * n + j)] = 1;
      cols[g] = std::move(col);
      counit_row[g] = (i == j) ? 1 : 0;
    }
  return Coalgebra{C, mor_to_tensor(C, C, C, cols), mor64(C, U, counit_row)};
}

Coalgebra mixed_order_coalgebra_z4() {
  const BaseRing z4 = BaseRing::zmod(4);
  const FinMod C = FinMod::of(z4, {2, 4});
  // raw tensor grid over generators (x, g): (x,x) (x,g) (g,x) (g,g)
  const std::vector<std::vector<mpq_class>> cols = {
      {0, 1, 1, 0},  // x -> x(x)g + g(x)x
      {0, 0, 0, 1},  // g -> g(x)g
  };
  return Coalgebra{C, mor_to_tensor(C, C, C, cols), mor64(C, FinMod::unit(z4), {0, 1})};
}

Algebra unit_algebra(const BaseRing& ring) {
  const FinMod U = FinMod::unit(ring);
  return Algebra{U, lunit(U), identity(U)};
}

Algebra product_ring_algebra(const BaseRing& ring, int n) {
  need(n >= 1, "product ring needs at least one factor");
  const FinMod A = FinMod::free_of_rank(ring, n);
  const FinMod U = FinMod::unit(ring);
  std::vector<Elem> images(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Elem img(n, 0);
      if (i == j) img[i] = 1;
      images[static_cast<size_t>(i) * n + j] = std::move(img);
    }
  return Algebra{A, mor_from_tensor(A, A, A, images),
                 mor64(U, A, std::vector<std::int64_t>(n, 1))};
}

Algebra dual_algebra(const Coalgebra& c) {
  const FinMod& C = c.carrier;
  const FinMod U = FinMod::unit(C.ring);
  const FinMod D = hom_module(C, U);
  const FinMod DD = tensor(D, D);
  const ModMorphism ev = eval_mor(C, U);
  const ModMorphism idD = identity(D);
  const ModMorphism idC = identity(C);
  // (f (x) g) (x) c  ->  g(c1) f(c2) over comult c = sum c1 (x) c2
  ModMorphism total = tensor_mor(identity(DD), c.comult);             // -> (D(x)D)(x)(C(x)C)
  total = compose(assoc(D, D, tensor(C, C)), total);                  // -> D(x)(D(x)(C(x)C))
  total = compose(tensor_mor(idD, assoc_inv(D, C, C)), total);        // -> D(x)((D(x)C)(x)C)
  total = compose(tensor_mor(idD, tensor_mor(ev, idC)), total);       // -> D(x)(R(x)C)
  total = compose(tensor_mor(idD, lunit(C)), total);                  // -> D(x)C
  total = compose(ev, total);                                         // -> R
  ModMorphism mult = curry(total, DD, C);
  ModMorphism unit = curry(compose(c.counit, lunit(C)), U, C);
  return Algebra{D, mult, unit};
}

ModuleAction regular_module(const Algebra& a) { return ModuleAction{a, a.carrier, a.mult}; }

Comodule regular_comodule(const Coalgebra& c) { return Comodule{c, c.carrier, c.comult}; }

Comodule cofree_comodule(const Coalgebra& c, const FinMod& y) {
  require_same_ring(c.carrier.ring, y.ring);
  const FinMod& C = c.carrier;
  const FinMod V = tensor(C, y);
  ModMorphism coact = compose(assoc(C, C, y), tensor_mor(c.comult, identity(y)));
  return Comodule{c, V, coact};
}

namespace {

// Random congruence-valid matrix: entry (i,j) is a multiple of
// target_order_i / gcd(source_order_j, target_order_i).
ModMorphism random_valid_mor(std::mt19937_64& rng, const FinMod& src, const FinMod& dst) {
  std::vector<std::int64_t> entries(static_cast<size_t>(dst.ngens()) * src.ngens());
  size_t ix = 0;
  for (int i = 0; i < dst.ngens(); ++i)
    for (int j = 0; j < src.ngens(); ++j, ++ix) {
      const std::int64_t d = dst.factors[i];
      const std::int64_t g = std::gcd(src.factors[j], d);
      entries[ix] = (d / g) * static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(g));
    }
  return mor64(src, dst, entries);
}

}  // namespace

std::vector<Coalgebra> search_coalgebras(const BaseRing& ring,
                                         const std::vector<std::int64_t>& factors,
                                         std::uint64_t seed, int tries, int want) {
  if (!ring.is_zmod())
    throw Error(ErrKind::InfiniteRing, "coalgebra search samples residues; needs Z/m");
  need(factors.size() <= 2, "coalgebra search is limited to at most 2 invariant factors");
  const FinMod C = FinMod::of(ring, factors);
  const FinMod CC = tensor(C, C);
  const FinMod U = FinMod::unit(ring);
  std::mt19937_64 rng(seed);
  std::vector<Coalgebra> out;
  for (int t = 0; t < tries && static_cast<int>(out.size()) < want; ++t) {
    Coalgebra cand{C, random_valid_mor(rng, C, CC), random_valid_mor(rng, C, U)};
    if (check_coalgebra(cand).ok()) out.push_back(std::move(cand));
  }
  return out;
}

}  // namespace corat
