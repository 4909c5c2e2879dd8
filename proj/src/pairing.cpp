#include "corat/pairing.hpp"

#include "corat/error.hpp"

namespace corat {

namespace {

void need(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrKind::TypeMismatch, what);
}

void law(Report& rep, const std::string& name, const ModMorphism& lhs, const ModMorphism& rhs) {
  auto w = morphism_diff(lhs, rhs);
  rep.add(name, !w.has_value(), std::move(w));
}

void check_shape(const LeftPairing& p) {
  const FinMod U = FinMod::unit(p.alg.carrier.ring);
  require_same_ring(p.alg.carrier.ring, p.coa.carrier.ring);
  need(p.pair.source == tensor(p.alg.carrier, p.coa.carrier) && p.pair.target == U,
       "pairing must map algebra (x) coalgebra -> R");
}

}  // namespace

Report check_left_pairing(const LeftPairing& p) {
  check_shape(p);
  const FinMod& A = p.alg.carrier;
  const FinMod& C = p.coa.carrier;
  const ModMorphism idA = identity(A);
  const ModMorphism idC = identity(C);
  Report rep;

  // t(ab (x) c) = t(b (x) c1) t(a (x) c2)
  ModMorphism rhs = tensor_mor(identity(tensor(A, A)), p.coa.comult);
  rhs = compose(assoc(A, A, tensor(C, C)), rhs);
  rhs = compose(tensor_mor(idA, assoc_inv(A, C, C)), rhs);
  rhs = compose(tensor_mor(idA, tensor_mor(p.pair, idC)), rhs);
  rhs = compose(tensor_mor(idA, lunit(C)), rhs);
  rhs = compose(p.pair, rhs);
  law(rep, "multiplicativity", compose(p.pair, tensor_mor(p.alg.mult, idC)), rhs);

  law(rep, "unit pairs as counit",
      compose(p.pair, tensor_mor(p.alg.unit, idC)),
      compose(p.coa.counit, lunit(C)));
  return rep;
}

LeftPairing eval_pairing(const Coalgebra& c) {
  const FinMod U = FinMod::unit(c.carrier.ring);
  return LeftPairing{dual_algebra(c), c, eval_mor(c.carrier, U)};
}

ModMorphism sigma_component(const LeftPairing& p, const FinMod& y) {
  check_shape(p);
  const FinMod& A = p.alg.carrier;
  const FinMod& C = p.coa.carrier;
  return compose(lunit(y),
                 compose(tensor_mor(p.pair, identity(y)), assoc_inv(A, C, y)));
}

ModMorphism alpha_component(const LeftPairing& p, const FinMod& y) {
  const FinMod CY = tensor(p.coa.carrier, y);
  ModMorphism g = compose(sigma_component(p, y), swap_mor(CY, p.alg.carrier));
  return curry(g, CY, p.alg.carrier);
}

ModMorphism beta_map(const LeftPairing& p, const ModMorphism& f, const FinMod& y) {
  check_shape(p);
  need(f.target == tensor(p.coa.carrier, y), "beta_map: f must land in C (x) Y");
  return compose(sigma_component(p, y), tensor_mor(identity(p.alg.carrier), f));
}

std::vector<FamilyMember> default_family(const Coalgebra& c) {
  const BaseRing& r = c.carrier.ring;
  std::vector<FamilyMember> fam;
  fam.push_back({"R", FinMod::unit(r)});
  fam.push_back({"C", c.carrier});
  fam.push_back({"C*", hom_module(c.carrier, FinMod::unit(r))});
  if (r.is_zmod())
    for (std::int64_t d = 2; d <= r.modulus; ++d)
      if (r.modulus % d == 0) fam.push_back({"Z/" + std::to_string(d), FinMod::of(r, {d})});
  return fam;
}

std::vector<FamilyMember> default_family(const LeftPairing& p) {
  check_shape(p);
  return default_family(p.coa);
}

RationalityReport is_rational(const LeftPairing& p) { return is_rational(p, default_family(p)); }

RationalityReport is_rational(const LeftPairing& p, const std::vector<FamilyMember>& family) {
  RationalityReport rep;
  rep.family = family;
  rep.rational = true;
  for (const auto& mem : family) {
    ModMorphism a = alpha_component(p, mem.obj);
    const bool mono = is_mono(a);
    const bool epi = is_epi(a);
    rep.mono.push_back(mono);
    rep.epi.push_back(epi);
    rep.iso.push_back(mono && epi && is_iso(a).iso);
    if (!mono) rep.rational = false;
  }
  rep.carrier_projective = is_projective(p.coa.carrier);
  return rep;
}

ModuleAction phi_functor(const LeftPairing& p, const Comodule& m) {
  check_shape(p);
  need(m.coa.carrier == p.coa.carrier && m.coa.comult == p.coa.comult &&
           m.coa.counit == p.coa.counit,
       "comodule must live over the pairing's coalgebra");
  Report valid = check_comodule(m);
  if (!valid.ok())
    throw Error(ErrKind::InvalidStructure,
                "phi_functor: comodule fails " + valid.first_failure()->law);
  ModMorphism h = compose(sigma_component(p, m.carrier),
                          tensor_mor(identity(p.alg.carrier), m.coaction));
  return ModuleAction{p.alg, m.carrier, h};
}

ModMorphism gamma_of_pairing(const LeftPairing& p) {
  check_shape(p);
  const FinMod& A = p.alg.carrier;
  const FinMod& C = p.coa.carrier;
  return curry(compose(p.pair, swap_mor(C, A)), C, A);
}

bool is_pure(const ModMorphism& g, const std::vector<FamilyMember>& family) {
  for (const auto& mem : family)
    if (!is_mono(tensor_mor(g, identity(mem.obj)))) return false;
  return true;
}

bool is_nuclear(const FinMod& v, const std::vector<FamilyMember>& family) {
  const FinMod U = FinMod::unit(v.ring);
  const FinMod Vstar = hom_module(v, U);
  const ModMorphism ev = eval_mor(v, U);
  for (const auto& mem : family) {
    const FinMod& X = mem.obj;
    const FinMod VX = tensor(v, X);
    // (v (x) x) (x) f  ->  f(v) x
    ModMorphism g = swap_mor(VX, Vstar);
    g = compose(assoc_inv(Vstar, v, X), g);
    g = compose(tensor_mor(ev, identity(X)), g);
    g = compose(lunit(X), g);
    if (!is_iso(curry(g, VX, Vstar)).iso) return false;
  }
  return true;
}

LeftPairing transport_pairing_along_algebra_morphism(const LeftPairing& p, const Algebra& b,
                                                     const ModMorphism& phi) {
  check_shape(p);
  if (!is_algebra_morphism(b, p.alg, phi))
    throw Error(ErrKind::NotAMorphism, "transport requires an algebra morphism into A");
  return LeftPairing{b, p.coa,
                     compose(p.pair, tensor_mor(phi, identity(p.coa.carrier)))};
}

LeftPairing transport_pairing_along_coalgebra_morphism(const LeftPairing& p, const Coalgebra& d,
                                                       const ModMorphism& psi) {
  check_shape(p);
  if (!is_coalgebra_morphism(d, p.coa, psi))
    throw Error(ErrKind::NotAMorphism, "transport requires a coalgebra morphism into C");
  return LeftPairing{p.alg, d,
                     compose(p.pair, tensor_mor(identity(p.alg.carrier), psi))};
}

SubData module_morphism_space(const ModuleAction& m, const ModuleAction& n) {
  need(m.alg.carrier == n.alg.carrier && m.alg.mult == n.alg.mult && m.alg.unit == n.alg.unit,
       "morphism space needs a common algebra");
  const FinMod& A = m.alg.carrier;
  const FinMod H = hom_module(m.carrier, n.carrier);
  const FinMod T = hom_module(tensor(A, m.carrier), n.carrier);
  std::vector<mpq_class> entries(static_cast<size_t>(T.ngens()) * H.ngens());
  for (int k = 0; k < H.ngens(); ++k) {
    Elem unit_coord = elem_zero(H);
    unit_coord[k] = 1;
    ModMorphism f = hom_decode(m.carrier, n.carrier, unit_coord);
    ModMorphism defect = mor_sub(compose(n.action, tensor_mor(identity(A), f)),
                                 compose(f, m.action));
    Elem col = hom_encode(defect);
    for (int i = 0; i < T.ngens(); ++i) entries[static_cast<size_t>(i) * H.ngens() + k] = col[i];
  }
  return kernel(mor(H, T, entries));
}

SubData comodule_morphism_space(const Comodule& m, const Comodule& n) {
  need(m.coa.carrier == n.coa.carrier && m.coa.comult == n.coa.comult &&
           m.coa.counit == n.coa.counit,
       "morphism space needs a common coalgebra");
  const FinMod& C = m.coa.carrier;
  const FinMod H = hom_module(m.carrier, n.carrier);
  const FinMod T = hom_module(m.carrier, tensor(C, n.carrier));
  std::vector<mpq_class> entries(static_cast<size_t>(T.ngens()) * H.ngens());
  for (int k = 0; k < H.ngens(); ++k) {
    Elem unit_coord = elem_zero(H);
    unit_coord[k] = 1;
    ModMorphism f = hom_decode(m.carrier, n.carrier, unit_coord);
    ModMorphism defect = mor_sub(compose(n.coaction, f),
                                 compose(tensor_mor(identity(C), f), m.coaction));
    Elem col = hom_encode(defect);
    for (int i = 0; i < T.ngens(); ++i) entries[static_cast<size_t>(i) * H.ngens() + k] = col[i];
  }
  return kernel(mor(H, T, entries));
}

}  // namespace corat
