#include "corat/rational.hpp"

#include "corat/error.hpp"
#include "corat/structures.hpp"

namespace corat {

ModMorphism action_transpose(const ModuleAction& m) {
  Report rep = check_module(m);
  if (!rep.ok()) {
    const LawResult* bad = rep.first_failure();
    throw Error(ErrKind::InvalidStructure,
                "module fails law: " + (bad ? bad->law : std::string("?")));
  }
  const FinMod& a = m.alg.carrier;
  const FinMod& v = m.carrier;
  return curry(compose(m.action, swap_mor(v, a)), v, a);
}

ModMorphism theta_canonical(const LeftPairing& p, const ModuleAction& m) {
  if (!(m.alg.carrier == p.alg.carrier) || !(m.alg.mult == p.alg.mult))
    throw Error(ErrKind::TypeMismatch, "module is not over the pairing's algebra");
  return action_transpose(m);
}

ModMorphism t_component(const LeftPairing& p, const FinMod& v) {
  const FinMod& a = p.alg.carrier;
  FinMod cv = tensor(p.coa.carrier, v);
  // chi route: constant-at-identity into hom(A, C (x) V), then push forward
  // along the pairing-contraction; coincides with alpha_component by the
  // hom/tensor adjunction.
  return compose(hom_post(a, sigma_component(p, v)), curry(swap_mor(cv, a), cv, a));
}

RationalStructure rational_part(const LeftPairing& p, const ModuleAction& m) {
  RationalStructure st;
  st.theta = theta_canonical(p, m);
  st.tmap = t_component(p, m.carrier);
  st.square = pullback(st.theta, st.tmap);

  if (is_mono(st.square.p1)) {
    st.rat = st.square.obj;
    st.p1 = st.square.p1;
    st.p2 = st.square.p2;
  } else {
    // tmap has a kernel, so pullback points over a given v differ in their
    // second leg; collapse to the honest submodule of carriers and re-solve
    // for a compatible second leg if the linear system allows one.
    st.warning = "comparison map has nonzero kernel; second pullback leg may be missing";
    ImageData im = image(st.square.p1);
    st.rat = im.obj;
    st.p1 = im.incl;
    std::optional<Elem> x =
        solve_elem(hom_post(st.rat, st.tmap), hom_encode(compose(st.theta, st.p1)));
    if (x) st.p2 = hom_decode(st.rat, st.tmap.source, *x);
  }

  const FinMod& a = p.alg.carrier;
  std::optional<ModMorphism> act = factor_through_mono(
      compose(m.action, tensor_mor(identity(a), st.p1)), st.p1);
  if (!act)
    throw Error(ErrKind::FactorizationFailed,
                     "rational part is not closed under the action");
  st.restricted = ModuleAction{p.alg, st.rat, *act};

  ModMorphism t_rat = t_component(p, st.rat);
  ModMorphism theta_rat = theta_canonical(p, st.restricted);
  ModMorphism post = hom_post(st.rat, t_rat);
  std::optional<Elem> co = solve_elem(post, hom_encode(theta_rat));
  if (co) {
    st.coaction = hom_decode(st.rat, t_rat.source, *co);
    st.coaction_unique = kernel(post).obj.ngens() == 0;
    st.comodule_ok = check_comodule(Comodule{p.coa, st.rat, *st.coaction}).ok();
  }
  return st;
}

RationalModuleCheck is_rational_module(const LeftPairing& p, const ModuleAction& m) {
  RationalStructure st = rational_part(p, m);
  RationalModuleCheck out;
  IsoCheck ic = is_iso(st.p1);
  out.rational = ic.iso;
  if (ic.iso && st.p2) out.coaction = compose(*st.p2, ic.inverse);
  return out;
}

bool rat_idempotence_check(const LeftPairing& p, const ModuleAction& m) {
  RationalStructure st = rational_part(p, m);
  RationalStructure st2 = rational_part(p, st.restricted);
  if (!is_iso(st2.p1).iso) return false;
  return same_submodule(compose(st.p1, st2.p1), st.p1);
}

bool rat_submodule_pullback_check(const LeftPairing& p, const ModuleAction& m,
                                  const ModuleAction& m0, const ModMorphism& incl) {
  if (!is_module_morphism(m0, m, incl))
    throw Error(ErrKind::NotAMorphism, "inclusion is not action-compatible");
  if (!is_mono(incl))
    throw Error(ErrKind::TypeMismatch, "inclusion is not mono");
  RationalStructure big = rational_part(p, m);
  RationalStructure small = rational_part(p, m0);
  PullbackData pb = pullback(incl, big.p1);
  return same_submodule(small.p1, pb.p1);
}

bool equivalence_roundtrip(const LeftPairing& p, const Comodule& n) {
  ModuleAction m = phi_functor(p, n);
  RationalStructure st = rational_part(p, m);
  IsoCheck ic = is_iso(st.p1);
  if (!ic.iso || !st.p2 || !st.coaction_unique) return false;
  return compose(*st.p2, ic.inverse) == n.coaction;
}

std::vector<Elem> rational_elements_oracle(const LeftPairing& p, const ModuleAction& m,
                                           std::int64_t bound) {
  ModMorphism theta = theta_canonical(p, m);
  ModMorphism tmap = t_component(p, m.carrier);
  std::vector<Elem> out;
  for (const Elem& v : enumerate_elements(m.carrier, static_cast<std::uint64_t>(bound)))
    if (solve_elem(tmap, apply_mor(theta, v))) out.push_back(v);
  return out;
}

}  // namespace corat
