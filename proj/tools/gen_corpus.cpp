// Regenerates the shipped corpus: structure files for the stock coalgebras
// with their convolution duals, evaluation pairings, regular (co)modules and
// entwinings, plus known-fail fixtures under bad/.  Every generated file is
// re-parsed, serialized again (fixed-point check) and law-checked before it
// is written; regeneration aborts if anything drifted.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "corat/commands.hpp"
#include "corat/entwine.hpp"
#include "corat/io.hpp"

using namespace corat;

namespace {

Endpoint N(const std::string& s) { return Endpoint::of_name(s); }
Endpoint T(Endpoint a, Endpoint b) { return Endpoint::tensor(std::move(a), std::move(b)); }
Endpoint U() { return Endpoint::unit(); }

struct Builder {
  StructureFile f;

  explicit Builder(const BaseRing& r) { f.ring = r; }
  void obj(const std::string& n, const FinMod& m) { f.objects.emplace_back(n, m); }
  void mo(const std::string& n, Endpoint s, Endpoint t, const ModMorphism& m) {
    f.morphisms.emplace_back(n, NamedMorphism{std::move(s), std::move(t), m});
  }
  void st(const std::string& n, const std::string& kind,
          std::vector<std::pair<std::string, std::string>> fields) {
    f.structures.emplace_back(n, StructureEntry{kind, std::move(fields)});
  }

  // Shorthand for the recurring blocks.
  void coalgebra(const std::string& n, const Coalgebra& c) {
    obj(n, c.carrier);
    mo(n + "_comult", N(n), T(N(n), N(n)), c.comult);
    mo(n + "_counit", N(n), U(), c.counit);
    st(n, "coalgebra", {{"carrier", n}, {"comult", n + "_comult"}, {"counit", n + "_counit"}});
  }
  void algebra(const std::string& n, const Algebra& a) {
    obj(n, a.carrier);
    mo(n + "_mult", T(N(n), N(n)), N(n), a.mult);
    mo(n + "_unit", U(), N(n), a.unit);
    st(n, "algebra", {{"carrier", n}, {"mult", n + "_mult"}, {"unit", n + "_unit"}});
  }
  void entwining(const std::string& n, const std::string& alg, const std::string& coa,
                 const Entwining& e) {
    mo(n + "_lambda", T(N(alg), N(coa)), T(N(coa), N(alg)), e.lambda);
    st(n, "entwining", {{"algebra", alg}, {"coalgebra", coa}, {"lambda", n + "_lambda"}});
  }
  void entwined(const std::string& n, const std::string& ent, const std::string& alg,
                const std::string& coa, const EntwinedModule& m) {
    obj(n + "_carrier", m.carrier);
    mo(n + "_coaction", N(n + "_carrier"), T(N(coa), N(n + "_carrier")), m.coaction);
    mo(n + "_action", T(N(alg), N(n + "_carrier")), N(n + "_carrier"), m.action);
    st(n, "entwined_module",
       {{"entwining", ent},
        {"carrier", n + "_carrier"},
        {"coaction", n + "_coaction"},
        {"action", n + "_action"}});
  }
  // Dual algebra, evaluation pairing, regular module; optionally the regular
  // comodule (the coaction just reuses the comultiplication matrix).
  void eval_block(const std::string& cn, const Coalgebra& c, bool with_comodule) {
    algebra("A", dual_algebra(c));
    LeftPairing p = eval_pairing(c);
    mo("ev_pair", T(N("A"), N(cn)), U(), p.pair);
    st("ev", "pairing", {{"algebra", "A"}, {"coalgebra", cn}, {"pair", "ev_pair"}});
    st("A_reg", "module", {{"algebra", "A"}, {"carrier", "A"}, {"action", "A_mult"}});
    if (with_comodule)
      st(cn + "_reg", "comodule",
         {{"coalgebra", cn}, {"carrier", cn}, {"coaction", cn + "_comult"}});
  }
};

ModMorphism with_entry(const ModMorphism& m, int i, int j, const mpq_class& v) {
  std::vector<mpq_class> e(static_cast<size_t>(m.target.ngens()) * m.source.ngens());
  for (int a = 0; a < m.target.ngens(); ++a)
    for (int b = 0; b < m.source.ngens(); ++b)
      e[static_cast<size_t>(a) * m.source.ngens() + b] = m.at(a, b);
  e[static_cast<size_t>(i) * m.source.ngens() + j] = v;
  return mor(m.source, m.target, e);
}

StructureFile grouplike_z4() {
  const BaseRing z4 = BaseRing::zmod(4);
  Coalgebra c = group_like(z4);
  Builder b(z4);
  b.coalgebra("C", c);
  b.eval_block("C", c, /*with_comodule=*/true);
  b.algebra("R", unit_algebra(z4));
  Entwining tr = trivial_entwining(c);
  b.entwining("tr", "R", "C", tr);
  b.entwined("tr_can", "tr", "R", "C", canonical_entwined_module(tr));
  b.algebra("P", product_ring_algebra(z4, 2));
  Entwining tw = twist_entwining(product_ring_algebra(z4, 2), c);
  b.entwining("tw", "P", "C", tw);
  b.entwined("tw_can", "tw", "P", "C", canonical_entwined_module(tw));
  return b.f;
}

StructureFile grouplike_gf2() {
  const BaseRing gf2 = BaseRing::zmod(2);
  Coalgebra c = group_like(gf2);
  Builder b(gf2);
  b.coalgebra("C", c);
  b.algebra("P", product_ring_algebra(gf2, 2));
  Entwining tw = twist_entwining(product_ring_algebra(gf2, 2), c);
  b.entwining("tw", "P", "C", tw);
  b.entwined("tw_can", "tw", "P", "C", canonical_entwined_module(tw));
  return b.f;
}

StructureFile grouplike_gf3() {
  const BaseRing gf3 = BaseRing::zmod(3);
  Coalgebra c = group_like(gf3);
  Builder b(gf3);
  b.coalgebra("C", c);
  b.eval_block("C", c, true);
  b.algebra("P", product_ring_algebra(gf3, 2));
  Entwining tw = twist_entwining(product_ring_algebra(gf3, 2), c);
  b.entwining("tw", "P", "C", tw);
  b.entwined("tw_can", "tw", "P", "C", canonical_entwined_module(tw));
  return b.f;
}

StructureFile comatrix2_gf2() {
  const BaseRing gf2 = BaseRing::zmod(2);
  Coalgebra c = comatrix(2, gf2);
  Builder b(gf2);
  b.coalgebra("C", c);
  b.eval_block("C", c, true);
  b.algebra("R", unit_algebra(gf2));
  Entwining tr = trivial_entwining(c);
  b.entwining("tr", "R", "C", tr);
  b.entwined("tr_can", "tr", "R", "C", canonical_entwined_module(tr));
  b.algebra("P", product_ring_algebra(gf2, 2));
  b.entwining("tw", "P", "C", twist_entwining(product_ring_algebra(gf2, 2), c));
  return b.f;
}

StructureFile comatrix2_gf3() {
  const BaseRing gf3 = BaseRing::zmod(3);
  Coalgebra c = comatrix(2, gf3);
  Builder b(gf3);
  b.coalgebra("C", c);
  b.eval_block("C", c, true);
  b.algebra("P", product_ring_algebra(gf3, 2));
  b.entwining("tw", "P", "C", twist_entwining(product_ring_algebra(gf3, 2), c));
  return b.f;
}

StructureFile mixed_z4() {
  const BaseRing z4 = BaseRing::zmod(4);
  Coalgebra c = mixed_order_coalgebra_z4();
  Builder b(z4);
  b.coalgebra("C", c);
  b.eval_block("C", c, /*with_comodule=*/false);
  // rank-one module through the character that kills the order-two functional
  Algebra a = dual_algebra(c);
  FinMod v = FinMod::of(z4, {2});
  b.obj("V", v);
  b.mo("V_act", T(N("A"), N("V")), N("V"),
       mor_from_tensor(a.carrier, v, v, {elem_zero(v), {mpq_class(1)}}));
  b.st("V_mod", "module", {{"algebra", "A"}, {"carrier", "V"}, {"action", "V_act"}});
  b.algebra("R", unit_algebra(z4));
  b.entwining("tr", "R", "C", trivial_entwining(c));
  return b.f;
}

// One law-breaking instance per structure kind, each alongside the minimal
// valid scaffolding it references.  Everything parses; cmd_validate fails.
StructureFile nonexamples() {
  const BaseRing z4 = BaseRing::zmod(4);
  Coalgebra c = group_like(z4);
  Algebra r = unit_algebra(z4);
  Entwining tr = trivial_entwining(c);
  Builder b(z4);
  b.coalgebra("good_C", c);
  b.algebra("good_R", r);
  b.entwining("good_tr", "good_R", "good_C", tr);

  b.mo("double_mult", T(N("good_R"), N("good_R")), N("good_R"), with_entry(r.mult, 0, 0, 2));
  b.st("bad_algebra", "algebra",
       {{"carrier", "good_R"}, {"mult", "double_mult"}, {"unit", "good_R_unit"}});

  b.mo("zero_counit", N("good_C"), U(), with_entry(c.counit, 0, 0, 0));
  b.st("bad_coalgebra", "coalgebra",
       {{"carrier", "good_C"}, {"comult", "good_C_comult"}, {"counit", "zero_counit"}});

  b.st("bad_module", "module",
       {{"algebra", "good_R"}, {"carrier", "good_R"}, {"action", "double_mult"}});

  b.mo("double_coact", N("good_C"), T(N("good_C"), N("good_C")), with_entry(c.comult, 0, 0, 2));
  b.st("bad_comodule", "comodule",
       {{"coalgebra", "good_C"}, {"carrier", "good_C"}, {"coaction", "double_coact"}});

  LeftPairing rp{r, c, compose(eval_pairing(c).pair, tensor_mor(dual_algebra(c).unit,
                                                                identity(c.carrier)))};
  b.mo("double_pair", T(N("good_R"), N("good_C")), U(), with_entry(rp.pair, 0, 0, 2));
  b.st("bad_pairing", "pairing",
       {{"algebra", "good_R"}, {"coalgebra", "good_C"}, {"pair", "double_pair"}});

  b.mo("double_lambda", T(N("good_R"), N("good_C")), T(N("good_C"), N("good_R")),
       with_entry(tr.lambda, 0, 0, 2));
  b.st("bad_entwining", "entwining",
       {{"algebra", "good_R"}, {"coalgebra", "good_C"}, {"lambda", "double_lambda"}});

  EntwinedModule can = canonical_entwined_module(tr);
  b.obj("V", can.carrier);
  b.mo("broken_coaction", N("V"), T(N("good_C"), N("V")), with_entry(can.coaction, 0, 0, 0));
  b.mo("can_action", T(N("good_R"), N("V")), N("V"), can.action);
  b.st("bad_entwined", "entwined_module",
       {{"entwining", "good_tr"},
        {"carrier", "V"},
        {"coaction", "broken_coaction"},
        {"action", "can_action"}});
  return b.f;
}

// Serialize, re-parse, re-serialize: must be a fixed point and must re-check.
void emit(const std::filesystem::path& path, const StructureFile& f, bool expect_all_pass) {
  std::string text = serialize_structure_file(f);
  StructureFile back = parse_structure_file(text);
  if (serialize_structure_file(back) != text) {
    std::cerr << path << ": serialization is not a parse fixed point\n";
    std::exit(1);
  }
  if (!back.warnings.empty()) {
    std::cerr << path << ": generated file produced parse warnings\n";
    std::exit(1);
  }
  CmdReport rep = cmd_validate(back);
  for (const auto& line : rep.checks) {
    bool expect_pass = expect_all_pass || line.name.find("'bad_") == std::string::npos;
    if ((line.status == "pass") != expect_pass) {
      std::cerr << path << ": unexpected status for " << line.name << ": " << line.status << "\n";
      std::exit(1);
    }
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "cannot write " << path << "\n";
    std::exit(1);
  }
  std::cout << path.string() << ": " << rep.checks.size() << " structures\n";
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path dir = argc > 1 ? argv[1] : "corpus";
  std::filesystem::create_directories(dir / "bad");
  emit(dir / "grouplike_z4.json", grouplike_z4(), true);
  emit(dir / "grouplike_gf2.json", grouplike_gf2(), true);
  emit(dir / "grouplike_gf3.json", grouplike_gf3(), true);
  emit(dir / "comatrix2_gf2.json", comatrix2_gf2(), true);
  emit(dir / "comatrix2_gf3.json", comatrix2_gf3(), true);
  emit(dir / "mixed_z4.json", mixed_z4(), true);
  emit(dir / "bad" / "nonexamples.json", nonexamples(), false);
  return 0;
}
