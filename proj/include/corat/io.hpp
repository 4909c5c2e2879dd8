#pragma once
#include <string>
#include <utility>
#include <vector>

#include "corat/entwine.hpp"
#include "corat/pairing.hpp"
#include "corat/structures.hpp"

namespace corat {

// Where a morphism starts or ends: a named object, the rank-one free module,
// or a tensor/hom composite of further endpoints.  JSON forms:
//   "C"                      named object
//   {"unit": true}           the base ring as a module
//   {"tensor": [ep, ep]}     tensor product (binary; nest for longer chains)
//   {"hom": [ep, ep]}        internal hom
struct Endpoint {
  enum class Kind { Name, Unit, Tensor, Hom };
  Kind kind = Kind::Name;
  std::string name;            // Kind::Name
  std::vector<Endpoint> args;  // Kind::Tensor / Kind::Hom, exactly two

  static Endpoint of_name(std::string n) {
    Endpoint e;
    e.name = std::move(n);
    return e;
  }
  static Endpoint unit() {
    Endpoint e;
    e.kind = Kind::Unit;
    return e;
  }
  static Endpoint tensor(Endpoint a, Endpoint b) {
    Endpoint e;
    e.kind = Kind::Tensor;
    e.args = {std::move(a), std::move(b)};
    return e;
  }
  static Endpoint hom(Endpoint a, Endpoint b) {
    Endpoint e;
    e.kind = Kind::Hom;
    e.args = {std::move(a), std::move(b)};
    return e;
  }
};

// A declared morphism: endpoint expressions as written in the file plus the
// constructed map (entries already canonicalized).
struct NamedMorphism {
  Endpoint source, target;
  ModMorphism mor;
};

// A declared structure: its kind plus field -> referenced-name pairs in the
// canonical field order for that kind.  Kinds and fields:
//   algebra          carrier mult unit
//   coalgebra        carrier comult counit
//   module           algebra carrier action
//   comodule         coalgebra carrier coaction
//   pairing          algebra coalgebra pair
//   entwining        algebra coalgebra lambda
//   entwined_module  entwining carrier coaction action
// carrier references an object; mult/unit/comult/counit/action/coaction/
// pair/lambda reference morphisms; algebra/coalgebra/entwining reference
// previously declared structures of that kind.
struct StructureEntry {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> fields;

  const std::string& ref(const std::string& field) const;
};

// In-memory form of a structure file.  Declaration order is preserved so
// serialization round-trips; names live in three separate namespaces.
struct StructureFile {
  BaseRing ring = BaseRing::zmod(2);
  std::vector<std::pair<std::string, FinMod>> objects;
  std::vector<std::pair<std::string, NamedMorphism>> morphisms;
  std::vector<std::pair<std::string, StructureEntry>> structures;
  std::vector<std::string> warnings;  // parse-time notes, not serialized

  const FinMod* find_object(const std::string& name) const;
  const NamedMorphism* find_morphism(const std::string& name) const;
  const StructureEntry* find_structure(const std::string& name) const;
};

// Resolve an endpoint expression to a module.  Throws Parse on unknown names.
FinMod resolve_endpoint(const StructureFile& f, const Endpoint& e);

// Parse and fully validate a JSON structure file: syntax, reference
// resolution, matrix shape/congruence checks, and structure endpoint shapes.
// Throws Error(ErrKind::Parse) with a message naming the offending
// line/field.  Law checking is NOT done here; that is cmd_validate's job.
StructureFile parse_structure_file(const std::string& text);
StructureFile load_structure_file(const std::string& path);

// Canonical serialization: two-space indent, declaration order, entries as
// stored (reduced).  serialize(parse(.)) is a fixed point of parse+serialize.
std::string serialize_structure_file(const StructureFile& f);
void save_structure_file(const StructureFile& f, const std::string& path);

// Assemble checker-level values from declared structures.  All throw
// Error(ErrKind::Parse) when the name is missing or names the wrong kind.
Algebra algebra_of(const StructureFile& f, const std::string& name);
Coalgebra coalgebra_of(const StructureFile& f, const std::string& name);
ModuleAction module_of(const StructureFile& f, const std::string& name);
Comodule comodule_of(const StructureFile& f, const std::string& name);
LeftPairing pairing_of(const StructureFile& f, const std::string& name);
Entwining entwining_of(const StructureFile& f, const std::string& name);
EntwinedModule entwined_module_of(const StructureFile& f, const std::string& name);

}  // namespace corat
