#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "corat/io.hpp"
#include "json.hpp"

namespace corat {

struct CmdOptions {
  std::int64_t bound = 65536;       // refuse element enumerations beyond this
  std::vector<std::string> family;  // restrict the test family (empty = default)
};

// One line of a command report.  status is "pass", "fail" or
// "not-applicable" (the check could not run, e.g. prerequisites failed).
struct CheckLine {
  std::string name;
  std::string status;
  std::vector<std::string> witnesses;
};

// What a command prints: named checks, computed artifacts (matrices given as
// {source_factors, target_factors, entries}) and load-time warnings.  Output
// is deterministic: identical input bytes give identical report bytes.
struct CmdReport {
  std::string command;
  std::vector<CheckLine> checks;
  nlohmann::ordered_json artifacts = nlohmann::ordered_json::object();
  std::vector<std::string> warnings;

  void add(std::string name, bool ok, std::vector<std::string> witnesses = {});
  void add_na(std::string name, std::string reason);
  bool all_pass() const;  // no "fail" lines ("not-applicable" does not fail)
  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

// 0 when every check passes, 1 otherwise.  Parse/reference problems and
// enumeration-bound refusals do not reach this: they are thrown as
// Error(Parse) / Error(TooLarge) and map to exit codes 2 / 3 in the driver.
int exit_code(const CmdReport& r);

// Run every declared structure through its law checker.
CmdReport cmd_validate(const StructureFile& f, const CmdOptions& opt = {});
// Convolution algebra on hom(C, R): laws plus structure constants.
CmdReport cmd_dual(const StructureFile& f, const std::string& coalgebra,
                   const CmdOptions& opt = {});
// Largest submodule with a compatible coaction, cross-checked against the
// brute-force enumeration (throws TooLarge past opt.bound).
CmdReport cmd_rat(const StructureFile& f, const std::string& pairing, const std::string& module,
                  const CmdOptions& opt = {});
// Entwining laws plus the representing algebra E = hom(C, A) and the
// embedding of A into it.
CmdReport cmd_entwine(const StructureFile& f, const std::string& entwining,
                      const CmdOptions& opt = {});
// Entwined-module laws plus the induced E-action on the carrier.
CmdReport cmd_xi(const StructureFile& f, const std::string& entwined_module,
                 const CmdOptions& opt = {});
// Per-family behaviour of the comparison maps alpha_Y plus the overall
// rationality verdict and the projectivity indicator.
CmdReport cmd_rational_report(const StructureFile& f, const std::string& pairing,
                              const CmdOptions& opt = {});

}  // namespace corat
