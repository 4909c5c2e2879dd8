// Batch driver: parse a structure file, run one command, print a report.
// Exit codes: 0 all checks pass, 1 a check failed, 2 parse/reference error,
// 3 enumeration bound exceeded.
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "corat/commands.hpp"

using namespace corat;
using json = nlohmann::ordered_json;

namespace {

struct Args {
  std::string file;
  std::vector<std::string> names;
  std::vector<std::string> family;
  std::int64_t bound = 65536;
  bool text = false;
};

// One subcommand with the shared flag set; `names` tells the parser how many
// --name values the command takes.
CLI::App* add_cmd(CLI::App& app, Args& a, const std::string& name, const std::string& desc,
                  int names) {
  CLI::App* cmd = app.add_subcommand(name, desc);
  cmd->add_option("--file", a.file, "structure file (JSON)")->required();
  if (names > 0)
    cmd->add_option("--name", a.names, "structure name (repeat for commands taking several)")
        ->expected(names);
  if (name == "rational_report")
    cmd->add_option("--family", a.family, "restrict the test family to these members");
  cmd->add_option("--bound", a.bound, "element-enumeration refusal threshold");
  auto* fmt = cmd->add_flag("--text", a.text, "human-readable output");
  cmd->add_flag("--json", "JSON output (default)")->excludes(fmt);
  return cmd;
}

void print_report(const CmdReport& r, bool text) {
  if (text)
    std::cout << r.to_text();
  else
    std::cout << r.to_json().dump(2) << "\n";
}

int error_exit(ErrKind k) {
  if (k == ErrKind::Parse) return 2;
  if (k == ErrKind::TooLarge) return 3;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corat: exact checks and constructions for modules, coalgebras, pairings and "
               "entwinings over Z/m and Q"};
  app.require_subcommand(1);
  Args a;
  if (const char* env = std::getenv("CORAT_BOUND")) {
    try {
      a.bound = std::stoll(env);
    } catch (const std::exception&) {
      std::cerr << "ignoring unparsable CORAT_BOUND\n";
    }
  }

  CLI::App* validate = add_cmd(app, a, "validate", "run every declared structure's law checker", 0);
  CLI::App* dual = add_cmd(app, a, "dual", "convolution algebra of a coalgebra", 1);
  CLI::App* rat = add_cmd(app, a, "rat", "rational part of a module (--name pairing --name module)", 2);
  CLI::App* entwine = add_cmd(app, a, "entwine", "representing algebra of an entwining", 1);
  CLI::App* xi = add_cmd(app, a, "xi", "induced action of the representing algebra", 1);
  CLI::App* rational_report =
      add_cmd(app, a, "rational_report", "comparison-map behaviour across the test family", 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage error
    return 2;
  }

  CmdOptions opt;
  opt.bound = a.bound;
  opt.family = a.family;
  std::string command = app.get_subcommands().front()->get_name();
  try {
    StructureFile f = load_structure_file(a.file);
    CmdReport r;
    if (validate->parsed())
      r = cmd_validate(f, opt);
    else if (dual->parsed())
      r = cmd_dual(f, a.names[0], opt);
    else if (rat->parsed())
      r = cmd_rat(f, a.names[0], a.names[1], opt);
    else if (entwine->parsed())
      r = cmd_entwine(f, a.names[0], opt);
    else if (xi->parsed())
      r = cmd_xi(f, a.names[0], opt);
    else if (rational_report->parsed())
      r = cmd_rational_report(f, a.names[0], opt);
    print_report(r, a.text);
    return exit_code(r);
  } catch (const Error& e) {
    json err;
    err["schema_version"] = 1;
    err["command"] = command;
    err["error"] = {{"kind", kind_name(e.kind)}, {"message", e.what()}};
    if (a.text)
      std::cout << "command: " << command << "\nerror [" << kind_name(e.kind) << "] " << e.what()
                << "\n";
    else
      std::cout << err.dump(2) << "\n";
    std::cerr << "corat: " << e.what() << "\n";
    return error_exit(e.kind);
  }
}
