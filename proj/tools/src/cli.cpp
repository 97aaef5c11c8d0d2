#include "cli.hpp"

#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "primform/error.hpp"
#include "report.hpp"
#include "spec_file.hpp"

namespace primform::cli {

namespace {

struct Options {
  std::string name;
  std::string spec;
  std::string phi;
  std::string json_path;
  Caps caps;
};

LoadedSpec resolve(const Options& o) {
  if (!o.spec.empty() && !o.name.empty()) throw Error(ErrorKind::InvalidSpec, "give a builtin name or --spec, not both");
  LoadedSpec loaded;
  if (!o.spec.empty()) {
    loaded = load_spec_file(o.spec);
  } else if (o.name.empty()) {
    throw Error(ErrorKind::InvalidSpec, "no system given (builtin name or --spec)");
  } else if (auto b = load_builtin(o.name)) {
    loaded = *b;
  } else {
    throw Error(ErrorKind::InvalidSpec, "unknown builtin system '" + o.name + "'");
  }
  if (!o.phi.empty()) {
    try {
      loaded.phi = LaurentPoly::parse(o.phi);
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidSpec, "--phi: " + e.message());
    }
  }
  return loaded;
}

void require_cp1(const LGSystem& lg, const std::string& what) {
  if (lg.name != "cp1") throw Error(ErrorKind::Unsupported, what + " is available for cp1 only");
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSpec:
    case ErrorKind::Parse:
    case ErrorKind::Unsupported:
    case ErrorKind::CapsExceeded:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact primitive forms, Frobenius manifolds and genus-0 descendants"};
  app.name("primform");
  app.require_subcommand(1);
  Options o;
  std::string command;

  auto add = [&](const std::string& name, const std::string& description, bool caps) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("system", o.name, "builtin system: cp1, a1 .. a6");
    sub->add_option("--spec", o.spec, "JSON spec file");
    sub->add_option("--json", o.json_path, "write the JSON report here ('-' for stdout)");
    if (caps) {
      sub->add_option("--max-insertions", o.caps.max_insertions)->check(CLI::NonNegativeNumber);
      sub->add_option("--max-level", o.caps.max_level)->check(CLI::NonNegativeNumber);
      sub->add_option("--max-degree", o.caps.max_degree)->check(CLI::NonNegativeNumber);
    }
    sub->callback([&command, name] { command = name; });
    return sub;
  };
  add("ring", "Milnor ring, residue pairing and spectrum", false);
  add("frobenius", "flat metric, potential, Euler field and discriminant", false);
  add("verify", "check the primitive-form conditions", false)->add_option("--phi", o.phi, "candidate zeta = phi vol");
  add("descendants", "genus-0 descendant correlators and axiom checks", true);
  add("mirror-compare", "compare A- and B-side descendant potentials (cp1)", true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "primform: " << e.what() << "\n";
    return 2;
  }

  try {
    LoadedSpec spec = resolve(o);
    const LGSystem& lg = spec.system;
    LaurentPoly phi = spec.phi.value_or(LaurentPoly(1));
    json report;
    report["command"] = command;
    report["system"] = lg.name;
    bool ok = true;
    if (command == "ring") {
      report["ring"] = ring_section(lg);
    } else if (command == "frobenius") {
      report["frobenius"] = frobenius_section(build_frobenius(lg, phi), ok);
    } else if (command == "verify") {
      PrimitiveFormReport r = verify_primitive_form(lg, phi);
      report["phi"] = phi.to_string();
      report["verification"] = verification_section(r);
      ok = r.all_hold();
    } else if (command == "descendants") {
      GravitationalDescendants b(build_frobenius(lg), o.caps.max_degree);
      CP1GromovWitten a;
      report["correlators"] = correlators_section(b, lg.name == "cp1" ? &a : nullptr, o.caps, ok);
    } else {
      require_cp1(lg, "mirror-compare");
      FrobeniusData fd = build_frobenius(lg);
      GravitationalDescendants b(fd, o.caps.max_degree);
      GravitationalDescendants corrupted(corrupt_c111(fd, LaurentPoly::parse("q")), o.caps.max_degree);
      CP1GromovWitten a;
      Comparison result = compare_free_energies(b, a, o.caps);
      Comparison control = compare_free_energies(corrupted, a, o.caps);
      report["comparison"] = comparison_section(result, control, o.caps);
      ok = result.max_discrepancy == 0 && control.max_discrepancy != 0;
    }
    report["status"] = ok ? "ok" : "failed";

    if (o.json_path == "-") {
      out << serialize(report);
    } else {
      out << render_text(report);
      if (!o.json_path.empty()) {
        std::ofstream file(o.json_path);
        if (!file) throw Error(ErrorKind::InvalidSpec, "cannot write " + o.json_path);
        file << serialize(report);
      }
    }
    return ok ? 0 : 1;
  } catch (const Error& e) {
    err << "primform: " << e.what() << "\n";
    return exit_code(e.kind());
  }
}

}  // namespace primform::cli
