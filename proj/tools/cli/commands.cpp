#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include <CLI11.hpp>

#include "cli/document.hpp"
#include "cli/report.hpp"
#include "spinflip/error.hpp"
#include "spinflip/fixtures.hpp"
#include "spinflip/machines.hpp"
#include "spinflip/protrans.hpp"

namespace spinflip::cli {
namespace {

struct GlobalOptions {
  double tol = kGeometricTol;
  bool json = false;
  std::string fixture;
  std::string input;
};

BlochVector parse_direction(const std::string& text, const std::string& what) {
  const auto xyz = parse_real_list(text);
  if (xyz.size() != 3) throw ParseError(what + " needs three comma-separated reals");
  const BlochVector v{xyz[0], xyz[1], xyz[2]};
  if (!(v.norm() > 0.0)) throw ParseError(what + " must be nonzero");
  return v.normalized();
}

VectorSetDocument resolve_input(const GlobalOptions& global, std::ostream& err) {
  if (!global.fixture.empty() && !global.input.empty()) {
    throw ParseError("give either an input file or --fixture, not both");
  }
  if (!global.fixture.empty()) {
    auto vectors = fixtures::by_name(global.fixture);
    if (!vectors) throw ParseError("unknown fixture '" + global.fixture + "'");
    return {std::move(*vectors), {}, std::nullopt};
  }
  if (global.input.empty()) throw ParseError("no input: pass a JSON file or --fixture <name>");
  return load_document(global.input, err);
}

std::vector<double> resolve_priors(const std::string& flag, const VectorSetDocument& doc) {
  std::vector<double> priors;
  if (!flag.empty()) {
    priors = parse_real_list(flag);
  } else if (doc.priors) {
    priors = *doc.priors;
  } else {
    priors.assign(doc.vectors.size(), 1.0 / static_cast<double>(doc.vectors.size()));
  }
  return priors;
}

enum class Direction { Forward, Reverse, Both };

const std::map<std::string, Direction> kDirections{
    {"pa", Direction::Forward}, {"ap", Direction::Reverse}, {"both", Direction::Both}};

void add_input(CLI::App& sub, GlobalOptions& global) {
  sub.add_option("input", global.input, "VectorSetDocument JSON file");
  sub.fallthrough();
}

int cmd_flip(const GlobalOptions& global, const std::string& normal_text,
             const std::string& probe_text, bool inverse, std::ostream& out) {
  const BlochVector normal = parse_direction(normal_text, "--normal");
  const GreatCircle circle = GreatCircle::from_normal(normal);
  const FlipMachine machine =
      inverse ? antiparallel_to_parallel_machine(circle) : flipper_for_circle(circle);
  std::optional<BlochVector> probe;
  if (!probe_text.empty()) probe = parse_direction(probe_text, "--probe");
  std::optional<BasisActionReport> basis;
  if (std::abs(circle.normal.z) <= kGeometricTol) basis = verify_basis_action(machine);

  if (global.json) {
    json doc = {{"normal", to_json(circle.normal)},
                {"direction", inverse ? "antiparallel_to_parallel" : "parallel_to_antiparallel"},
                {"u2", to_json(machine.u2())},
                {"u4", to_json(machine.u4())}};
    if (probe) {
      doc["probe"] = to_json(*probe);
      doc["fidelity"] = machine_fidelity(machine, *probe);
    }
    if (basis) doc["basis_action"] = to_json(*basis);
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << "circle normal: " << format_vector(circle.normal) << "\n"
      << "direction:     " << (inverse ? "anti-parallel -> parallel" : "parallel -> anti-parallel")
      << "\n"
      << "u2 = " << format_matrix(machine.u2()) << "\n"
      << "u4 = I (x) u2 = " << format_matrix(machine.u4()) << "\n";
  if (probe) {
    out << "probe " << format_vector(*probe) << " fidelity: "
        << format_real(machine_fidelity(machine, *probe)) << "\n";
  }
  if (basis) {
    out << "basis action: a = " << format_real(basis->a) << ", b = " << format_real(basis->b)
        << ", c = " << format_real(basis->c) << ", |c1|^2+|c2|^2 = " << format_real(basis->c_norm)
        << "\n"
        << "predicted azimuth (a-b+pi)/2 mod pi = " << format_real(basis->predicted_azimuth)
        << ", circle azimuth = " << format_real(basis->circle_azimuth) << "\n";
  }
  return kExitOk;
}

int cmd_circle_fit(const GlobalOptions& global, std::ostream& out, std::ostream& err) {
  const auto doc = resolve_input(global, err);
  const CircleFit fit = great_circle_fit(doc.vectors, global.tol);
  if (global.json) {
    out << to_json(fit).dump(2) << "\n";
  } else {
    out << "great circle: " << describe(fit) << "\n";
  }
  return kExitOk;
}

int cmd_span(const GlobalOptions& global, std::ostream& out, std::ostream& err) {
  const auto doc = resolve_input(global, err);
  const std::size_t p = span_dimension(parallels(doc.vectors), global.tol);
  const std::size_t a = span_dimension(antiparallels(doc.vectors), global.tol);
  if (global.json) {
    out << json{{"parallel", p}, {"antiparallel", a}}.dump(2) << "\n";
  } else {
    out << "span dimension P: " << p << "\n"
        << "span dimension A: " << a << "\n";
  }
  return kExitOk;
}

template <class Analysis>
int run_directions(const GlobalOptions& global, Direction direction, Analysis analysis,
                   std::ostream& out, std::ostream& err) {
  const auto doc = resolve_input(global, err);
  const auto p = parallels(doc.vectors);
  const auto a = antiparallels(doc.vectors);
  json doc_json = json::object();
  if (direction != Direction::Reverse) {
    const auto result = analysis(p, a);
    if (global.json) doc_json["pa"] = to_json(result);
    else out << "P->A: " << describe(result) << "\n";
  }
  if (direction != Direction::Forward) {
    const auto result = analysis(a, p);
    if (global.json) doc_json["ap"] = to_json(result);
    else out << "A->P: " << describe(result) << "\n";
  }
  if (global.json) out << doc_json.dump(2) << "\n";
  return kExitOk;
}

int cmd_usd(const GlobalOptions& global, const std::string& priors_flag, const std::string& set,
            std::ostream& out, std::ostream& err) {
  const auto doc = resolve_input(global, err);
  const auto priors = resolve_priors(priors_flag, doc);

  std::vector<std::pair<std::string, std::vector<TwoQubitState>>> sets;
  if (set == "parallel" || set == "both") sets.emplace_back("parallel", parallels(doc.vectors));
  if (set == "antiparallel" || set == "both") {
    sets.emplace_back("antiparallel", antiparallels(doc.vectors));
  }
  if (set == "qubit") {
    // |n> (x) |0> has the same Gram matrix as the single qubits |n>.
    std::vector<TwoQubitState> embedded;
    for (const auto& n : doc.vectors) {
      embedded.push_back(TwoQubitState::product(qubit_from_bloch(n), QubitState{1.0, 0.0}));
    }
    sets.emplace_back("qubit", std::move(embedded));
  }

  json doc_json = json::object();
  for (const auto& [name, states] : sets) {
    UsdResult result;
    try {
      result = usd_max_success(states, priors);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::PriorMismatch) throw ValidationError(e.what());
      throw;
    }
    if (global.json) {
      doc_json[name] = to_json(result);
      doc_json[name]["priors"] = priors;
      continue;
    }
    out << "set: " << name << "\n"
        << "  " << std::left << std::setw(4) << "i" << std::setw(14) << "prior" << "gamma\n";
    for (std::size_t i = 0; i < states.size(); ++i) {
      out << "  " << std::setw(4) << i << std::setw(14) << format_real(priors[i])
          << format_real(result.gammas[i]);
      if (i < doc.labels.size()) out << "  " << doc.labels[i];
      out << "\n";
    }
    out << "  total success: " << format_real(result.value) << "\n";
  }
  if (global.json) out << doc_json.dump(2) << "\n";
  return kExitOk;
}

int cmd_analyze(const GlobalOptions& global, std::ostream& out, std::ostream& err) {
  const auto doc = resolve_input(global, err);
  const AsymmetryReport report = compare_sets(doc.vectors, global.tol);
  if (global.json) {
    out << to_json(report, doc.labels, global.tol).dump(2) << "\n";
  } else {
    print_report(out, report, doc.labels);
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact, probabilistic and impossible parallel <-> anti-parallel spin transformations"};
  app.name("spinflip");
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--tol", global.tol, "Tolerance for Gram, PSD and circle tests")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", global.json, "Emit JSON instead of text");
  app.add_option("--fixture", global.fixture, "Built-in vector set")
      ->check(CLI::IsMember({"tetrahedron", "equator", "meridian-xz"}));

  std::string normal, probe;
  bool inverse = false;
  auto* flip = app.add_subcommand("flip", "Build the flip machine for a great circle");
  flip->add_option("--normal", normal, "Circle normal as x,y,z")->required();
  flip->add_option("--probe", probe, "Bloch vector x,y,z to evaluate");
  flip->add_flag("--inverse", inverse, "Anti-parallel -> parallel machine");
  flip->fallthrough();

  auto* circle = app.add_subcommand("circle-fit", "Fit a great circle to the vectors");
  add_input(*circle, global);
  auto* span = app.add_subcommand("span", "Span dimensions of P_S and A_S");
  add_input(*span, global);

  Direction direction = Direction::Both;
  auto* exact = app.add_subcommand("exact", "Exact unitary transformability");
  add_input(*exact, global);
  exact->add_option("--direction", direction, "pa, ap or both")
      ->transform(CLI::CheckedTransformer(kDirections));
  auto* protrans = app.add_subcommand("protrans", "Best uniform success probability");
  add_input(*protrans, global);
  protrans->add_option("--direction", direction, "pa, ap or both")
      ->transform(CLI::CheckedTransformer(kDirections));

  std::string priors, set = "both";
  auto* usd = app.add_subcommand("usd", "Optimal unambiguous discrimination");
  add_input(*usd, global);
  usd->add_option("--priors", priors, "Comma-separated prior probabilities");
  usd->add_option("--set", set, "parallel, antiparallel, both or qubit")
      ->check(CLI::IsMember({"parallel", "antiparallel", "both", "qubit"}));

  auto* analyze = app.add_subcommand("analyze", "Full parallel/anti-parallel comparison");
  add_input(*analyze, global);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParseError;
  }

  try {
    if (flip->parsed()) return cmd_flip(global, normal, probe, inverse, out);
    if (circle->parsed()) return cmd_circle_fit(global, out, err);
    if (span->parsed()) return cmd_span(global, out, err);
    if (exact->parsed()) {
      return run_directions(
          global, direction,
          [&](const auto& in, const auto& outs) { return exact_transformability(in, outs, global.tol); },
          out, err);
    }
    if (protrans->parsed()) {
      return run_directions(
          global, direction,
          [&](const auto& in, const auto& outs) { return max_uniform_gamma(in, outs, global.tol); },
          out, err);
    }
    if (usd->parsed()) return cmd_usd(global, priors, set, out, err);
    if (analyze->parsed()) return cmd_analyze(global, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidationError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidationError;
  }
  return kExitParseError;
}

}  // namespace spinflip::cli
