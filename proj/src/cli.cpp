#include "torusopt/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "torusopt/embedding.hpp"
#include "torusopt/json_io.hpp"
#include "torusopt/moduli.hpp"
#include "torusopt/oracle.hpp"
#include "torusopt/report.hpp"
#include "torusopt/svg.hpp"

namespace torusopt::cli {

namespace {

struct LoadedInput {
  std::string text;
  ToroidalComplex complex;
  EdgeWeights weights;
  ValidationReport report;
  bool parsed = false;
  bool valid = false;
};

LoadedInput load_input(const std::string& path, std::ostream& err) {
  LoadedInput in;
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot open " << path << "\n";
    return in;
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  in.text = buffer.str();

  RawComplex raw;
  try {
    raw = parse_raw_complex(in.text);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return in;
  }
  in.parsed = true;

  ValidationOutcome outcome = validate_complex(raw);
  in.report = std::move(outcome.report);
  if (outcome.complex) {
    in.complex = std::move(*outcome.complex);
    in.weights = std::move(*outcome.weights);
    in.valid = true;
  }
  return in;
}

Complex parse_tau(const std::string& text) {
  double re = 0, im = 0;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%lf,%lf%c", &re, &im, &extra) != 2)
    throw CLI::ValidationError("--tau", "expected \"re,im\", got \"" + text + "\"");
  return {re, im};
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  LoadedInput in = load_input(path, err);
  if (!in.parsed) return kExitParse;
  if (!in.valid) {
    out << "INVALID\n" << in.report.summary();
    return kExitInvalid;
  }
  out << "valid: " << in.complex.num_vertices << " vertices, " << in.complex.num_edges() << " edges, "
      << in.complex.num_faces() << " faces\n";
  return kExitOk;
}

int cmd_solve(const std::string& path, const std::vector<std::string>& tau_args, bool with_oracle,
              std::uint64_t seed, const std::string& svg_path, const std::string& json_path,
              std::ostream& out, std::ostream& err) {
  LoadedInput in = load_input(path, err);
  if (!in.parsed) return kExitParse;

  RunReport report;
  report.input_path = path;
  report.input_digest = digest_hex(in.text);
  report.valid = in.valid;
  for (const Violation& v : in.report.violations) report.violations.push_back(v.code + ": " + v.message);
  if (!in.valid) {
    out << report_to_text(report);
    return kExitInvalid;
  }
  report.num_vertices = in.complex.num_vertices;
  report.num_edges = in.complex.num_edges();
  report.num_faces = in.complex.num_faces();
  report.weights_all_positive = in.weights.all_positive;

  const auto start = std::chrono::steady_clock::now();
  OperatorBundle bundle = build_operators(in.complex, in.weights);
  NondegeneracyCheck gram = check_nondegenerate(bundle);
  report.nondegenerate = gram.nondegenerate;
  report.min_pivot = gram.min_pivot;
  if (!gram.nondegenerate) {
    err << "degenerate weights: Gram pivot " << format_real(gram.min_pivot) << " at position "
        << gram.pivot_index << " (scale " << format_real(gram.scale) << ")\n";
    out << report_to_text(report);
    return kExitDegenerate;
  }

  OptimalStructure opt = extract_modulus(response_matrix(bundle));
  report.tau_re = opt.tau_c.re();
  report.tau_im = opt.tau_c.im();
  report.k_response = opt.k_c;
  report.k_det0 = k_from_det_ratio(bundle);

  DualComplex dual = build_dual(in.complex);
  TorusEmbedding emb = harmonic_embedding(bundle, opt.tau_c);
  report.k_direct = dirichlet_energy(emb, in.weights);
  DualEmbedding demb = conjugate_embedding(dual, emb, in.weights, opt.k_c);
  DelaunayReport del = delaunay_report(in.complex, dual, emb, demb, in.weights, opt.k_c);
  report.delaunay = RunReport::DelaunaySection{
      del.pass,
      del.max_ratio_error,
      del.max_ratio_imag,
      del.primal_faces.convex && del.primal_faces.positively_oriented,
      del.dual_faces.convex && del.dual_faces.positively_oriented,
      del.period_defect};

  for (const std::string& arg : tau_args) {
    const Complex tau_value = parse_tau(arg);
    Modulus tau(tau_value);
    RunReport::EnergyRow row;
    row.tau_re = tau.re();
    row.tau_im = tau.im();
    row.formula = energy_at(opt, tau);
    row.direct = dirichlet_energy(harmonic_embedding(bundle, tau), in.weights);
    report.energies.push_back(row);
  }
  report.solve_ms = elapsed_ms(start);

  if (with_oracle) {
    const auto oracle_start = std::chrono::steady_clock::now();
    OracleResult oracle;
    try {
      oracle = minimize_energy(in.complex, in.weights, Modulus(0, 1), seed);
    } catch (const OracleError& e) {
      err << "oracle failure: " << e.what() << "\n";
      return kExitOracle;
    }
    report.oracle_ms = elapsed_ms(oracle_start);
    if (!oracle.starts_agree) {
      err << "oracle failure: starts disagree\n";
      return kExitOracle;
    }
    RunReport::OracleSection section;
    section.tau_re = oracle.tau_star.re();
    section.tau_im = oracle.tau_star.im();
    section.energy = oracle.energy;
    section.delta_tau = std::max(std::abs(oracle.tau_star.re() - opt.tau_c.re()),
                                 std::abs(oracle.tau_star.im() - opt.tau_c.im()));
    section.delta_energy_rel = std::abs(oracle.energy - opt.k_c) / opt.k_c;
    section.iterations = oracle.iterations;
    section.starts_agree = oracle.starts_agree;
    report.oracle = section;
  }

  if (!svg_path.empty()) {
    std::ofstream svg(svg_path, std::ios::binary);
    if (!svg) {
      err << "error: cannot write " << svg_path << "\n";
      return kExitParse;
    }
    svg << render_svg(in.complex, dual, emb, demb);
  }
  if (!json_path.empty()) {
    if (json_path == "-") {
      out << report_to_json(report);
    } else {
      std::ofstream json(json_path, std::ios::binary);
      if (!json) {
        err << "error: cannot write " << json_path << "\n";
        return kExitParse;
      }
      json << report_to_json(report);
    }
  }
  if (json_path != "-") out << report_to_text(report);
  return kExitOk;
}

int cmd_oracle(const std::string& path, std::uint64_t seed, std::ostream& out, std::ostream& err) {
  LoadedInput in = load_input(path, err);
  if (!in.parsed) return kExitParse;
  if (!in.valid) {
    out << "INVALID\n" << in.report.summary();
    return kExitInvalid;
  }
  OperatorBundle bundle = build_operators(in.complex, in.weights);
  NondegeneracyCheck gram = check_nondegenerate(bundle);
  if (!gram.nondegenerate) {
    err << "degenerate weights: Gram pivot " << format_real(gram.min_pivot) << "\n";
    return kExitDegenerate;
  }
  OptimalStructure opt = extract_modulus(response_matrix(bundle));
  OracleResult oracle;
  try {
    oracle = minimize_energy(in.complex, in.weights, Modulus(0, 1), seed);
  } catch (const OracleError& e) {
    err << "oracle failure: " << e.what() << "\n";
    return kExitOracle;
  }
  if (!oracle.starts_agree) {
    err << "oracle failure: starts disagree\n";
    return kExitOracle;
  }
  out << "oracle [oracle]: tau = " << format_real(oracle.tau_star.re()) << " + "
      << format_real(oracle.tau_star.im()) << "i, energy " << format_real(oracle.energy) << "\n";
  out << "closed form [response]: tau = " << format_real(opt.tau_c.re()) << " + "
      << format_real(opt.tau_c.im()) << "i, energy " << format_real(opt.k_c) << "\n";
  out << "delta_tau " << format_real(std::max(std::abs(oracle.tau_star.re() - opt.tau_c.re()),
                                              std::abs(oracle.tau_star.im() - opt.tau_c.im())))
      << ", delta_energy_rel " << format_real(std::abs(oracle.energy - opt.k_c) / opt.k_c) << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"harmonic realizations of weighted toroidal graphs"};
  app.require_subcommand(1);

  std::string path;
  std::vector<std::string> tau_args;
  bool with_oracle = false;
  std::uint64_t seed = 1;
  std::string svg_path, json_path;

  CLI::App* validate = app.add_subcommand("validate", "check a graph file");
  validate->add_option("path", path, "graph JSON file")->required();

  CLI::App* solve = app.add_subcommand("solve", "optimal torus, energies, duality report");
  solve->add_option("path", path, "graph JSON file")->required();
  solve->add_option("--tau", tau_args, "evaluate the energy at re,im (repeatable)");
  solve->add_flag("--oracle", with_oracle, "append the brute-force comparison");
  solve->add_option("--seed", seed, "oracle seed");
  solve->add_option("--svg", svg_path, "write the fundamental-domain drawing here");
  solve->add_option("--json", json_path, "write the JSON report here ('-' for stdout)");

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force energy minimization only");
  oracle->add_option("path", path, "graph JSON file")->required();
  oracle->add_option("--seed", seed, "random seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }

  try {
    if (validate->parsed()) return cmd_validate(path, out, err);
    if (solve->parsed())
      return cmd_solve(path, tau_args, with_oracle, seed, svg_path, json_path, out, err);
    if (oracle->parsed()) return cmd_oracle(path, seed, out, err);
  } catch (const DegenerateWeightsError& e) {
    err << "degenerate weights: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitParse;
}

}  // namespace torusopt::cli
