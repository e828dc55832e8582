#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torusopt/embedding.hpp"
#include "torusopt/moduli.hpp"
#include "torusopt/oracle.hpp"

namespace torusopt {

/// Solve-command results. Every numeric value carries the route that
/// produced it: "response" (response-matrix closed form), "det0"
/// (determinant ratio), "direct" (assembled embedding), "oracle"
/// (brute-force minimization).
struct RunReport {
  std::string input_path;
  std::string input_digest;
  int num_vertices = 0;
  int num_edges = 0;
  int num_faces = 0;

  bool valid = false;
  std::vector<std::string> violations;

  bool weights_all_positive = false;
  bool nondegenerate = false;
  Real min_pivot = 0;

  std::optional<Real> tau_re, tau_im;  // route: response
  std::optional<Real> k_response;
  std::optional<Real> k_det0;
  std::optional<Real> k_direct;

  struct EnergyRow {
    Real tau_re = 0, tau_im = 0;
    Real formula = 0;  // route: response
    Real direct = 0;   // route: direct
  };
  std::vector<EnergyRow> energies;

  struct DelaunaySection {
    bool pass = false;
    Real max_ratio_error = 0;
    Real max_ratio_imag = 0;
    bool primal_faces_convex = false;
    bool dual_faces_convex = false;
    Real period_defect = 0;
  };
  std::optional<DelaunaySection> delaunay;  // route: direct

  struct OracleSection {
    Real tau_re = 0, tau_im = 0;
    Real energy = 0;
    Real delta_tau = 0;         // max component gap to the response route
    Real delta_energy_rel = 0;  // relative gap to the response route
    int iterations = 0;
    bool starts_agree = false;
  };
  std::optional<OracleSection> oracle;

  Real solve_ms = 0;   // excluded from the JSON output to keep it byte-stable
  Real oracle_ms = 0;
};

/// Deterministic JSON rendering: fixed key order, 17 significant digits,
/// no timing fields. Identical inputs and flags give identical bytes.
std::string report_to_json(const RunReport& report);

/// Human-readable summary, including timings.
std::string report_to_text(const RunReport& report);

}  // namespace torusopt
