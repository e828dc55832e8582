#include "torusopt/report.hpp"

#include <sstream>

#include "torusopt/json_io.hpp"

namespace torusopt {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  out += '"';
  return out;
}

const char* boolean(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string report_to_json(const RunReport& r) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"schema\": 1,\n";
  os << "  \"input\": {\"path\": " << quoted(r.input_path) << ", \"digest\": " << quoted(r.input_digest)
     << ", \"num_vertices\": " << r.num_vertices << ", \"num_edges\": " << r.num_edges
     << ", \"num_faces\": " << r.num_faces << "},\n";
  os << "  \"validation\": {\"valid\": " << boolean(r.valid) << ", \"violations\": [";
  for (size_t i = 0; i < r.violations.size(); ++i)
    os << (i ? ", " : "") << quoted(r.violations[i]);
  os << "]},\n";
  os << "  \"weights\": {\"all_positive\": " << boolean(r.weights_all_positive)
     << ", \"nondegenerate\": " << boolean(r.nondegenerate)
     << ", \"min_pivot\": " << format_real(r.min_pivot) << "},\n";

  os << "  \"tau_c\": ";
  if (r.tau_re)
    os << "{\"route\": \"response\", \"re\": " << format_real(*r.tau_re)
       << ", \"im\": " << format_real(*r.tau_im) << "},\n";
  else
    os << "null,\n";

  os << "  \"k_c\": {";
  bool first = true;
  auto emit_k = [&](const char* route, const std::optional<Real>& v) {
    if (!v) return;
    os << (first ? "" : ", ") << "\"" << route << "\": " << format_real(*v);
    first = false;
  };
  emit_k("response", r.k_response);
  emit_k("det0", r.k_det0);
  emit_k("direct", r.k_direct);
  os << "},\n";

  os << "  \"energies\": [";
  for (size_t i = 0; i < r.energies.size(); ++i) {
    const auto& row = r.energies[i];
    os << (i ? ", " : "") << "{\"tau\": {\"re\": " << format_real(row.tau_re)
       << ", \"im\": " << format_real(row.tau_im) << "}, \"response\": " << format_real(row.formula)
       << ", \"direct\": " << format_real(row.direct) << "}";
  }
  os << "],\n";

  os << "  \"delaunay\": ";
  if (r.delaunay) {
    const auto& d = *r.delaunay;
    os << "{\"route\": \"direct\", \"pass\": " << boolean(d.pass)
       << ", \"max_ratio_error\": " << format_real(d.max_ratio_error)
       << ", \"max_ratio_imag\": " << format_real(d.max_ratio_imag)
       << ", \"primal_faces_convex\": " << boolean(d.primal_faces_convex)
       << ", \"dual_faces_convex\": " << boolean(d.dual_faces_convex)
       << ", \"period_defect\": " << format_real(d.period_defect) << "},\n";
  } else {
    os << "null,\n";
  }

  os << "  \"oracle\": ";
  if (r.oracle) {
    const auto& o = *r.oracle;
    os << "{\"route\": \"oracle\", \"tau\": {\"re\": " << format_real(o.tau_re)
       << ", \"im\": " << format_real(o.tau_im) << "}, \"energy\": " << format_real(o.energy)
       << ", \"delta_tau\": " << format_real(o.delta_tau)
       << ", \"delta_energy_rel\": " << format_real(o.delta_energy_rel)
       << ", \"iterations\": " << o.iterations << ", \"starts_agree\": " << boolean(o.starts_agree)
       << "}\n";
  } else {
    os << "null\n";
  }
  os << "}\n";
  return os.str();
}

std::string report_to_text(const RunReport& r) {
  std::ostringstream os;
  os << "input: " << r.input_path << " (digest " << r.input_digest << ")\n";
  os << "cells: " << r.num_vertices << " vertices, " << r.num_edges << " edges, " << r.num_faces
     << " faces\n";
  os << "validation: " << (r.valid ? "valid" : "INVALID") << "\n";
  for (const std::string& v : r.violations) os << "  - " << v << "\n";
  if (!r.valid) return os.str();
  os << "weights: " << (r.weights_all_positive ? "positive" : "signed") << ", "
     << (r.nondegenerate ? "non-degenerate" : "DEGENERATE") << " (min pivot " << format_real(r.min_pivot)
     << ")\n";
  if (r.tau_re) {
    os << "tau_c [response]: " << format_real(*r.tau_re) << " + " << format_real(*r.tau_im) << "i\n";
    os << "k_c  [response]: " << format_real(*r.k_response) << "\n";
    os << "k_c  [det0]:     " << format_real(*r.k_det0) << "\n";
    if (r.k_direct) os << "k_c  [direct]:   " << format_real(*r.k_direct) << "\n";
  }
  for (const auto& row : r.energies)
    os << "energy at tau = " << format_real(row.tau_re) << " + " << format_real(row.tau_im)
       << "i: " << format_real(row.formula) << " [response], " << format_real(row.direct)
       << " [direct]\n";
  if (r.delaunay) {
    os << "delaunay [direct]: " << (r.delaunay->pass ? "PASS" : "FAIL")
       << " (ratio err " << format_real(r.delaunay->max_ratio_error) << ", period defect "
       << format_real(r.delaunay->period_defect) << ")\n";
  }
  if (r.oracle) {
    os << "oracle: tau = " << format_real(r.oracle->tau_re) << " + " << format_real(r.oracle->tau_im)
       << "i, energy " << format_real(r.oracle->energy) << ", delta_tau "
       << format_real(r.oracle->delta_tau) << ", delta_energy_rel "
       << format_real(r.oracle->delta_energy_rel) << ", iterations " << r.oracle->iterations << "\n";
  }
  os << "timing: solve " << format_real(r.solve_ms) << " ms";
  if (r.oracle) os << ", oracle " << format_real(r.oracle_ms) << " ms";
  os << "\n";
  return os.str();
}

}  // namespace torusopt
