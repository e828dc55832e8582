#include "torusopt/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace torusopt {

namespace {

// Reduce a lift into the fundamental domain spanned by t1, t2.
Complex reduce_to_domain(Complex z, Complex t1, Complex t2) {
  const Real det = t1.real() * t2.imag() - t1.imag() * t2.real();
  const Real s = (z.real() * t2.imag() - z.imag() * t2.real()) / det;
  const Real t = (t1.real() * z.imag() - t1.imag() * z.real()) / det;
  return z - std::floor(s) * t1 - std::floor(t) * t2;
}

std::string num(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

std::string render_svg(const ToroidalComplex& complex, const DualComplex& dual,
                       const TorusEmbedding& emb, const DualEmbedding& demb) {
  const Complex t1 = emb.t1, t2 = emb.t2;
  const Complex corners[4] = {Complex(0, 0), t1, t1 + t2, t2};

  Real min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  for (const Complex& c : corners) {
    min_x = std::min(min_x, c.real());
    max_x = std::max(max_x, c.real());
    min_y = std::min(min_y, c.imag());
    max_y = std::max(max_y, c.imag());
  }
  const Real span = std::max(max_x - min_x, max_y - min_y);
  const Real scale = 480.0 / std::max<Real>(span, 1e-9);
  const Real margin = 24.0;
  auto X = [&](Complex z) { return margin + (z.real() - min_x) * scale; };
  auto Y = [&](Complex z) { return margin + (max_y - z.imag()) * scale; };
  const Real width = 2 * margin + (max_x - min_x) * scale;
  const Real height = 2 * margin + (max_y - min_y) * scale;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
     << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
  os << "  <defs>\n    <clipPath id=\"domain\">\n      <path d=\"M " << num(X(corners[0])) << " "
     << num(Y(corners[0]));
  for (int i = 1; i < 4; ++i) os << " L " << num(X(corners[i])) << " " << num(Y(corners[i]));
  os << " Z\"/>\n    </clipPath>\n  </defs>\n";
  os << "  <path class=\"outline\" d=\"M " << num(X(corners[0])) << " " << num(Y(corners[0]));
  for (int i = 1; i < 4; ++i) os << " L " << num(X(corners[i])) << " " << num(Y(corners[i]));
  os << " Z\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>\n";

  os << "  <g clip-path=\"url(#domain)\">\n";
  os << "    <g class=\"primal\" stroke=\"#202020\" stroke-width=\"1.5\">\n";
  for (int e = 0; e < complex.num_edges(); ++e) {
    const EdgeRecord& rec = complex.edges[static_cast<size_t>(e)];
    const Complex a = reduce_to_domain(emb.positions[static_cast<size_t>(rec.tail)], t1, t2);
    const Complex b = a + emb.displacement[static_cast<size_t>(e)];
    os << "      <line class=\"primal\" x1=\"" << num(X(a)) << "\" y1=\"" << num(Y(a)) << "\" x2=\""
       << num(X(b)) << "\" y2=\"" << num(Y(b)) << "\"/>\n";
  }
  os << "    </g>\n";
  os << "    <g class=\"dual\" stroke=\"#bb3333\" stroke-width=\"1.2\" stroke-dasharray=\"6 4\">\n";
  const ToroidalComplex& d = dual.complex;
  for (int e = 0; e < d.num_edges(); ++e) {
    const EdgeRecord& rec = d.edges[static_cast<size_t>(e)];
    const Complex step = demb.positions[static_cast<size_t>(rec.head)] -
                         demb.positions[static_cast<size_t>(rec.tail)] +
                         demb.p1 * static_cast<Real>(rec.label.x()) +
                         demb.p2 * static_cast<Real>(rec.label.y());
    const Complex a = reduce_to_domain(demb.positions[static_cast<size_t>(rec.tail)], t1, t2);
    const Complex b = a + step;
    os << "      <line class=\"dual\" x1=\"" << num(X(a)) << "\" y1=\"" << num(Y(a)) << "\" x2=\""
       << num(X(b)) << "\" y2=\"" << num(Y(b)) << "\"/>\n";
  }
  os << "    </g>\n  </g>\n</svg>\n";
  return os.str();
}

}  // namespace torusopt
