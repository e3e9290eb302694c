#include "ranctl/rapp/f1_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ranctl/error.hpp"
#include "ranctl/format.hpp"

namespace ranctl::rapp {

double F1Model::raw(double x) const { return a * std::pow(x, b) + c; }

F1Model fit_model(double b, Anchor lo, Anchor hi) {
  if (b == 0.0 || !std::isfinite(b)) throw ValidationError("F1 model is undefined for b = 0");
  if (!(lo.x > 0.0 && hi.x > 0.0)) throw ValidationError("anchor bitrates must be positive");
  if (lo.x == hi.x) throw ValidationError("anchor bitrates must differ");
  if (lo.x > hi.x) std::swap(lo, hi);
  const double plo = std::pow(lo.x, b);
  const double phi = std::pow(hi.x, b);
  F1Model m;
  m.b = b;
  m.a = (hi.y - lo.y) / (phi - plo);
  m.c = lo.y - m.a * plo;
  m.x_lo = lo.x;
  m.x_hi = hi.x;
  return m;
}

double bitrate_to_f1(const F1Model& m, double x) {
  if (std::isnan(x) || x < 0.0) throw ValidationError("bitrate must be non-negative");
  return std::clamp(m.raw(std::clamp(x, m.x_lo, m.x_hi)), 0.0, 1.0);
}

double f1_to_bitrate(const F1Model& m, double y) {
  const double y1 = m.raw(m.x_lo);
  const double y2 = m.raw(m.x_hi);
  const double lo = std::min(y1, y2);
  const double hi = std::max(y1, y2);
  if (!(y >= lo && y <= hi)) {
    throw OutOfRange("F1 " + format_double(y) + " outside achievable range [" + format_double(lo) +
                     ", " + format_double(hi) + "]");
  }
  if (y == y1) return m.x_lo;
  if (y == y2) return m.x_hi;
  const double x = std::pow((y - m.c) / m.a, 1.0 / m.b);
  return std::clamp(x, m.x_lo, m.x_hi);
}

void write_curves_csv(std::ostream& out, std::span<const double> bs, int points, Anchor lo,
                      Anchor hi) {
  if (points < 2) throw ValidationError("curves need at least 2 points");
  out << "b,x,f1\n";
  for (double b : bs) {
    const F1Model m = fit_model(b, lo, hi);
    const double l0 = std::log(m.x_lo);
    const double l1 = std::log(m.x_hi);
    for (int i = 0; i < points; ++i) {
      double x = std::exp(l0 + (l1 - l0) * i / (points - 1));
      if (i == 0) x = m.x_lo;
      if (i == points - 1) x = m.x_hi;
      out << format_double(b) << ',' << format_double(x) << ',' << format_double(bitrate_to_f1(m, x))
          << '\n';
    }
  }
}

}  // namespace ranctl::rapp
