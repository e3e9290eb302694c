#pragma once

#include <ostream>
#include <span>
#include <stdexcept>

namespace ranctl::rapp {

struct Anchor {
  double x = 0.0;  // Mbit/s
  double y = 0.0;  // F1
};

inline constexpr Anchor kNoDetection{0.1, 0.0};
inline constexpr Anchor kFullQuality{10.0, 0.95};

/// f1(x) = a * x^b + c over the bitrate domain [x_lo, x_hi].
struct F1Model {
  double a = 0.0;
  double b = 1.0;
  double c = 0.0;
  double x_lo = kNoDetection.x;
  double x_hi = kFullQuality.x;

  /// Unclamped power curve.
  double raw(double x) const;
};

class OutOfRange : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Solves a*x_lo^b + c = y_lo, a*x_hi^b + c = y_hi. Rejects b == 0 and equal
/// or non-positive anchor bitrates with ValidationError.
F1Model fit_model(double b, Anchor lo = kNoDetection, Anchor hi = kFullQuality);

/// x is clamped into the domain and the result into [0, 1].
double bitrate_to_f1(const F1Model& m, double x);

/// Inverse on the domain; throws OutOfRange when y is not reachable.
double f1_to_bitrate(const F1Model& m, double y);

/// Rows `b,x,f1` for each b, sampled at `points` log-spaced bitrates.
void write_curves_csv(std::ostream& out, std::span<const double> bs, int points,
                      Anchor lo = kNoDetection, Anchor hi = kFullQuality);

}  // namespace ranctl::rapp
