#pragma once

namespace triad {

/// Numerical thresholds shared by every module. All "relative" values are
/// scaled by the magnitude stated next to them.
struct Tolerances {
  double herm = 1e-10;    ///< ||A - A*||_F <= herm * ||A||_F
  double psd = 1e-9;      ///< min eig >= -psd * max(1, ||A||_inf)
  double rank = 1e-8;     ///< eigenvalues <= rank * lambda_max count as zero
  double inv = 1e-8;      ///< ||R(g) - g||_F <= inv * ||g||_F
  double ccnr = 1e-9;     ///< CCNR flag requires ||R(g)||_1 > 1 + ccnr
  double filter = 1e-9;   ///< marginal residual target for filter normal forms
  double ds = 1e-8;       ///< doubly stochastic residual threshold
  double eq = 1e-7;       ///< relative spread for "equal" eigenvalues/coefficients
  double split = 1e-8;    ///< complete-reducibility residual, relative to ||g||_F
  double bound = 1e-9;    ///< slack allowed on spectral-radius bounds
  double trace = 1e-9;    ///< |tr(g) - 1| allowed for a state
};

}  // namespace triad
