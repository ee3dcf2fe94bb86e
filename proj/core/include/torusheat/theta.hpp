#ifndef TORUSHEAT_THETA_HPP
#define TORUSHEAT_THETA_HPP

namespace torusheat {

/// theta(x, s) = sum_{k in Z} e^{-s k^2} e^{i k x}, the 1-D periodic heat
/// kernel factor (positive, even in x, integrates to 1 against dx/2pi).
/// Evaluated by the spectral sum for s >= pi and by the Gaussian image sum
/// sqrt(pi/s) sum_m e^{-(x-2pi m)^2/(4s)} for s < pi; both tails < 1e-14.
double theta1d(double x, double s);

/// d/ds theta(x, s) and d^2/ds^2 theta(x, s), same dual evaluation.
double theta1d_ds(double x, double s);
double theta1d_ds2(double x, double s);

/// log theta(0, s), accurate for large s where theta(0,s) -> 1.
double log_theta0(double s);

/// (1/2pi) * integral over the circle of |d/ds theta| and |d^2/ds^2 theta|.
double theta_ds_l1(double s);
double theta_ds2_l1(double s);

} // namespace torusheat

#endif
