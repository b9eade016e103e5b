#pragma once

#include <span>
#include <vector>

#include "frheo/frac_ops.h"

namespace frheo {

/// One creep observation: stress held constant, strain measured at time t.
struct CreepRecord {
    double t = 0.0;       // s
    double stress = 0.0;  // Pa
    double strain = 0.0;  // dimensionless
};

/// Least-squares estimate of Nutting's law psi = S^beta_exp strain^{-1} t^alpha.
struct NuttingFit {
    double psi = 0.0;
    double alpha = 0.0;
    double beta_exp = 0.0;
    double rms_log_residual = 0.0;
    int n_points = 0;
    bool beta_fixed = false;       // stress did not vary; beta_exp pinned to 1
    bool alpha_out_of_range = false;  // alpha estimate outside [0, 1], reported unclamped
};

void validate(const CreepRecord& r);

/// Ordinary least squares of log strain = beta log S + alpha log t - log psi.
/// Throws DegenerateDataError for fewer than three records, a single distinct
/// time, or collinear log stress and log time.
NuttingFit fit_nutting(std::span<const CreepRecord> data);

/// Quasi-property S / D^mu strain, evaluated from the second sample on (the
/// lower-terminal sample carries no derivative information). Throws
/// DivisionError where the derivative is not positive.
SignalSeries quasi_property(double S, const SignalSeries& strain, FractionalOrder mu);

/// Truncated generalized Nutting series
///   strain = S^beta_exp (c0 t^a + c1 t^(a-1) + c2 t^(a-2) + ...).
SignalSeries nutting_general_series(double S, double beta_exp, double alpha_prime,
                                    std::span<const double> coeffs, const UniformGrid& grid);

}  // namespace frheo
