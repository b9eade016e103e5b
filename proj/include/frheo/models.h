#pragma once

#include <complex>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "frheo/frac_ops.h"
#include "frheo/laplace.h"
#include "frheo/special_fn.h"

namespace frheo {

// Constitutive models. D^a is the Riemann-Liouville derivative with lower
// terminal 0; all histories start from rest.

/// sigma = kappa D^alpha eps (Scott Blair / Gerasimov element).
struct SpringPot {
    double kappa = 1.0;
    FractionalOrder alpha;
};

/// sigma + lambda^alpha D^alpha sigma = E lambda^beta D^beta eps, alpha <= beta.
struct FracMaxwell {
    double E = 1.0;
    double lambda = 1.0;
    FractionalOrder alpha;
    FractionalOrder beta;
};

/// sigma + a1 D^alpha sigma = b0 eps.
struct ThreeParamMaxwell {
    double a1 = 1.0;
    double b0 = 1.0;
    FractionalOrder alpha;
};

/// sigma = b0 eps + b1 D^alpha eps.
struct FracKelvinVoigt {
    double b0 = 0.0;
    double b1 = 1.0;
    FractionalOrder alpha;
};

/// sigma + a1 D^alpha sigma = b0 eps + b1 D^alpha eps.
struct FracZener {
    double a1 = 1.0;
    double b0 = 1.0;
    double b1 = 1.0;
    FractionalOrder alpha;
};

/// sigma + (E/E0)(lambda^(alpha-gamma) D^(alpha-gamma) + lambda^(beta-gamma) D^(beta-gamma)) sigma
///   = E (lambda^alpha D^alpha + lambda^beta D^beta) eps,  gamma <= alpha <= beta.
struct PoyntingThomson {
    double E = 1.0;
    double E0 = 1.0;
    double lambda = 1.0;
    FractionalOrder alpha;
    FractionalOrder beta;
    FractionalOrder gamma;
};

/// sigma + tau D sigma = E tau D eps.
struct ClassicalMaxwell {
    double E = 1.0;
    double tau = 1.0;
};

/// sigma = E (eps + tau D eps).
struct ClassicalKelvin {
    double E = 1.0;
    double tau = 1.0;
};

using MaterialModel = std::variant<SpringPot, FracMaxwell, ThreeParamMaxwell, FracKelvinVoigt,
                                   FracZener, PoyntingThomson, ClassicalMaxwell, ClassicalKelvin>;

/// Throws InvalidParameter on a violated type invariant.
void validate(const MaterialModel& m);

/// Soft admissibility checks (e.g. b1 >= a1 b0 for the Zener model). Empty when
/// the parameters are thermodynamically admissible.
std::vector<std::string> admissibility_warnings(const MaterialModel& m);

std::string model_name(const MaterialModel& m);

/// Stress-to-strain transfer function G(s) on the principal branch.
/// Throws BranchError on the negative real axis and DomainError at s = 0.
std::complex<double> transfer_function(const MaterialModel& m, std::complex<double> s);

enum class ResponseKind { relaxation, creep, complex };

struct MaterialResponse {
    ResponseKind kind = ResponseKind::relaxation;
    std::vector<double> abscissae;                     // t (s) or omega (rad/s)
    std::vector<double> values;                        // relaxation and creep
    std::vector<std::complex<double>> complex_values;  // complex modulus
    std::vector<std::string> diagnostics;
};

/// Laplace transforms of the relaxation modulus, G(s)/s, and of the creep
/// compliance, 1/(s G(s)). Dirac impulses at t = 0 are removed so the
/// transforms decay along the contour.
TransformFn relaxation_transform(const MaterialModel& m);
TransformFn creep_transform(const MaterialModel& m);

/// Stress under a unit step strain. Closed forms through the Mittag-Leffler
/// function; the Poynting-Thomson model is inverted numerically. Impulses at
/// t = 0 are not represented.
double relaxation_modulus_at(const MaterialModel& m, double t);
MaterialResponse relaxation_modulus(const MaterialModel& m, std::span<const double> t_grid);

/// Strain under a unit step stress.
double creep_compliance_at(const MaterialModel& m, double t);
MaterialResponse creep_compliance(const MaterialModel& m, std::span<const double> t_grid);

/// G*(omega) = G(i omega).
MaterialResponse complex_modulus(const MaterialModel& m, std::span<const double> omega_grid);

/// Stress history for a strain history starting from rest (t0 = 0, eps(0) = 0).
/// Every fractional derivative is replaced by its Grünwald-Letnikov sum and
/// the update is implicit in the current stress.
SignalSeries simulate_stress(const MaterialModel& m, const SignalSeries& strain);

/// Rabotnov's hereditary law with the current time as upper limit:
///   sigma(t) = E [eps(t) - weight * int_0^t R_alpha(-beta, t - tau) eps(tau) dtau].
/// The strain is interpolated linearly between samples and the kernel is
/// integrated exactly against each linear piece. The three-argument form uses
/// weight = beta.
SignalSeries rabotnov_stress(const RabotnovParams& p, double E, const SignalSeries& strain);
SignalSeries rabotnov_stress(const RabotnovParams& p, double E, double weight,
                             const SignalSeries& strain);

/// Fractional Zener parameters whose transfer function equals that of the
/// weighted Rabotnov law: order alpha+1, a1 = 1/beta, b1 = E/beta,
/// b0 = E (1 - weight/beta). Requires beta > 0.
FracZener rabotnov_equivalent_zener(const RabotnovParams& p, double E, double weight);

/// Creep strain of Nutting's law psi = S^beta_exp strain^{-1} t^alpha:
/// strain(t) = S^beta_exp t^alpha / psi.
SignalSeries nutting_strain(double psi, double S, FractionalOrder alpha, double beta_exp,
                            const UniformGrid& grid);

/// The single relaxation time implied by Nutting's law at a given strain:
/// psi^(1/alpha) S^(-beta_exp/alpha) strain^(1/alpha).
double relaxation_time_of_stress(double psi, double S, FractionalOrder alpha, double beta_exp,
                                 double strain);

}  // namespace frheo
