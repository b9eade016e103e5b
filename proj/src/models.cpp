#include "frheo/models.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "frheo/errors.h"

namespace frheo {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

using cplx = std::complex<double>;

cplx cpow(cplx s, double a) {
    if (a == 0.0) return 1.0;
    if (a == 1.0) return s;
    return std::pow(s, a);
}

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << name << " must be positive and finite, got " << v;
        throw InvalidParameter(os.str());
    }
}

void require_nonnegative(double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << name << " must be nonnegative and finite, got " << v;
        throw InvalidParameter(os.str());
    }
}

void require_time(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        std::ostringstream os;
        os << "material functions require t > 0, got " << t;
        throw DomainError(os.str());
    }
}

double ml(double alpha, double beta, double z) { return ml_eval({alpha, beta}, z); }

// Linear operator form sum_i lhs_i D^{order_i} sigma = sum_j rhs_j D^{order_j} eps.
struct OperatorTerm {
    double coef;
    double order;
};

struct OperatorForm {
    std::vector<OperatorTerm> lhs;
    std::vector<OperatorTerm> rhs;
};

OperatorForm operator_form(const MaterialModel& m) {
    return std::visit(
        Overloaded{
            [](const SpringPot& p) {
                return OperatorForm{{{1.0, 0.0}}, {{p.kappa, p.alpha}}};
            },
            [](const FracMaxwell& p) {
                return OperatorForm{{{1.0, 0.0}, {std::pow(p.lambda, p.alpha.value()), p.alpha}},
                                    {{p.E * std::pow(p.lambda, p.beta.value()), p.beta}}};
            },
            [](const ThreeParamMaxwell& p) {
                return OperatorForm{{{1.0, 0.0}, {p.a1, p.alpha}}, {{p.b0, 0.0}}};
            },
            [](const FracKelvinVoigt& p) {
                return OperatorForm{{{1.0, 0.0}}, {{p.b0, 0.0}, {p.b1, p.alpha}}};
            },
            [](const FracZener& p) {
                return OperatorForm{{{1.0, 0.0}, {p.a1, p.alpha}}, {{p.b0, 0.0}, {p.b1, p.alpha}}};
            },
            [](const PoyntingThomson& p) {
                const double ratio = p.E / p.E0;
                const double ag = p.alpha - p.gamma;
                const double bg = p.beta - p.gamma;
                return OperatorForm{{{1.0, 0.0},
                                     {ratio * std::pow(p.lambda, ag), ag},
                                     {ratio * std::pow(p.lambda, bg), bg}},
                                    {{p.E * std::pow(p.lambda, p.alpha.value()), p.alpha},
                                     {p.E * std::pow(p.lambda, p.beta.value()), p.beta}}};
            },
            [](const ClassicalMaxwell& p) {
                return OperatorForm{{{1.0, 0.0}, {p.tau, 1.0}}, {{p.E * p.tau, 1.0}}};
            },
            [](const ClassicalKelvin& p) {
                return OperatorForm{{{1.0, 0.0}}, {{p.E, 0.0}, {p.E * p.tau, 1.0}}};
            },
        },
        m);
}

double invert_or_throw(const TransformFn& f, double t) { return invert(f, t, 1e-10); }

}  // namespace

void validate(const MaterialModel& m) {
    std::visit(Overloaded{
                   [](const SpringPot& p) { require_positive(p.kappa, "springpot kappa"); },
                   [](const FracMaxwell& p) {
                       require_positive(p.E, "fractional Maxwell E");
                       require_positive(p.lambda, "fractional Maxwell lambda");
                       if (p.alpha.value() > p.beta.value())
                           throw InvalidParameter("fractional Maxwell requires alpha <= beta");
                   },
                   [](const ThreeParamMaxwell& p) {
                       require_positive(p.a1, "three-parameter Maxwell a1");
                       require_positive(p.b0, "three-parameter Maxwell b0");
                   },
                   [](const FracKelvinVoigt& p) {
                       require_nonnegative(p.b0, "fractional Kelvin-Voigt b0");
                       require_positive(p.b1, "fractional Kelvin-Voigt b1");
                   },
                   [](const FracZener& p) {
                       require_positive(p.a1, "fractional Zener a1");
                       require_nonnegative(p.b0, "fractional Zener b0");
                       require_positive(p.b1, "fractional Zener b1");
                   },
                   [](const PoyntingThomson& p) {
                       require_positive(p.E, "Poynting-Thomson E");
                       require_positive(p.E0, "Poynting-Thomson E0");
                       require_positive(p.lambda, "Poynting-Thomson lambda");
                       if (!(p.gamma.value() <= p.alpha.value() && p.alpha.value() <= p.beta.value()))
                           throw InvalidParameter("Poynting-Thomson requires gamma <= alpha <= beta");
                   },
                   [](const ClassicalMaxwell& p) {
                       require_positive(p.E, "Maxwell E");
                       require_positive(p.tau, "Maxwell tau");
                   },
                   [](const ClassicalKelvin& p) {
                       require_positive(p.E, "Kelvin E");
                       require_positive(p.tau, "Kelvin tau");
                   },
               },
               m);
}

std::vector<std::string> admissibility_warnings(const MaterialModel& m) {
    std::vector<std::string> out;
    if (const auto* z = std::get_if<FracZener>(&m)) {
        if (z->b1 < z->a1 * z->b0) {
            std::ostringstream os;
            os << "fractional Zener with b1 < a1*b0 (" << z->b1 << " < " << z->a1 * z->b0
               << ") is not thermodynamically admissible";
            out.push_back(os.str());
        }
    }
    return out;
}

std::string model_name(const MaterialModel& m) {
    return std::visit(Overloaded{
                          [](const SpringPot&) { return "springpot"; },
                          [](const FracMaxwell&) { return "fmaxwell"; },
                          [](const ThreeParamMaxwell&) { return "maxwell3"; },
                          [](const FracKelvinVoigt&) { return "fkelvinvoigt"; },
                          [](const FracZener&) { return "fzener"; },
                          [](const PoyntingThomson&) { return "poynting"; },
                          [](const ClassicalMaxwell&) { return "cmaxwell"; },
                          [](const ClassicalKelvin&) { return "ckelvin"; },
                      },
                      m);
}

std::complex<double> transfer_function(const MaterialModel& m, std::complex<double> s) {
    validate(m);
    if (s == cplx{0.0, 0.0}) throw DomainError("transfer function undefined at s = 0");
    if (s.imag() == 0.0 && s.real() < 0.0)
        throw BranchError("transfer function: s on the negative real axis (branch cut)");
    return std::visit(
        Overloaded{
            [&](const SpringPot& p) { return p.kappa * cpow(s, p.alpha); },
            [&](const FracMaxwell& p) {
                const cplx ls = p.lambda * s;
                return p.E * cpow(ls, p.beta) / (1.0 + cpow(ls, p.alpha));
            },
            [&](const ThreeParamMaxwell& p) { return p.b0 / (1.0 + p.a1 * cpow(s, p.alpha)); },
            [&](const FracKelvinVoigt& p) { return p.b0 + p.b1 * cpow(s, p.alpha); },
            [&](const FracZener& p) {
                const cplx sa = cpow(s, p.alpha);
                return (p.b0 + p.b1 * sa) / (1.0 + p.a1 * sa);
            },
            [&](const PoyntingThomson& p) {
                const cplx ls = p.lambda * s;
                const double ratio = p.E / p.E0;
                const cplx num = p.E * (cpow(ls, p.alpha) + cpow(ls, p.beta));
                const cplx den = 1.0 + ratio * (cpow(ls, p.alpha - p.gamma) + cpow(ls, p.beta - p.gamma));
                return num / den;
            },
            [&](const ClassicalMaxwell& p) { return p.E * p.tau * s / (1.0 + p.tau * s); },
            [&](const ClassicalKelvin& p) { return p.E * (1.0 + p.tau * s); },
        },
        m);
}

TransformFn relaxation_transform(const MaterialModel& m) {
    validate(m);
    TransformFn f;
    // Impulse weights lim_{s->inf} G(s)/s for the models that carry one.
    double impulse = 0.0;
    if (const auto* kv = std::get_if<FracKelvinVoigt>(&m); kv && kv->alpha.value() == 1.0) impulse = kv->b1;
    if (const auto* k = std::get_if<ClassicalKelvin>(&m)) impulse = k->E * k->tau;
    if (const auto* sp = std::get_if<SpringPot>(&m); sp && sp->alpha.value() == 1.0) impulse = sp->kappa;
    f.eval = [m, impulse](cplx s) { return transfer_function(m, s) / s - impulse; };
    if (const auto* mx = std::get_if<ClassicalMaxwell>(&m)) f.shift = -1.0 / mx->tau;
    if (const auto* fm = std::get_if<FracMaxwell>(&m);
        fm && fm->alpha.value() == 1.0 && fm->beta.value() == 1.0)
        f.shift = -1.0 / fm->lambda;
    return f;
}

TransformFn creep_transform(const MaterialModel& m) {
    validate(m);
    TransformFn f;
    double impulse = 0.0;
    if (const auto* tm = std::get_if<ThreeParamMaxwell>(&m); tm && tm->alpha.value() == 1.0)
        impulse = tm->a1 / tm->b0;
    f.eval = [m, impulse](cplx s) { return 1.0 / (s * transfer_function(m, s)) - impulse; };
    return f;
}

double relaxation_modulus_at(const MaterialModel& m, double t) {
    validate(m);
    if (t == 0.0) {
        if (const auto* fm = std::get_if<FracMaxwell>(&m)) {
            if (fm->beta.value() > fm->alpha.value()) return std::numeric_limits<double>::infinity();
            return fm->E * rgamma(1.0) / (fm->alpha.value() == 0.0 ? 2.0 : 1.0);
        }
    }
    require_time(t);
    return std::visit(
        Overloaded{
            [&](const SpringPot& p) -> double {
                if (p.alpha.value() == 1.0)
                    throw DomainError(
                        "springpot with alpha = 1 is a Newtonian dashpot; its relaxation modulus is "
                        "an impulse, use the viscous law sigma = kappa d(eps)/dt");
                return p.kappa * std::pow(t, -p.alpha.value()) * rgamma(1.0 - p.alpha);
            },
            [&](const FracMaxwell& p) -> double {
                const double a = p.alpha, b = p.beta;
                const double x = t / p.lambda;
                if (a == 0.0) return 0.5 * p.E * std::pow(x, -b) * rgamma(1.0 - b);
                return p.E * std::pow(x, a - b) * ml(a, 1.0 + a - b, -std::pow(x, a));
            },
            [&](const ThreeParamMaxwell& p) -> double {
                const double a = p.alpha;
                if (a == 0.0) return p.b0 / (1.0 + p.a1);
                const double ta = std::pow(t, a);
                return p.b0 / p.a1 * ta * ml(a, a + 1.0, -ta / p.a1);
            },
            [&](const FracKelvinVoigt& p) -> double {
                const double a = p.alpha;
                if (a == 0.0) return p.b0 + p.b1;
                return p.b0 + p.b1 * std::pow(t, -a) * rgamma(1.0 - a);
            },
            [&](const FracZener& p) -> double {
                const double a = p.alpha;
                if (a == 0.0) return (p.b0 + p.b1) / (1.0 + p.a1);
                return p.b0 + (p.b1 / p.a1 - p.b0) * ml(a, 1.0, -std::pow(t, a) / p.a1);
            },
            [&](const PoyntingThomson& p) -> double {
                if (p.gamma.value() == 1.0)
                    throw DomainError("Poynting-Thomson with gamma = 1 has an impulsive relaxation modulus");
                return invert_or_throw(relaxation_transform(m), t);
            },
            [&](const ClassicalMaxwell& p) -> double { return p.E * std::exp(-t / p.tau); },
            [&](const ClassicalKelvin& p) -> double { return p.E; },
        },
        m);
}

double creep_compliance_at(const MaterialModel& m, double t) {
    validate(m);
    require_time(t);
    return std::visit(
        Overloaded{
            [&](const SpringPot& p) -> double {
                return std::pow(t, p.alpha.value()) * rgamma(1.0 + p.alpha) / p.kappa;
            },
            [&](const FracMaxwell& p) -> double {
                const double a = p.alpha, b = p.beta;
                const double x = t / p.lambda;
                return (std::pow(x, b) * rgamma(1.0 + b) + std::pow(x, b - a) * rgamma(1.0 + b - a)) / p.E;
            },
            [&](const ThreeParamMaxwell& p) -> double {
                const double a = p.alpha;
                if (a == 0.0) return (1.0 + p.a1) / p.b0;
                return (1.0 + p.a1 * std::pow(t, -a) * rgamma(1.0 - a)) / p.b0;
            },
            [&](const FracKelvinVoigt& p) -> double {
                const double a = p.alpha;
                if (a == 0.0) return 1.0 / (p.b0 + p.b1);
                const double ta = std::pow(t, a);
                if (p.b0 == 0.0) return ta * rgamma(1.0 + a) / p.b1;
                return ta * ml(a, a + 1.0, -(p.b0 / p.b1) * ta) / p.b1;
            },
            [&](const FracZener& p) -> double {
                const double a = p.alpha;
                if (a == 0.0) return (1.0 + p.a1) / (p.b0 + p.b1);
                const double ta = std::pow(t, a);
                if (p.b0 == 0.0) return (ta * rgamma(1.0 + a) + p.a1) / p.b1;
                return 1.0 / p.b0 + (p.a1 / p.b1 - 1.0 / p.b0) * ml(a, 1.0, -(p.b0 / p.b1) * ta);
            },
            [&](const PoyntingThomson&) -> double { return invert_or_throw(creep_transform(m), t); },
            [&](const ClassicalMaxwell& p) -> double { return (1.0 + t / p.tau) / p.E; },
            [&](const ClassicalKelvin& p) -> double { return -std::expm1(-t / p.tau) / p.E; },
        },
        m);
}

MaterialResponse relaxation_modulus(const MaterialModel& m, std::span<const double> t_grid) {
    MaterialResponse out;
    out.kind = ResponseKind::relaxation;
    out.abscissae.assign(t_grid.begin(), t_grid.end());
    out.values.reserve(t_grid.size());
    for (double t : t_grid) {
        const double g = relaxation_modulus_at(m, t);
        if (std::isinf(g) && out.diagnostics.empty())
            out.diagnostics.push_back("relaxation modulus is singular at t = 0");
        out.values.push_back(g);
    }
    for (auto& w : admissibility_warnings(m)) out.diagnostics.push_back(std::move(w));
    return out;
}

MaterialResponse creep_compliance(const MaterialModel& m, std::span<const double> t_grid) {
    MaterialResponse out;
    out.kind = ResponseKind::creep;
    out.abscissae.assign(t_grid.begin(), t_grid.end());
    out.values.reserve(t_grid.size());
    for (double t : t_grid) out.values.push_back(creep_compliance_at(m, t));
    out.diagnostics = admissibility_warnings(m);
    return out;
}

MaterialResponse complex_modulus(const MaterialModel& m, std::span<const double> omega_grid) {
    MaterialResponse out;
    out.kind = ResponseKind::complex;
    out.abscissae.assign(omega_grid.begin(), omega_grid.end());
    out.complex_values.reserve(omega_grid.size());
    for (double w : omega_grid) {
        if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("complex modulus requires omega > 0");
        out.complex_values.push_back(transfer_function(m, {0.0, w}));
    }
    out.diagnostics = admissibility_warnings(m);
    return out;
}

SignalSeries simulate_stress(const MaterialModel& m, const SignalSeries& strain) {
    validate(m);
    validate(strain);
    if (strain.t0 != 0.0) throw DomainError("simulate_stress: strain history must start at t0 = 0");
    double peak = 0.0;
    for (double v : strain.values) peak = std::max(peak, std::abs(v));
    if (std::abs(strain.values.front()) > 1e-12 * peak)
        throw DomainError("simulate_stress: strain must start from rest (eps(0) = 0)");

    const OperatorForm form = operator_form(m);
    const std::size_t n = strain.size();
    const double h = strain.dt;

    struct Discrete {
        double scale;  // coef * h^{-order}
        std::vector<double> weights;
    };
    auto discretize = [&](const std::vector<OperatorTerm>& terms) {
        std::vector<Discrete> out;
        for (const auto& term : terms) {
            if (term.coef == 0.0) continue;
            Discrete d{term.coef * std::pow(h, -term.order), {}};
            if (term.order != 0.0) d.weights = gl_weights(term.order, n);
            out.push_back(std::move(d));
        }
        return out;
    };
    const auto lhs = discretize(form.lhs);
    const auto rhs = discretize(form.rhs);

    double lead = 0.0;
    for (const auto& d : lhs) lead += d.scale;
    if (!(lead > 0.0) || !std::isfinite(lead))
        throw StabilityError("simulate_stress: implicit update coefficient is not positive");

    const auto& eps = strain.values;
    SignalSeries out{strain.t0, h, std::vector<double>(n, 0.0)};
    auto& sig = out.values;
    for (std::size_t i = 0; i < n; ++i) {
        double rhs_value = 0.0;
        for (const auto& d : rhs) {
            if (d.weights.empty()) {
                rhs_value += d.scale * eps[i];
                continue;
            }
            double acc = 0.0;
            for (std::size_t j = 0; j <= i; ++j) acc += d.weights[j] * eps[i - j];
            rhs_value += d.scale * acc;
        }
        double history = 0.0;
        for (const auto& d : lhs) {
            if (d.weights.empty()) continue;
            double acc = 0.0;
            for (std::size_t j = 1; j <= i; ++j) acc += d.weights[j] * sig[i - j];
            history += d.scale * acc;
        }
        sig[i] = (rhs_value - history) / lead;
    }
    return out;
}

SignalSeries rabotnov_stress(const RabotnovParams& p, double E, const SignalSeries& strain) {
    return rabotnov_stress(p, E, p.beta, strain);
}

SignalSeries rabotnov_stress(const RabotnovParams& p, double E, double weight,
                             const SignalSeries& strain) {
    validate(p);
    validate(strain);
    require_positive(E, "Rabotnov modulus E");
    if (!std::isfinite(weight)) throw InvalidParameter("Rabotnov kernel weight must be finite");
    if (strain.t0 != 0.0) throw DomainError("rabotnov_stress: strain history must start at t0 = 0");
    if (p.alpha < -0.9 && strain.dt > 0.1)
        throw QuadratureError("rabotnov_stress: grid step too coarse for a kernel this singular");

    const std::size_t n = strain.size();
    const double h = strain.dt;
    const double a = p.alpha + 1.0;
    // First and second antiderivatives of the kernel x^{a-1} E_{a,a}(-beta x^a).
    auto k1 = [&](double x) {
        if (x == 0.0) return 0.0;
        const double xa = std::pow(x, a);
        return xa * ml(a, a + 1.0, -p.beta * xa);
    };
    auto k2 = [&](double x) {
        if (x == 0.0) return 0.0;
        const double xa = std::pow(x, a);
        return x * xa * ml(a, a + 2.0, -p.beta * xa);
    };

    // Segment m covers lags [m h, (m+1) h]. The strain sample at the far end of
    // the lag window gets weight A_m - C_m, the near one C_m.
    std::vector<double> far_w(n, 0.0), near_w(n, 0.0);
    double k1_lo = 0.0, k2_lo = 0.0;
    for (std::size_t m = 0; m + 1 < n; ++m) {
        const double hi = static_cast<double>(m + 1) * h;
        const double k1_hi = k1(hi);
        const double k2_hi = k2(hi);
        const double area = k1_hi - k1_lo;
        const double c = (k2_hi - k2_lo) / h - k1_lo;
        far_w[m] = area - c;
        near_w[m] = c;
        k1_lo = k1_hi;
        k2_lo = k2_hi;
    }

    const auto& eps = strain.values;
    SignalSeries out{strain.t0, h, std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        double integral = 0.0;
        for (std::size_t m = 0; m < i; ++m) integral += far_w[m] * eps[i - m - 1] + near_w[m] * eps[i - m];
        out.values[i] = E * (eps[i] - weight * integral);
    }
    return out;
}

FracZener rabotnov_equivalent_zener(const RabotnovParams& p, double E, double weight) {
    validate(p);
    require_positive(E, "Rabotnov modulus E");
    if (!(p.beta > 0.0)) throw InvalidParameter("Zener equivalence requires a positive kernel rate");
    FracZener z;
    z.alpha = p.alpha + 1.0;
    z.a1 = 1.0 / p.beta;
    z.b1 = E / p.beta;
    z.b0 = E * (1.0 - weight / p.beta);
    if (z.b0 < 0.0) throw InvalidParameter("Zener equivalence requires weight <= beta");
    return z;
}

SignalSeries nutting_strain(double psi, double S, FractionalOrder alpha, double beta_exp,
                            const UniformGrid& grid) {
    require_positive(psi, "Nutting psi");
    require_positive(S, "Nutting stress S");
    require_positive(beta_exp, "Nutting beta exponent");
    if (!(grid.dt > 0.0)) throw GridError("nutting_strain: grid step must be positive");
    if (grid.count == 0) throw GridError("nutting_strain: empty grid");
    if (grid.t0 < 0.0) throw DomainError("nutting_strain: t must be nonnegative");
    SignalSeries out{grid.t0, grid.dt, std::vector<double>(grid.count)};
    const double scale = std::pow(S, beta_exp) / psi;
    for (std::size_t n = 0; n < grid.count; ++n)
        out.values[n] = scale * std::pow(grid.time(n), alpha.value());
    return out;
}

double relaxation_time_of_stress(double psi, double S, FractionalOrder alpha, double beta_exp,
                                 double strain) {
    require_positive(psi, "Nutting psi");
    require_positive(S, "Nutting stress S");
    require_positive(beta_exp, "Nutting beta exponent");
    require_positive(strain, "strain");
    if (alpha.value() == 0.0) throw DomainError("relaxation time undefined for alpha = 0");
    const double a = alpha.value();
    return std::pow(psi, 1.0 / a) * std::pow(S, -beta_exp / a) * std::pow(strain, 1.0 / a);
}

}  // namespace frheo
