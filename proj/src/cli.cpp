#include "frheo/cli.h"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "frheo/csv_io.h"
#include "frheo/errors.h"
#include "frheo/models.h"
#include "frheo/nutting.h"
#include "frheo/special_fn.h"

namespace frheo::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Every number leaving the tool goes through the same 15-digit rounding so
// CSV and JSON agree.
ordered_json number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return parse_number(format_number(v), 0);
}

ordered_json number_array(const std::vector<double>& v) {
    ordered_json a = ordered_json::array();
    for (double x : v) a.push_back(number(x));
    return a;
}

struct CommonOptions {
    std::string output;
    std::string format = "csv";
    bool format_given = false;
};

void add_common(CLI::App* cmd, CommonOptions& common) {
    cmd->add_option("--output", common.output, "Output path (default: standard output)");
    cmd->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->each([&common](const std::string&) { common.format_given = true; });
}

const std::vector<std::string> kParamNames = {"kappa", "alpha", "beta", "E",  "E0",   "lambda",
                                              "a1",    "b0",    "b1",   "gamma", "tau"};

struct ModelOptions {
    std::string model;
    std::map<std::string, double> values;
    std::map<std::string, CLI::Option*> options;

    bool given(const std::string& name) const { return options.at(name)->count() > 0; }
};

void add_model_options(CLI::App* cmd, ModelOptions& m) {
    cmd->add_option("--model", m.model, "Constitutive model")
        ->required()
        ->check(CLI::IsMember({"springpot", "fmaxwell", "maxwell3", "fkelvinvoigt", "fzener",
                               "poynting", "cmaxwell", "ckelvin"}));
    for (const auto& name : kParamNames) {
        m.values[name] = 0.0;
        m.options[name] = cmd->add_option("--" + name, m.values[name], "Model parameter " + name);
    }
}

const std::map<std::string, std::vector<std::string>>& model_parameters() {
    static const std::map<std::string, std::vector<std::string>> table = {
        {"springpot", {"kappa", "alpha"}},
        {"fmaxwell", {"E", "lambda", "alpha", "beta"}},
        {"maxwell3", {"a1", "b0", "alpha"}},
        {"fkelvinvoigt", {"b0", "b1", "alpha"}},
        {"fzener", {"a1", "b0", "b1", "alpha"}},
        {"poynting", {"E", "E0", "lambda", "alpha", "beta", "gamma"}},
        {"cmaxwell", {"E", "tau"}},
        {"ckelvin", {"E", "tau"}},
    };
    return table;
}

MaterialModel build_model(const ModelOptions& m) {
    const auto& needed = model_parameters().at(m.model);
    for (const auto& name : needed)
        if (!m.given(name)) throw UsageError("model " + m.model + " requires --" + name);
    for (const auto& name : kParamNames) {
        const bool relevant = std::find(needed.begin(), needed.end(), name) != needed.end();
        if (!relevant && m.given(name))
            throw UsageError("parameter --" + name + " does not apply to model " + m.model);
    }
    const auto& v = m.values;
    MaterialModel model;
    if (m.model == "springpot") model = SpringPot{v.at("kappa"), v.at("alpha")};
    else if (m.model == "fmaxwell") model = FracMaxwell{v.at("E"), v.at("lambda"), v.at("alpha"), v.at("beta")};
    else if (m.model == "maxwell3") model = ThreeParamMaxwell{v.at("a1"), v.at("b0"), v.at("alpha")};
    else if (m.model == "fkelvinvoigt") model = FracKelvinVoigt{v.at("b0"), v.at("b1"), v.at("alpha")};
    else if (m.model == "fzener") model = FracZener{v.at("a1"), v.at("b0"), v.at("b1"), v.at("alpha")};
    else if (m.model == "poynting")
        model = PoyntingThomson{v.at("E"), v.at("E0"), v.at("lambda"), v.at("alpha"), v.at("beta"), v.at("gamma")};
    else if (m.model == "cmaxwell") model = ClassicalMaxwell{v.at("E"), v.at("tau")};
    else model = ClassicalKelvin{v.at("E"), v.at("tau")};
    validate(model);
    return model;
}

ordered_json model_params_json(const ModelOptions& m) {
    ordered_json j;
    j["model"] = m.model;
    for (const auto& name : model_parameters().at(m.model)) j[name] = number(m.values.at(name));
    return j;
}

struct Report {
    std::string command;
    ordered_json params = ordered_json::object();
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;
    ordered_json scalars;  // used instead of columns when set
    std::vector<std::string> diagnostics;
};

std::string render(const Report& r, const std::string& format) {
    std::ostringstream os;
    if (format == "json") {
        ordered_json j;
        j["command"] = r.command;
        j["params"] = r.params;
        if (!r.scalars.is_null()) {
            j["result"] = r.scalars;
        } else {
            ordered_json result = ordered_json::object();
            for (std::size_t i = 0; i < r.header.size(); ++i) result[r.header[i]] = number_array(r.columns[i]);
            j["result"] = result;
        }
        j["diagnostics"] = r.diagnostics;
        os << j.dump(2) << '\n';
    } else {
        write_csv(os, r.header, r.columns);
    }
    return os.str();
}

void emit(const std::string& text, const CommonOptions& common, std::ostream& out) {
    if (common.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(common.output, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open output file '" + common.output + "'");
    file << text;
    if (!file) throw IoError("failed writing output file '" + common.output + "'");
}

void warn(const std::vector<std::string>& diagnostics, const std::string& format, std::ostream& err) {
    if (format == "json") return;
    for (const auto& d : diagnostics) err << "frheo: warning: " << d << '\n';
}

ordered_json series_params(const std::string& input) {
    ordered_json j;
    j["input"] = input;
    return j;
}

}  // namespace

std::vector<double> make_grid(double tmin, double tmax, int points, bool log_spacing) {
    if (points < 1) throw UsageError("--points must be at least 1");
    if (!std::isfinite(tmin) || !std::isfinite(tmax)) throw UsageError("grid bounds must be finite");
    if (log_spacing && !(tmin > 0.0)) throw UsageError("log spacing requires --tmin > 0");
    if (points == 1) {
        if (tmin > tmax) throw UsageError("--tmin must not exceed --tmax");
        return {tmin};
    }
    if (!(tmin < tmax)) throw UsageError("--tmin must be smaller than --tmax");
    std::vector<double> grid(static_cast<std::size_t>(points));
    const double last = static_cast<double>(points - 1);
    if (log_spacing) {
        const double lo = std::log(tmin), step = (std::log(tmax) - lo) / last;
        for (int i = 0; i < points; ++i) grid[i] = std::exp(lo + step * i);
    } else {
        const double step = (tmax - tmin) / last;
        for (int i = 0; i < points; ++i) grid[i] = tmin + step * i;
    }
    grid.front() = tmin;
    grid.back() = tmax;
    return grid;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fractional viscoelasticity toolkit", "frheo"};
    app.require_subcommand(1);

    // ml
    CommonOptions ml_common;
    double ml_alpha = 1.0, ml_beta = 1.0, ml_z = 0.0;
    auto* ml_cmd = app.add_subcommand("ml", "Evaluate the Mittag-Leffler function E_{alpha,beta}(z)");
    ml_cmd->add_option("--alpha", ml_alpha, "First parameter (> 0)")->required();
    ml_cmd->add_option("--beta", ml_beta, "Second parameter")->required();
    ml_cmd->add_option("--z", ml_z, "Real argument")->required();
    add_common(ml_cmd, ml_common);

    // respond
    CommonOptions rs_common;
    ModelOptions rs_model;
    std::string rs_function = "relaxation", rs_spacing = "log";
    double rs_tmin = 1e-2, rs_tmax = 1e2;
    int rs_points = 50;
    auto* rs_cmd = app.add_subcommand("respond", "Material functions of a constitutive model");
    add_model_options(rs_cmd, rs_model);
    rs_cmd->add_option("--function", rs_function, "Material function")
        ->check(CLI::IsMember({"relaxation", "creep", "complex"}));
    rs_cmd->add_option("--tmin", rs_tmin, "Smallest t (or omega)");
    rs_cmd->add_option("--tmax", rs_tmax, "Largest t (or omega)");
    rs_cmd->add_option("--points", rs_points, "Number of grid points");
    rs_cmd->add_option("--spacing", rs_spacing, "Grid spacing")->check(CLI::IsMember({"log", "linear"}));
    add_common(rs_cmd, rs_common);

    // simulate
    CommonOptions sim_common;
    ModelOptions sim_model;
    std::string sim_input;
    auto* sim_cmd = app.add_subcommand("simulate", "Stress history for a strain history (t,value CSV)");
    add_model_options(sim_cmd, sim_model);
    sim_cmd->add_option("--input", sim_input, "Strain history CSV with columns t,value")->required();
    add_common(sim_cmd, sim_common);

    // fit nutting
    CommonOptions fit_common;
    std::string fit_input;
    auto* fit_cmd = app.add_subcommand("fit", "Parameter fitting");
    fit_cmd->require_subcommand(1);
    auto* nutting_cmd = fit_cmd->add_subcommand("nutting", "Fit Nutting's law to creep records");
    nutting_cmd->add_option("--input", fit_input, "Creep CSV with columns t,stress,strain")->required();
    add_common(nutting_cmd, fit_common);

    // quasi
    CommonOptions q_common;
    std::string q_input;
    double q_stress = 1.0, q_mu = 0.5;
    auto* q_cmd = app.add_subcommand("quasi", "Quasi-property S / D^mu strain of a creep record");
    q_cmd->add_option("--input", q_input, "Strain history CSV with columns t,value")->required();
    q_cmd->add_option("--S", q_stress, "Applied stress (> 0)")->required();
    q_cmd->add_option("--mu", q_mu, "Derivative order in [0, 1]")->required();
    add_common(q_cmd, q_common);

    std::vector<std::string> argv_storage = args;
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "frheo: E_USAGE: " << e.what() << '\n';
        return 2;
    }

    try {
        if (ml_cmd->parsed()) {
            const double value = ml_eval({ml_alpha, ml_beta}, ml_z);
            if (!ml_common.format_given) {
                emit(format_shortest(value) + "\n", ml_common, out);
                return 0;
            }
            Report r;
            r.command = "ml";
            r.params = {{"alpha", number(ml_alpha)}, {"beta", number(ml_beta)}, {"z", number(ml_z)}};
            r.header = {"alpha", "beta", "z", "value"};
            r.columns = {{ml_alpha}, {ml_beta}, {ml_z}, {value}};
            emit(render(r, ml_common.format), ml_common, out);
            return 0;
        }

        if (rs_cmd->parsed()) {
            const MaterialModel model = build_model(rs_model);
            const auto grid = make_grid(rs_tmin, rs_tmax, rs_points, rs_spacing == "log");
            Report r;
            r.command = "respond";
            r.params = model_params_json(rs_model);
            r.params["function"] = rs_function;
            r.params["tmin"] = number(rs_tmin);
            r.params["tmax"] = number(rs_tmax);
            r.params["points"] = rs_points;
            r.params["spacing"] = rs_spacing;
            MaterialResponse resp;
            if (rs_function == "complex") {
                resp = complex_modulus(model, grid);
                std::vector<double> storage, loss;
                for (const auto& g : resp.complex_values) {
                    storage.push_back(g.real());
                    loss.push_back(g.imag());
                }
                r.header = {"omega", "storage", "loss"};
                r.columns = {resp.abscissae, storage, loss};
            } else {
                resp = rs_function == "relaxation" ? relaxation_modulus(model, grid)
                                                   : creep_compliance(model, grid);
                r.header = {"t", "value"};
                r.columns = {resp.abscissae, resp.values};
            }
            r.diagnostics = resp.diagnostics;
            warn(r.diagnostics, rs_common.format, err);
            emit(render(r, rs_common.format), rs_common, out);
            return 0;
        }

        if (sim_cmd->parsed()) {
            const MaterialModel model = build_model(sim_model);
            const SignalSeries strain = ingest_signal_csv(sim_input);
            const SignalSeries stress = simulate_stress(model, strain);
            std::vector<double> t(stress.size());
            for (std::size_t i = 0; i < t.size(); ++i) t[i] = stress.time(i);
            Report r;
            r.command = "simulate";
            r.params = model_params_json(sim_model);
            r.params["input"] = sim_input;
            r.header = {"t", "value"};
            r.columns = {t, stress.values};
            r.diagnostics = admissibility_warnings(model);
            warn(r.diagnostics, sim_common.format, err);
            emit(render(r, sim_common.format), sim_common, out);
            return 0;
        }

        if (nutting_cmd->parsed()) {
            const auto records = ingest_creep_csv(fit_input);
            const NuttingFit fit = fit_nutting(records);
            Report r;
            r.command = "fit nutting";
            r.params = series_params(fit_input);
            if (fit.beta_fixed) r.diagnostics.push_back("stress does not vary; beta fixed to 1");
            if (fit.alpha_out_of_range) r.diagnostics.push_back("alpha estimate lies outside [0, 1]");
            r.header = {"psi", "alpha", "beta", "rms_log_residual", "n_points", "beta_fixed",
                        "alpha_out_of_range"};
            r.columns = {{fit.psi},
                         {fit.alpha},
                         {fit.beta_exp},
                         {fit.rms_log_residual},
                         {static_cast<double>(fit.n_points)},
                         {fit.beta_fixed ? 1.0 : 0.0},
                         {fit.alpha_out_of_range ? 1.0 : 0.0}};
            r.scalars = {{"psi", number(fit.psi)},
                         {"alpha", number(fit.alpha)},
                         {"beta", number(fit.beta_exp)},
                         {"rms_log_residual", number(fit.rms_log_residual)},
                         {"n_points", fit.n_points},
                         {"beta_fixed", fit.beta_fixed},
                         {"alpha_out_of_range", fit.alpha_out_of_range}};
            warn(r.diagnostics, fit_common.format, err);
            emit(render(r, fit_common.format), fit_common, out);
            return 0;
        }

        if (q_cmd->parsed()) {
            const SignalSeries strain = ingest_signal_csv(q_input);
            const SignalSeries chi = quasi_property(q_stress, strain, q_mu);
            std::vector<double> t(chi.size());
            for (std::size_t i = 0; i < t.size(); ++i) t[i] = chi.time(i);
            Report r;
            r.command = "quasi";
            r.params = series_params(q_input);
            r.params["S"] = number(q_stress);
            r.params["mu"] = number(q_mu);
            r.header = {"t", "value"};
            r.columns = {t, chi.values};
            emit(render(r, q_common.format), q_common, out);
            return 0;
        }
    } catch (const UsageError& e) {
        err << "frheo: E_USAGE: " << e.what() << '\n';
        return 2;
    } catch (const InvalidParameter& e) {
        err << "frheo: " << e.code() << ": " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "frheo: " << e.code() << ": " << e.what() << '\n';
        return 1;
    }
    return 2;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace frheo::cli
