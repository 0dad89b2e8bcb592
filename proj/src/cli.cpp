#include "decoupling/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "decoupling/bounds.hpp"
#include "decoupling/chaos.hpp"
#include "decoupling/gauss_model.hpp"
#include "decoupling/io.hpp"
#include "decoupling/linalg.hpp"

namespace decoupling::cli {

namespace {

using nlohmann::json;

json matrix_to_json(const SymMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.order(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.order(); ++j) {
            row.push_back(m.at(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json validation_to_json(const ValidationReport& report) {
    json pairs = json::array();
    for (const auto& [key, value] : report.pair_max_singular) {
        pairs.push_back(json{{"a", key.first + 1}, {"b", key.second + 1}, {"value", value}});
    }
    return json{{"valid", report.valid},
                {"min_eigenvalue", report.min_eigenvalue},
                {"max_abs_entry", report.max_abs_entry},
                {"symmetry_residual", report.symmetry_residual},
                {"pair_max_singular", std::move(pairs)},
                {"issues", report.issues}};
}

json constants_to_json(const BlockGaussianSpec& spec, const DecouplingConstants& constants) {
    json pairs = json::array();
    for (const auto& [key, value] : constants.pair_singulars) {
        pairs.push_back(json{{"a", key.first + 1}, {"b", key.second + 1}, {"value", value}});
    }
    json out{{"theorem3",
              json{{"c_minus", constants.lower},
                   {"c_minus_clamped", constants.clamped_lower()},
                   {"c_plus", constants.upper},
                   {"sigma0", constants.sigma0.value()},
                   {"sstar", matrix_to_json(constants.sstar.value())},
                   {"pair_singulars", std::move(pairs)}}}};
    if (spec.vector_count() == 2) {
        const DecouplingConstants pair = theorem2_constants(spec.cross_between(0, 1));
        out["theorem2"] = json{{"s_star", pair.sigma0.value()},
                               {"c_minus", pair.lower},
                               {"c_plus", pair.upper}};
    }
    return out;
}

json verify_record_to_json(const VerifyRecord& record) {
    return json{{"sum_norm_sq", record.sum_norm_sq},
                {"combined_norm_sq", record.combined_norm_sq},
                {"c_minus", record.c_minus},
                {"c_plus", record.c_plus},
                {"ratio", record.ratio},
                {"margin_lower", record.margin_lower},
                {"margin_upper", record.margin_upper},
                {"pass", record.pass}};
}

struct VerifyOutcome {
    json section;
    int violations = 0;
};

VerifyOutcome run_verify(const BlockGaussianSpec& spec, const RunConfig& config,
                         const std::optional<ChaosExpansion>& expansion,
                         const ChaosOptions& options) {
    VerifyOutcome outcome;
    if (expansion) {
        const VerifyRecord record = verify_inequality(spec, *expansion, config.tol, options);
        outcome.violations = record.pass ? 0 : 1;
        outcome.section = json{{"mode", "expansion"},
                               {"record", verify_record_to_json(record)},
                               {"violations", outcome.violations}};
        return outcome;
    }

    json ratios = json::array();
    double worst_margin = std::numeric_limits<double>::infinity();
    std::optional<VerifyRecord> worst_record;
    for (int trial = 0; trial < config.trials; ++trial) {
        const int terms = 1 + trial % 5;
        const ChaosExpansion random = random_expansion(
            spec, config.degree_max, terms, config.seed + static_cast<std::uint64_t>(trial));
        const VerifyRecord record = verify_inequality(spec, random, config.tol, options);
        if (!record.pass) ++outcome.violations;
        ratios.push_back(record.ratio);
        const double margin = std::min(record.margin_lower, record.margin_upper);
        if (margin < worst_margin) {
            worst_margin = margin;
            worst_record = record;
        }
    }
    outcome.section = json{{"mode", "trials"},
                           {"trials", config.trials},
                           {"ratios", std::move(ratios)},
                           {"violations", outcome.violations},
                           {"worst_margin", worst_margin},
                           {"worst_record", verify_record_to_json(worst_record.value())}};
    return outcome;
}

json sharpness_section(const BlockGaussianSpec& spec, const RunConfig& config,
                       const DecouplingConstants& constants, const ChaosOptions& options) {
    json degrees = json::array();
    double max_lambda = -std::numeric_limits<double>::infinity();
    double min_lambda = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= config.degree_max; ++n) {
        const auto [lo, hi] = degree_rayleigh_extremes(spec, n, options);
        degrees.push_back(json{{"n", n}, {"lambda_min", lo}, {"lambda_max", hi}});
        max_lambda = std::max(max_lambda, hi);
        min_lambda = std::min(min_lambda, lo);
    }
    json section{{"c_minus", constants.lower},
                 {"c_plus", constants.upper},
                 {"degrees", std::move(degrees)},
                 // extremes over the degrees computed here, an observed
                 // quantity rather than a sharp constant
                 {"max_lambda_max_shown", max_lambda},
                 {"min_lambda_min_shown", min_lambda},
                 {"upper_gap_shown", constants.upper - max_lambda}};
    if (spec.vector_count() == 2) {
        const double s_star = constants.pair_singulars.at({0, 1});
        const auto [lo1, hi1] = degree_rayleigh_extremes(spec, 1, options);
        const bool matches = std::abs(hi1 - (1.0 + s_star)) <= config.tol &&
                             std::abs(lo1 - (1.0 - s_star)) <= config.tol;
        section["theorem2_sharp_at_degree_1"] =
            json{{"expected_min", 1.0 - s_star}, {"expected_max", 1.0 + s_star},
                 {"matches", matches}};
    }
    return section;
}

json monte_carlo_section(const McReport& report) {
    json per_vector = json::array();
    for (std::size_t alpha = 0; alpha < report.per_vector_norm_sq.size(); ++alpha) {
        per_vector.push_back(json{{"alpha", alpha + 1},
                                  {"estimate", report.per_vector_norm_sq[alpha].value},
                                  {"std_error", report.per_vector_norm_sq[alpha].std_error},
                                  {"exact", report.exact_per_vector[alpha]}});
    }
    return json{{"samples", report.samples},
                {"per_vector_norm_sq", std::move(per_vector)},
                {"combined_norm_sq",
                 json{{"estimate", report.combined_norm_sq.value},
                      {"std_error", report.combined_norm_sq.std_error},
                      {"exact", report.exact_combined}}},
                {"worst_sigma", report.worst_sigma},
                {"consistent", report.consistent}};
}

json config_to_json(const RunConfig& config) {
    json out{{"command", config.command},
             {"spec", config.spec_path},
             {"degree_max", config.degree_max},
             {"samples", config.samples},
             {"trials", config.trials},
             {"seed", config.seed},
             {"tol", config.tol}};
    if (config.expansion_path) out["expansion"] = *config.expansion_path;
    return out;
}

// Text rendering: YAML-like walk of the same document, reals at 6 digits.
void render_text(std::string& out, const json& value, int depth) {
    const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
    if (value.is_object()) {
        for (const auto& [key, member] : value.items()) {
            if (member.is_object() || (member.is_array() && !member.empty() &&
                                       (member[0].is_object() || member[0].is_array()))) {
                out += pad + key + ":\n";
                render_text(out, member, depth + 1);
            } else {
                out += pad + key + ": ";
                render_text(out, member, 0);
                out += '\n';
            }
        }
    } else if (value.is_array()) {
        if (value.empty() || (!value[0].is_object() && !value[0].is_array())) {
            out += '[';
            for (std::size_t i = 0; i < value.size(); ++i) {
                if (i > 0) out += ", ";
                render_text(out, value[i], 0);
            }
            out += ']';
        } else {
            for (const auto& item : value) {
                if (item.is_array()) {
                    out += pad + "- ";
                    render_text(out, item, 0);
                    out += '\n';
                } else {
                    out += pad + "-\n";
                    render_text(out, item, depth + 1);
                }
            }
        }
    } else if (value.is_number_float()) {
        out += io::format_real(value.get<double>(), 6);
    } else if (value.is_string()) {
        out += value.get<std::string>();
    } else {
        out += value.dump();
    }
}

std::string render(const json& document, Format format) {
    if (format == Format::json) {
        return io::write_json(document);
    }
    std::string out;
    render_text(out, document, 0);
    return out;
}

RunResult finish(const json& document, const RunConfig& config, int exit_code) {
    return RunResult{exit_code, render(document, config.format), ""};
}

RunResult run_impl(const RunConfig& config) {
    const BlockGaussianSpec spec = io::load_spec(config.spec_path);
    const ValidationReport validation = validate(spec);
    ChaosOptions options;
    options.max_degree = std::max(config.degree_max, options.max_degree);

    json document{{"config", config_to_json(config)}};

    if (config.command == "validate") {
        document["validation"] = validation_to_json(validation);
        return finish(document, config, validation.valid ? kExitOk : kExitInvalidModel);
    }

    if (config.command == "report") {
        document["validation"] = validation_to_json(validation);
        if (!validation.valid) {
            return finish(document, config, kExitInvalidModel);
        }
    } else if (!validation.valid) {
        std::string message = "invalid model";
        for (const auto& issue : validation.issues) message += "; " + issue;
        return RunResult{kExitInvalidModel, "", message + "\n"};
    }

    std::optional<ChaosExpansion> expansion;
    if (config.expansion_path) {
        expansion = io::load_expansion(*config.expansion_path, spec);
    }

    const DecouplingConstants constants = theorem3_constants(spec);

    if (config.command == "constants") {
        document["constants"] = constants_to_json(spec, constants);
        return finish(document, config, kExitOk);
    }

    if (config.command == "verify") {
        document["constants"] = json{{"c_minus", constants.lower}, {"c_plus", constants.upper}};
        const VerifyOutcome outcome = run_verify(spec, config, expansion, options);
        document["verify"] = outcome.section;
        return finish(document, config, outcome.violations == 0 ? kExitOk : kExitViolation);
    }

    if (config.command == "sharpness") {
        document["sharpness"] = sharpness_section(spec, config, constants, options);
        return finish(document, config, kExitOk);
    }

    if (config.command == "report") {
        document["constants"] = constants_to_json(spec, constants);
        document["sharpness"] = sharpness_section(spec, config, constants, options);
        const VerifyOutcome outcome = run_verify(spec, config, expansion, options);
        document["verify"] = outcome.section;
        const ChaosExpansion mc_expansion =
            expansion ? *expansion
                      : random_expansion(spec, config.degree_max, 4, config.seed);
        document["monte_carlo"] =
            monte_carlo_section(mc_verify(spec, mc_expansion, config.samples, config.seed, options));
        return finish(document, config, outcome.violations == 0 ? kExitOk : kExitViolation);
    }

    throw std::invalid_argument("unknown command '" + config.command + "'");
}

}  // namespace

RunResult run(const RunConfig& config) {
    try {
        return run_impl(config);
    } catch (const io::ParseError& err) {
        return RunResult{kExitParse, "", std::string(err.what()) + "\n"};
    } catch (const InvalidModel& err) {
        return RunResult{kExitInvalidModel, "", std::string(err.what()) + "\n"};
    } catch (const NotPositiveSemidefinite& err) {
        return RunResult{kExitInvalidModel, "", std::string(err.what()) + "\n"};
    } catch (const std::invalid_argument& err) {
        return RunResult{kExitParse, "", std::string(err.what()) + "\n"};
    }
}

int main_entry(int argc, const char* const* argv) {
    CLI::App app{"Decoupling constants and exact L2 norms for sums of functions "
                 "of correlated Gaussian vectors"};
    app.require_subcommand(1);

    RunConfig config;
    const auto add_common = [&](CLI::App* cmd, bool wants_expansion) {
        cmd->add_option("--spec", config.spec_path, "Path to the model spec (JSON)")
            ->required();
        if (wants_expansion) {
            cmd->add_option_function<std::string>(
                "--expansion",
                [&](const std::string& path) { config.expansion_path = path; },
                "Path to a chaos expansion (JSON)");
        }
        cmd->add_option("--degree-max", config.degree_max, "Largest chaos degree used")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--samples", config.samples, "Monte Carlo sample count")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--trials", config.trials, "Random verification trials")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--seed", config.seed, "Random seed");
        cmd->add_option("--tol", config.tol, "Verification tolerance (relative)");
        cmd->add_option("--format", [&](const CLI::results_t& values) {
            if (values[0] == "text") {
                config.format = Format::text;
            } else if (values[0] == "json") {
                config.format = Format::json;
            } else {
                return false;
            }
            return true;
        }, "Output format: text|json");
    };

    for (const char* name : {"constants", "validate", "verify", "sharpness", "report"}) {
        add_common(app.add_subcommand(name), std::string(name) == "verify" ||
                                                 std::string(name) == "report");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        app.exit(help);
        return kExitOk;
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return kExitParse;
    }

    config.command = app.get_subcommands().front()->get_name();
    const RunResult result = run(config);
    if (!result.output.empty()) std::cout << result.output;
    if (!result.error.empty()) std::cerr << result.error;
    return result.exit_code;
}

}  // namespace decoupling::cli
