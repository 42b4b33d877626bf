#include "grantgame/config.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace grantgame {

namespace {

using nlohmann::json;

DistributionSpec distribution_spec_from_json(const json& node, const std::string& field) {
    if (!node.is_object() || !node.contains("kind")) {
        throw std::invalid_argument(field + " must be an object with a \"kind\" tag");
    }
    DistributionSpec spec;
    spec.kind = distribution_kind_from_string(node.at("kind").get<std::string>());
    if (spec.kind != DistributionKind::Uniform) {
        if (!node.contains("a") || !node.contains("b")) {
            throw std::invalid_argument(field + " requires shape fields a and b");
        }
        spec.a = node.at("a").get<double>();
        spec.b = node.at("b").get<double>();
    }
    if (spec.kind == DistributionKind::ZeroInflatedBetaBinomial) {
        if (!node.contains("zero_mass")) {
            throw std::invalid_argument(field + " requires a zero_mass field");
        }
        spec.zero_mass = node.at("zero_mass").get<double>();
    }
    return spec;
}

json distribution_spec_to_json(const DistributionSpec& spec) {
    json node{{"kind", to_string(spec.kind)}};
    if (spec.kind != DistributionKind::Uniform) {
        node["a"] = spec.a;
        node["b"] = spec.b;
    }
    if (spec.kind == DistributionKind::ZeroInflatedBetaBinomial) {
        node["zero_mass"] = spec.zero_mass;
    }
    return node;
}

}  // namespace

std::string to_string(DistributionKind kind) {
    switch (kind) {
        case DistributionKind::Uniform: return "uniform";
        case DistributionKind::BetaBinomial: return "beta_binomial";
        case DistributionKind::ZeroInflatedBetaBinomial: return "zero_inflated_beta_binomial";
    }
    throw std::invalid_argument("unknown DistributionKind value");
}

DistributionKind distribution_kind_from_string(const std::string& name) {
    if (name == "uniform") return DistributionKind::Uniform;
    if (name == "beta_binomial") return DistributionKind::BetaBinomial;
    if (name == "zero_inflated_beta_binomial") return DistributionKind::ZeroInflatedBetaBinomial;
    throw std::invalid_argument("unknown distribution kind: " + name);
}

RunConfig preset_config(const std::string& name) {
    RunConfig config;
    if (name == "fig4a") {
        // uniform F and G, optimistic discount
        config.field_spec = DistributionSpec{DistributionKind::Uniform};
        config.topic_spec = DistributionSpec{DistributionKind::Uniform};
        config.beta = 0.95;
        return config;
    }
    if (name == "fig4b" || name == "fig5") {
        config.field_spec =
            DistributionSpec{DistributionKind::ZeroInflatedBetaBinomial, 10.0, 10.0, 0.6};
        config.topic_spec = DistributionSpec{DistributionKind::BetaBinomial, 10.0, 10.0};
        config.beta = name == "fig5" ? 0.5 : 0.95;
        return config;
    }
    throw std::invalid_argument("unknown preset: " + name +
                                " (expected fig4a, fig4b, or fig5)");
}

void validate_run_config(const RunConfig& config) {
    if (config.schema_version != 1) {
        throw std::invalid_argument("schema_version: only version 1 is supported");
    }
    if (config.grid_points == 0) {
        throw std::invalid_argument("model.grid_points must be at least 1");
    }
    if (!(config.income_lo >= 0.0) || !(config.income_lo < config.income_hi)) {
        throw std::invalid_argument("model.income_range requires 0 <= lo < hi");
    }
    if (!(config.beta >= 0.0) || !(config.beta < 1.0)) {
        throw std::invalid_argument("model.beta must lie in [0, 1)");
    }
    for (const auto& [spec, field] : {std::pair{&config.field_spec, "model.F"},
                                      std::pair{&config.topic_spec, "model.G"}}) {
        if (spec->kind != DistributionKind::Uniform && (!(spec->a > 0.0) || !(spec->b > 0.0))) {
            throw std::invalid_argument(std::string(field) + ": shapes a and b must be positive");
        }
        if (spec->kind == DistributionKind::ZeroInflatedBetaBinomial &&
            (!(spec->zero_mass >= 0.0) || !(spec->zero_mass <= 1.0))) {
            throw std::invalid_argument(std::string(field) + ".zero_mass must lie in [0, 1]");
        }
    }
    if (!(config.tolerance > 0.0)) {
        throw std::invalid_argument("solver.tolerance must be positive");
    }
    if (config.max_iterations < 1) {
        throw std::invalid_argument("solver.max_iterations must be at least 1");
    }
    if (config.horizon < 1) throw std::invalid_argument("simulate.horizon must be at least 1");
    if (config.trials < 2) throw std::invalid_argument("simulate.trials must be at least 2");
    if (config.output_format != "csv" && config.output_format != "json") {
        throw std::invalid_argument("output.format must be \"csv\" or \"json\"");
    }
}

DiscreteDistribution build_distribution(const DistributionSpec& spec, std::size_t grid_points,
                                        double lo, double hi) {
    switch (spec.kind) {
        case DistributionKind::Uniform:
            return uniform_on_grid(grid_points, lo, hi);
        case DistributionKind::BetaBinomial:
            return beta_binomial_on_grid(grid_points, spec.a, spec.b, lo, hi);
        case DistributionKind::ZeroInflatedBetaBinomial:
            return inflate_at_zero(beta_binomial_on_grid(grid_points, spec.a, spec.b, lo, hi),
                                   spec.zero_mass);
    }
    throw std::invalid_argument("unknown DistributionKind value");
}

ModelConfig build_model(const RunConfig& config) {
    validate_run_config(config);
    return ModelConfig(
        config.beta,
        build_distribution(config.field_spec, config.grid_points, config.income_lo,
                           config.income_hi),
        build_distribution(config.topic_spec, config.grid_points, config.income_lo,
                           config.income_hi));
}

std::string run_config_to_json(const RunConfig& config) {
    json doc{
        {"schema_version", config.schema_version},
        {"model",
         {{"grid_points", config.grid_points},
          {"income_range", json::array({config.income_lo, config.income_hi})},
          {"beta", config.beta},
          {"F", distribution_spec_to_json(config.field_spec)},
          {"G", distribution_spec_to_json(config.topic_spec)}}},
        {"solver",
         {{"tolerance", config.tolerance}, {"max_iterations", config.max_iterations}}},
        {"simulate",
         {{"horizon", config.horizon}, {"trials", config.trials}, {"seed", config.seed}}},
        {"output", {{"directory", config.output_dir}, {"format", config.output_format}}},
    };
    return doc.dump(2) + "\n";
}

RunConfig run_config_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + err.what());
    }
    RunConfig config;
    try {
        config.schema_version = doc.value("schema_version", config.schema_version);
        if (doc.contains("model")) {
            const json& model = doc.at("model");
            config.grid_points = model.value("grid_points", config.grid_points);
            if (model.contains("income_range")) {
                const json& range = model.at("income_range");
                if (!range.is_array() || range.size() != 2) {
                    throw std::invalid_argument("model.income_range must be [lo, hi]");
                }
                config.income_lo = range.at(0).get<double>();
                config.income_hi = range.at(1).get<double>();
            }
            config.beta = model.value("beta", config.beta);
            if (model.contains("F")) {
                config.field_spec = distribution_spec_from_json(model.at("F"), "model.F");
            }
            if (model.contains("G")) {
                config.topic_spec = distribution_spec_from_json(model.at("G"), "model.G");
            }
        }
        if (doc.contains("solver")) {
            const json& solver = doc.at("solver");
            config.tolerance = solver.value("tolerance", config.tolerance);
            config.max_iterations = solver.value("max_iterations", config.max_iterations);
        }
        if (doc.contains("simulate")) {
            const json& sim = doc.at("simulate");
            config.horizon = sim.value("horizon", config.horizon);
            config.trials = sim.value("trials", config.trials);
            config.seed = sim.value("seed", config.seed);
        }
        if (doc.contains("output")) {
            const json& output = doc.at("output");
            config.output_dir = output.value("directory", config.output_dir);
            config.output_format = output.value("format", config.output_format);
        }
    } catch (const json::exception& err) {
        throw std::invalid_argument(std::string("malformed config: ") + err.what());
    }
    validate_run_config(config);
    return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return run_config_from_json(text);
}

}  // namespace grantgame
