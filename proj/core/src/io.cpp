#include "grantgame/io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace grantgame {

namespace {

using nlohmann::json;

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write file: " + path.string());
    return out;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read file: " + path.string());
    return in;
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, delim)) fields.push_back(field);
    if (!line.empty() && line.back() == delim) fields.push_back("");
    return fields;
}

// Lines of a CSV file with trailing '\r' stripped and blank lines dropped.
std::vector<std::string> read_csv_lines(const std::filesystem::path& path) {
    std::ifstream in = open_for_read(path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        lines.push_back(line);
    }
    return lines;
}

void expect_header(const std::filesystem::path& path, const std::vector<std::string>& lines,
                   const std::string& header) {
    if (lines.empty() || lines.front() != header) {
        throw std::invalid_argument(path.string() + ": expected header \"" + header + "\"");
    }
}

double parse_double(const std::string& text, const std::string& where) {
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw std::invalid_argument(where + ": not a number: \"" + text + "\"");
    }
}

std::string iso_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buffer;
}

json value_matrix_to_json(const Matrix<double>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

void write_value_csv(const std::filesystem::path& path, const GridSpec& grid,
                     const ValueFunction& value) {
    std::ofstream out = open_for_write(path);
    out << "theta";
    for (double e : grid.epsilon_values) out << ',' << format_double(e);
    out << '\n';
    for (std::size_t i = 0; i < value.rows(); ++i) {
        out << format_double(grid.theta_values[i]);
        for (std::size_t j = 0; j < value.cols(); ++j) out << ',' << format_double(value(i, j));
        out << '\n';
    }
}

void write_policy_csv(const std::filesystem::path& path, const GridSpec& grid,
                      const Matrix<Action>& policy) {
    std::ofstream out = open_for_write(path);
    out << "theta";
    for (double e : grid.epsilon_values) out << ',' << format_double(e);
    out << '\n';
    for (std::size_t i = 0; i < policy.rows(); ++i) {
        out << format_double(grid.theta_values[i]);
        for (std::size_t j = 0; j < policy.cols(); ++j) out << ',' << to_string(policy(i, j));
        out << '\n';
    }
}

void write_action_values_csv(const std::filesystem::path& path, const GridSpec& grid,
                             const std::array<ValueFunction, 3>& action_values) {
    std::ofstream out = open_for_write(path);
    out << "theta,epsilon,action,value\n";
    for (std::size_t i = 0; i < grid.theta_values.size(); ++i) {
        for (std::size_t j = 0; j < grid.epsilon_values.size(); ++j) {
            for (Action action : kAllActions) {
                out << format_double(grid.theta_values[i]) << ','
                    << format_double(grid.epsilon_values[j]) << ',' << to_string(action) << ','
                    << format_double(action_values[static_cast<std::size_t>(action)](i, j))
                    << '\n';
            }
        }
    }
}

void write_manifest_json(const std::filesystem::path& path, const RunConfig& config,
                         long iterations, double residual) {
    json manifest{
        {"schema_version", config.schema_version},
        {"generated_at", iso_timestamp()},
        {"config", json::parse(run_config_to_json(config))},
        {"solver_run",
         {{"tolerance", config.tolerance},
          {"max_iterations", config.max_iterations},
          {"iterations", iterations},
          {"sup_norm_residual", residual}}},
    };
    open_for_write(path) << manifest.dump(2) << '\n';
}

void write_results_json(const std::filesystem::path& path, const GridSpec& grid,
                        const SolveResult& result) {
    json policy_rows = json::array();
    for (std::size_t i = 0; i < result.policy.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < result.policy.cols(); ++j) {
            row.push_back(to_string(result.policy(i, j)));
        }
        policy_rows.push_back(std::move(row));
    }
    json doc{
        {"theta", grid.theta_values},
        {"epsilon", grid.epsilon_values},
        {"value", value_matrix_to_json(result.value)},
        {"policy", std::move(policy_rows)},
        {"action_values",
         {{"stay", value_matrix_to_json(result.action_value(Action::Stay))},
          {"new_topic", value_matrix_to_json(result.action_value(Action::NewTopic))},
          {"new_field", value_matrix_to_json(result.action_value(Action::NewField))}}},
        {"iterations", result.iterations},
        {"sup_norm_residual", result.sup_norm_residual},
    };
    open_for_write(path) << doc.dump(2) << '\n';
}

void write_solve_outputs(const std::filesystem::path& dir, const RunConfig& config,
                         const SolveResult& result) {
    std::filesystem::create_directories(dir);
    const ModelConfig model = build_model(config);
    const GridSpec& grid = model.grid();
    if (config.output_format == "json") {
        write_results_json(dir / "results.json", grid, result);
    } else {
        write_value_csv(dir / "value.csv", grid, result.value);
        write_policy_csv(dir / "policy.csv", grid, result.policy);
        write_action_values_csv(dir / "action_values.csv", grid, result.action_values);
    }
    write_manifest_json(dir / "manifest.json", config, result.iterations,
                        result.sup_norm_residual);
}

PolicyFile read_policy_csv(const std::filesystem::path& path) {
    const std::vector<std::string> lines = read_csv_lines(path);
    if (lines.empty()) throw std::invalid_argument(path.string() + ": empty policy file");
    const std::vector<std::string> header = split(lines.front(), ',');
    if (header.size() < 2 || header.front() != "theta") {
        throw std::invalid_argument(path.string() + ": malformed policy header");
    }
    PolicyFile file;
    for (std::size_t j = 1; j < header.size(); ++j) {
        file.grid.epsilon_values.push_back(parse_double(header[j], path.string()));
    }
    const std::size_t n_epsilon = file.grid.epsilon_values.size();
    const std::size_t n_theta = lines.size() - 1;
    file.policy = Matrix<Action>(n_theta, n_epsilon, Action::Stay);
    for (std::size_t i = 0; i < n_theta; ++i) {
        const std::vector<std::string> fields = split(lines[i + 1], ',');
        if (fields.size() != n_epsilon + 1) {
            throw std::invalid_argument(path.string() + ": row " + std::to_string(i + 2) +
                                        " has " + std::to_string(fields.size()) + " fields");
        }
        file.grid.theta_values.push_back(parse_double(fields[0], path.string()));
        for (std::size_t j = 0; j < n_epsilon; ++j) {
            file.policy(i, j) = action_from_string(fields[j + 1]);
        }
    }
    return file;
}

void write_trajectory_csv(const std::filesystem::path& path, double beta,
                          const CareerTrajectory& trajectory) {
    std::ofstream out = open_for_write(path);
    out << "t,theta,epsilon,action,income,discounted_income_cumulative\n";
    double discount = 1.0;
    double cumulative = 0.0;
    for (std::size_t t = 0; t < trajectory.states.size(); ++t) {
        cumulative += discount * trajectory.incomes[t];
        discount *= beta;
        out << t << ',' << format_double(trajectory.states[t].theta) << ','
            << format_double(trajectory.states[t].epsilon) << ','
            << to_string(trajectory.actions[t]) << ',' << format_double(trajectory.incomes[t])
            << ',' << format_double(cumulative) << '\n';
    }
}

void write_comparison_csv(const std::filesystem::path& path,
                          const std::vector<PolicyComparison>& table, long trials, long horizon) {
    std::ofstream out = open_for_write(path);
    out << "policy,trials,horizon,mean_discounted_income,std_error\n";
    for (const PolicyComparison& row : table) {
        out << row.name << ',' << trials << ',' << horizon << ','
            << format_double(row.mean_discounted_income) << ',' << format_double(row.std_error)
            << '\n';
    }
}

void write_comparison_text(const std::filesystem::path& path,
                           const std::vector<PolicyComparison>& table, long trials, long horizon) {
    std::ofstream out = open_for_write(path);
    out << "Mean discounted career income over " << trials << " trials, horizon " << horizon
        << " periods\n";
    for (const PolicyComparison& row : table) {
        char line[160];
        std::snprintf(line, sizeof(line), "  %-18s %12.4f  (se %.4f)\n", row.name.c_str(),
                      row.mean_discounted_income, row.std_error);
        out << line;
    }
}

std::vector<CodedAd> read_coded_ads_csv(const std::filesystem::path& path) {
    const std::vector<std::string> lines = read_csv_lines(path);
    expect_header(path, lines, "year,issue,ad_id,topics");
    std::vector<CodedAd> ads;
    ads.reserve(lines.size() - 1);
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const std::vector<std::string> fields = split(lines[k], ',');
        if (fields.size() != 4) {
            throw std::invalid_argument(path.string() + ": line " + std::to_string(k + 1) +
                                        " must have 4 comma-separated fields");
        }
        CodedAd ad;
        ad.year = static_cast<int>(parse_double(fields[0], path.string()));
        ad.issue = fields[1];
        ad.ad_id = fields[2];
        for (const std::string& topic : split(fields[3], ';')) {
            if (!topic.empty()) ad.topics.insert(topic);
        }
        ads.push_back(std::move(ad));
    }
    return ads;
}

CoderTable read_coder_table_csv(const std::filesystem::path& path) {
    const std::vector<std::string> lines = read_csv_lines(path);
    expect_header(path, lines, "item_id,coder1,coder2");
    CoderTable table;
    table.items.reserve(lines.size() - 1);
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const std::vector<std::string> fields = split(lines[k], ',');
        if (fields.size() != 3) {
            throw std::invalid_argument(path.string() + ": line " + std::to_string(k + 1) +
                                        " must have 3 comma-separated fields");
        }
        table.items.push_back(CoderTable::Item{fields[0], fields[1], fields[2]});
    }
    return table;
}

std::vector<std::string> read_scheme_file(const std::filesystem::path& path) {
    std::ifstream in = open_for_read(path);
    std::vector<std::string> scheme;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        scheme.push_back(line);
    }
    if (scheme.empty()) throw std::invalid_argument(path.string() + ": empty category scheme");
    return scheme;
}

void write_trend_long_csv(const std::filesystem::path& path, const TrendMatrix& matrix) {
    std::ofstream out = open_for_write(path);
    out << "category,year,proportion\n";
    for (std::size_t i = 0; i < matrix.categories.size(); ++i) {
        for (std::size_t j = 0; j < matrix.years.size(); ++j) {
            out << matrix.categories[i] << ',' << matrix.years[j] << ','
                << format_double(matrix.proportions(i, j)) << '\n';
        }
    }
}

void write_trend_series_csvs(const std::filesystem::path& dir, const TrendMatrix& matrix) {
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < matrix.categories.size(); ++i) {
        std::ofstream out = open_for_write(dir / (matrix.categories[i] + ".csv"));
        out << "year,proportion\n";
        for (std::size_t j = 0; j < matrix.years.size(); ++j) {
            out << matrix.years[j] << ',' << format_double(matrix.proportions(i, j)) << '\n';
        }
    }
}

void write_yearly_totals_csv(const std::filesystem::path& path, const TrendMatrix& matrix) {
    std::ofstream out = open_for_write(path);
    out << "year,topic_mentions\n";
    for (std::size_t j = 0; j < matrix.years.size(); ++j) {
        out << matrix.years[j] << ',' << matrix.yearly_totals[j] << '\n';
    }
}

void write_issue_counts_csv(const std::filesystem::path& path,
                            const std::vector<IssueCount>& series) {
    std::ofstream out = open_for_write(path);
    out << "issue,count\n";
    for (const IssueCount& entry : series) out << entry.issue << ',' << entry.count << '\n';
}

std::string kappa_report_json(const KappaResult& result) {
    json doc{
        {"kappa", result.kappa},
        {"p_o", result.p_o},
        {"p_e", result.p_e},
        {"n_items", result.n_items},
    };
    return doc.dump(2) + "\n";
}

}  // namespace grantgame
