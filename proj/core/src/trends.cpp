#include "grantgame/trends.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace grantgame {

const std::vector<std::string>& default_category_scheme() {
    static const std::vector<std::string> scheme = {
        "open",
        "experimental_cs",
        "applied_cs",
        "ai_ml",
        "big_data",
        "bioinformatics",
        "architecture",
        "graphics",
        "vision",
        "data_visualization",
        "databases",
        "games",
        "hpc",
        "hci",
        "mobile",
        "modelling_simulation",
        "networks",
        "operating_systems",
        "parallel_distributed",
        "programming_languages",
        "scientific_computing",
        "security",
        "social_computing",
        "software_engineering",
        "tcs",
        "web",
        "other",
    };
    return scheme;
}

TrendMatrix trend_matrix(const std::vector<CodedAd>& ads,
                         const std::vector<std::string>& scheme) {
    std::unordered_map<std::string, std::size_t> category_row;
    for (std::size_t i = 0; i < scheme.size(); ++i) {
        if (!category_row.emplace(scheme[i], i).second) {
            throw std::invalid_argument("duplicate category code in scheme: " + scheme[i]);
        }
    }

    // counts[year][category] = number of ads in that year mentioning the category
    std::map<int, std::vector<long>> counts;
    std::map<int, long> totals;
    for (const CodedAd& ad : ads) {
        auto [it, inserted] = counts.try_emplace(ad.year, std::vector<long>(scheme.size(), 0));
        for (const std::string& topic : ad.topics) {
            const auto row = category_row.find(topic);
            if (row == category_row.end()) {
                throw std::invalid_argument("unknown topic code \"" + topic + "\" in ad " +
                                            ad.ad_id);
            }
            ++it->second[row->second];
        }
        totals[ad.year] += static_cast<long>(ad.topics.size());
    }

    TrendMatrix out;
    out.categories = scheme;
    for (const auto& [year, total] : totals) {
        if (total == 0) {
            out.warnings.push_back("year " + std::to_string(year) +
                                   " has ads but no topic mentions; omitted");
            continue;
        }
        out.years.push_back(year);
        out.yearly_totals.push_back(total);
    }
    out.proportions = Matrix<double>(scheme.size(), out.years.size());
    for (std::size_t j = 0; j < out.years.size(); ++j) {
        const auto& year_counts = counts.at(out.years[j]);
        const double total = static_cast<double>(out.yearly_totals[j]);
        for (std::size_t i = 0; i < scheme.size(); ++i) {
            out.proportions(i, j) = static_cast<double>(year_counts[i]) / total;
        }
    }
    return out;
}

KappaResult cohens_kappa(const CoderTable& table) {
    const std::size_t n = table.items.size();
    if (n < 2) throw std::invalid_argument("kappa requires at least two coded items");

    std::map<std::string, long> marginal1, marginal2;
    long agreements = 0;
    for (const auto& item : table.items) {
        ++marginal1[item.coder1];
        ++marginal2[item.coder2];
        if (item.coder1 == item.coder2) ++agreements;
    }

    const double nd = static_cast<double>(n);
    const double p_o = static_cast<double>(agreements) / nd;
    double p_e = 0.0;
    for (const auto& [code, count1] : marginal1) {
        const auto it2 = marginal2.find(code);
        if (it2 == marginal2.end()) continue;
        p_e += (static_cast<double>(count1) / nd) * (static_cast<double>(it2->second) / nd);
    }
    if (p_e >= 1.0) {
        throw std::domain_error(
            "kappa is undefined: both coders used a single identical code for every item");
    }
    return KappaResult{(p_o - p_e) / (1.0 - p_e), p_o, p_e, n};
}

std::vector<IssueCount> ads_per_issue(
    const std::vector<CodedAd>& ads,
    const std::optional<std::vector<std::string>>& issue_calendar) {
    std::map<std::string, long> counts;
    std::map<std::string, int> first_year;
    for (const CodedAd& ad : ads) {
        ++counts[ad.issue];
        const auto [it, inserted] = first_year.emplace(ad.issue, ad.year);
        if (!inserted) it->second = std::min(it->second, ad.year);
    }

    std::vector<IssueCount> series;
    if (issue_calendar) {
        series.reserve(issue_calendar->size());
        for (const std::string& issue : *issue_calendar) {
            const auto it = counts.find(issue);
            series.push_back(IssueCount{issue, it == counts.end() ? 0 : it->second});
        }
        return series;
    }

    series.reserve(counts.size());
    for (const auto& [issue, count] : counts) series.push_back(IssueCount{issue, count});
    std::sort(series.begin(), series.end(), [&](const IssueCount& a, const IssueCount& b) {
        const int ya = first_year.at(a.issue);
        const int yb = first_year.at(b.issue);
        return ya != yb ? ya < yb : a.issue < b.issue;
    });
    return series;
}

}  // namespace grantgame
