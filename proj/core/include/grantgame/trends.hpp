#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "grantgame/matrix.hpp"

namespace grantgame {

/// One coded job advertisement. `topics` holds the uniquely coded areas the
/// ad mentions (storing them as a set de-duplicates repeated codes).
struct CodedAd {
    int year = 0;
    std::string issue;
    std::string ad_id;
    std::set<std::string> topics;
};

/// Yearly topic-proportion matrix. proportions(i, j) is the fraction of all
/// topic mentions in year j accounted for by category i; each column with a
/// positive mention total sums to 1.
struct TrendMatrix {
    std::vector<std::string> categories;
    std::vector<int> years;
    Matrix<double> proportions;      // categories x years
    std::vector<long> yearly_totals; // mention totals per year
    std::vector<std::string> warnings;
};

/// Paired codings of the same items by two coders.
struct CoderTable {
    struct Item {
        std::string item_id;
        std::string coder1;
        std::string coder2;
    };
    std::vector<Item> items;
};

struct KappaResult {
    double kappa = 0.0;
    double p_o = 0.0;  ///< observed agreement fraction
    double p_e = 0.0;  ///< chance agreement from the coder marginals
    std::size_t n_items = 0;
};

struct IssueCount {
    std::string issue;
    long count = 0;
};

/// The default coding scheme: 27 machine-readable category codes.
const std::vector<std::string>& default_category_scheme();

/**
 * Builds the yearly topic-proportion matrix from coded ads. Every topic code
 * must appear in `scheme` (a validation error names the offending code and
 * ad). Years without ads are simply absent; a year whose ads mention no
 * topics at all is omitted with a warning record.
 */
TrendMatrix trend_matrix(const std::vector<CodedAd>& ads,
                         const std::vector<std::string>& scheme);

/**
 * Cohen's kappa for two coders over nominal categories,
 * (p_o - p_e) / (1 - p_e). Requires at least two items and throws
 * std::domain_error when p_e == 1 (both coders used one identical code
 * everywhere), where kappa is undefined.
 */
KappaResult cohens_kappa(const CoderTable& table);

/**
 * Ad counts grouped by issue in chronological order (by first year of
 * appearance, then issue id). When a calendar of issues is supplied, its
 * order is used and issues absent from the data are reported as zero.
 */
std::vector<IssueCount> ads_per_issue(
    const std::vector<CodedAd>& ads,
    const std::optional<std::vector<std::string>>& issue_calendar = std::nullopt);

}  // namespace grantgame
