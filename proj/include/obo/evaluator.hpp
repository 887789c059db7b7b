#pragma once

#include "obo/mutation.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace obo {

/// Confusion counts with derived ratios. Positive class = buggy (label 1).
/// Any 0/0 ratio is 0.
struct Metrics {
    std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
    double accuracy = 0, precision = 0, recall = 0, f1 = 0;

    std::size_t total() const { return tp + tn + fp + fn; }
    static Metrics from_counts(std::size_t tp, std::size_t tn, std::size_t fp, std::size_t fn);
    bool operator==(const Metrics&) const = default;
};

struct Prediction {
    ContextType context;
    int label = 0;
    double probability = 0.5;
};

/// p >= threshold counts as a positive prediction.
Metrics confusion(const std::vector<Prediction>& predictions, double threshold = 0.5);

enum class GroupBy { Context, Statement, Comparator };
GroupBy group_by_from_name(const std::string& name);  ///< context|statement|comparator

std::string group_key(const ContextType& ctx, GroupBy by);

struct BreakdownRow {
    std::string key;
    Metrics metrics;
};

struct Breakdown {
    std::vector<BreakdownRow> rows;  ///< by total descending, then key
    BreakdownRow total{"Total", {}};

    /// rows followed by the total; empty when there are no rows
    std::vector<BreakdownRow> with_total() const;
};

Breakdown breakdown(const std::vector<Prediction>& predictions, double threshold, GroupBy by);

/// Re-pool rows already keyed by context type (e.g. a published per-context
/// table) under a coarser key. Unknown keys throw std::invalid_argument.
Breakdown regroup(const std::vector<BreakdownRow>& context_rows, GroupBy by);

/// Fixed 4-decimal rendering, halves rounded away from zero.
std::string format_ratio(double x);

/// Header `context_type,tp,tn,fp,fn,total,accuracy,recall,precision,f1`
/// plus one line per row.
std::string render_csv(const std::vector<BreakdownRow>& rows);
/// Column-aligned table; a row keyed "Total" is set off by a blank line.
std::string render_text(const std::vector<BreakdownRow>& rows);

}  // namespace obo
