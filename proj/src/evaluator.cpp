#include "obo/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace obo {

namespace {

double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

Metrics Metrics::from_counts(std::size_t tp, std::size_t tn, std::size_t fp, std::size_t fn) {
    Metrics m;
    m.tp = tp;
    m.tn = tn;
    m.fp = fp;
    m.fn = fn;
    m.accuracy = ratio(tp + tn, tp + tn + fp + fn);
    m.precision = ratio(tp, tp + fp);
    m.recall = ratio(tp, tp + fn);
    const double s = m.precision + m.recall;
    m.f1 = s == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / s;
    return m;
}

Metrics confusion(const std::vector<Prediction>& predictions, double threshold) {
    std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
    for (const Prediction& p : predictions) {
        const bool positive = p.probability >= threshold;
        if (p.label == 1)
            ++(positive ? tp : fn);
        else
            ++(positive ? fp : tn);
    }
    return Metrics::from_counts(tp, tn, fp, fn);
}

GroupBy group_by_from_name(const std::string& name) {
    if (name == "context") return GroupBy::Context;
    if (name == "statement") return GroupBy::Statement;
    if (name == "comparator") return GroupBy::Comparator;
    throw std::invalid_argument("unknown grouping: " + name);
}

std::string group_key(const ContextType& ctx, GroupBy by) {
    switch (by) {
        case GroupBy::Context:
            return ctx.str();
        case GroupBy::Statement:
            return std::string(statement_name(ctx.statement));
        case GroupBy::Comparator:
            return std::string(comparator_name(ctx.comparator));
    }
    return {};
}

std::vector<BreakdownRow> Breakdown::with_total() const {
    std::vector<BreakdownRow> out = rows;
    if (!out.empty()) out.push_back(total);
    return out;
}

namespace {

struct Counts {
    std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
    void add(const Metrics& m) {
        tp += m.tp;
        tn += m.tn;
        fp += m.fp;
        fn += m.fn;
    }
    Metrics metrics() const { return Metrics::from_counts(tp, tn, fp, fn); }
};

Breakdown assemble(const std::map<std::string, Counts>& groups) {
    Breakdown b;
    Counts all;
    for (const auto& [key, c] : groups) {
        b.rows.push_back({key, c.metrics()});
        all.add(b.rows.back().metrics);
    }
    std::stable_sort(b.rows.begin(), b.rows.end(), [](const BreakdownRow& x, const BreakdownRow& y) {
        return x.metrics.total() > y.metrics.total();
    });
    b.total.metrics = all.metrics();
    return b;
}

}  // namespace

Breakdown breakdown(const std::vector<Prediction>& predictions, double threshold, GroupBy by) {
    std::map<std::string, Counts> groups;
    for (const Prediction& p : predictions) {
        Counts& c = groups[group_key(p.context, by)];
        const bool positive = p.probability >= threshold;
        if (p.label == 1)
            ++(positive ? c.tp : c.fn);
        else
            ++(positive ? c.fp : c.tn);
    }
    return assemble(groups);
}

Breakdown regroup(const std::vector<BreakdownRow>& context_rows, GroupBy by) {
    std::map<std::string, Counts> groups;
    for (const BreakdownRow& r : context_rows) {
        auto ctx = ContextType::parse(r.key);
        if (!ctx) throw std::invalid_argument("not a context type: " + r.key);
        groups[group_key(*ctx, by)].add(r.metrics);
    }
    return assemble(groups);
}

std::string format_ratio(double x) {
    const long long scaled = std::llround(x * 10000.0);
    const long long mag = scaled < 0 ? -scaled : scaled;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s%lld.%04lld", scaled < 0 ? "-" : "", mag / 10000, mag % 10000);
    return buf;
}

std::string render_csv(const std::vector<BreakdownRow>& rows) {
    std::string out = "context_type,tp,tn,fp,fn,total,accuracy,recall,precision,f1\n";
    for (const BreakdownRow& r : rows) {
        const Metrics& m = r.metrics;
        out += r.key + ',' + std::to_string(m.tp) + ',' + std::to_string(m.tn) + ',' + std::to_string(m.fp) + ',' +
               std::to_string(m.fn) + ',' + std::to_string(m.total()) + ',' + format_ratio(m.accuracy) + ',' +
               format_ratio(m.recall) + ',' + format_ratio(m.precision) + ',' + format_ratio(m.f1) + '\n';
    }
    return out;
}

std::string render_text(const std::vector<BreakdownRow>& rows) {
    const std::vector<std::string> head = {"Context Type", "TP", "TN", "FP", "FN", "Total",
                                           "Acc", "Recall", "Precision", "F1"};
    std::vector<std::vector<std::string>> cells;
    for (const BreakdownRow& r : rows) {
        const Metrics& m = r.metrics;
        cells.push_back({r.key, std::to_string(m.tp), std::to_string(m.tn), std::to_string(m.fp),
                         std::to_string(m.fn), std::to_string(m.total()), format_ratio(m.accuracy),
                         format_ratio(m.recall), format_ratio(m.precision), format_ratio(m.f1)});
    }
    std::vector<std::size_t> width(head.size());
    for (std::size_t c = 0; c < head.size(); ++c) {
        width[c] = head[c].size();
        for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
    }
    auto line = [&](const std::vector<std::string>& row) {
        std::string s;
        for (std::size_t c = 0; c < row.size(); ++c) {
            const std::string pad(width[c] - row[c].size(), ' ');
            if (c == 0)
                s += row[c] + pad;
            else
                s += "  " + pad + row[c];
        }
        return s + '\n';
    };
    std::string out = line(head);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (rows[i].key == "Total" && i > 0) out += '\n';
        out += line(cells[i]);
    }
    return out;
}

}  // namespace obo
