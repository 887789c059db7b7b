#include "obo/corpus.hpp"
#include "obo/evaluator.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace {

using namespace obo;

const std::string kData = OBO_TEST_DATA;

struct PrintedRow {
    BreakdownRow row;
    double accuracy, recall, precision, f1;
};

// Published per-context confusion table.
std::vector<PrintedRow> published_rows() {
    std::istringstream in(read_text_file(kData + "/context_breakdown.tsv"));
    std::vector<PrintedRow> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream f(line);
        std::string key;
        std::size_t tp, tn, fp, fn, total;
        PrintedRow r;
        f >> key >> tp >> tn >> fp >> fn >> total >> r.accuracy >> r.recall >> r.precision >> r.f1;
        r.row = {key, Metrics::from_counts(tp, tn, fp, fn)};
        EXPECT_EQ(r.row.metrics.total(), total) << key;
        out.push_back(r);
    }
    return out;
}

std::vector<BreakdownRow> rows_of(const std::vector<PrintedRow>& printed) {
    std::vector<BreakdownRow> out;
    for (const auto& p : printed) out.push_back(p.row);
    return out;
}

TEST(Metrics, ForLessEqualsRow) {
    Metrics m = Metrics::from_counts(15906, 177, 573, 2016);
    EXPECT_NEAR(m.accuracy, 0.8613, 1e-4);
    EXPECT_NEAR(m.recall, 0.8875, 1e-4);
    EXPECT_NEAR(m.precision, 0.9652, 1e-4);
    EXPECT_NEAR(m.f1, 0.9247, 1e-4);
}

TEST(Metrics, ZeroOverZeroIsZero) {
    Metrics m = Metrics::from_counts(0, 17, 5, 6);
    EXPECT_EQ(m.precision, 0.0);
    EXPECT_EQ(m.recall, 0.0);
    EXPECT_EQ(m.f1, 0.0);
    EXPECT_EQ(Metrics::from_counts(0, 0, 0, 0).accuracy, 0.0);
}

TEST(Metrics, EveryPublishedRowRecomputes) {
    auto rows = published_rows();
    ASSERT_EQ(rows.size(), 48u);
    for (const auto& r : rows) {
        EXPECT_NEAR(r.row.metrics.accuracy, r.accuracy, 1e-4) << r.row.key;
        EXPECT_NEAR(r.row.metrics.recall, r.recall, 1e-4) << r.row.key;
        EXPECT_NEAR(r.row.metrics.precision, r.precision, 1e-4) << r.row.key;
        EXPECT_NEAR(r.row.metrics.f1, r.f1, 1e-4) << r.row.key;
    }
}

TEST(Regroup, ComparatorLessEqualsPoolsToPublishedRow) {
    Breakdown b = regroup(rows_of(published_rows()), GroupBy::Comparator);
    ASSERT_EQ(b.rows.size(), 4u);
    const auto it = std::find_if(b.rows.begin(), b.rows.end(), [](const auto& r) { return r.key == "lessEquals"; });
    ASSERT_NE(it, b.rows.end());
    const Metrics& m = it->metrics;
    EXPECT_EQ(m.tp, 22172u);
    EXPECT_EQ(m.tn, 1436u);
    EXPECT_EQ(m.fp, 1622u);
    EXPECT_EQ(m.fn, 4511u);
    EXPECT_NEAR(m.accuracy, 0.7938, 1e-4);
    EXPECT_NEAR(m.recall, 0.8309, 1e-4);
    EXPECT_NEAR(m.precision, 0.9318, 1e-4);
    EXPECT_NEAR(m.f1, 0.8785, 1e-4);
}

TEST(Regroup, StatementPoolingIsInternallyConsistent) {
    auto rows = rows_of(published_rows());
    Breakdown b = regroup(rows, GroupBy::Statement);
    EXPECT_EQ(b.rows.size(), 12u);
    // the per-statement summary prints FOR as TP 16709 / FN 2800, which the
    // per-context rows do not add up to; the pooled counts are what we check
    const auto& f = *std::find_if(b.rows.begin(), b.rows.end(), [](const auto& r) { return r.key == "FOR"; });
    EXPECT_EQ(f.metrics.tp, 15906u + 214u + 488u + 107u);
    EXPECT_EQ(f.metrics.fn, 2016u + 536u + 98u + 144u);
    EXPECT_EQ(f.metrics.total(), 39018u);
    EXPECT_NEAR(f.metrics.accuracy, 0.8723, 1e-3);

    std::size_t tp = 0, total = 0;
    for (const auto& r : b.rows) tp += r.metrics.tp, total += r.metrics.total();
    EXPECT_EQ(b.total.metrics.tp, tp);
    EXPECT_EQ(b.total.metrics.total(), total);
    EXPECT_EQ(total, 104958u);
    Breakdown by_ctx = regroup(rows, GroupBy::Context);
    EXPECT_EQ(by_ctx.total.metrics, b.total.metrics);
    EXPECT_EQ(by_ctx.rows.size(), 48u);
    EXPECT_EQ(by_ctx.rows.front().key, "FORless");  // ties on total broken by key
}

TEST(Breakdown, GroupsSortsAndPools) {
    std::vector<Prediction> preds;
    auto ctx = [](const char* s) { return *ContextType::parse(s); };
    preds.push_back({ctx("IFless"), 1, 0.9});
    preds.push_back({ctx("IFless"), 0, 0.2});
    preds.push_back({ctx("FORless"), 1, 0.4});
    preds.push_back({ctx("FORless"), 0, 0.6});
    preds.push_back({ctx("FORgreater"), 1, 0.5});
    preds.push_back({ctx("FORgreater"), 0, 0.1});
    Breakdown b = breakdown(preds, 0.5, GroupBy::Statement);
    ASSERT_EQ(b.rows.size(), 2u);
    EXPECT_EQ(b.rows[0].key, "FOR");
    EXPECT_EQ(b.rows[0].metrics, Metrics::from_counts(1, 1, 1, 1));
    EXPECT_EQ(b.rows[1].metrics, Metrics::from_counts(1, 1, 0, 0));
    EXPECT_EQ(b.total.metrics, confusion(preds, 0.5));

    std::vector<Prediction> one(preds.begin(), preds.begin() + 2);
    Breakdown single = breakdown(one, 0.5, GroupBy::Context);
    ASSERT_EQ(single.rows.size(), 1u);
    EXPECT_EQ(single.rows[0].metrics, confusion(one, 0.5));
}

TEST(Confusion, ThresholdMonotone) {
    std::vector<Prediction> preds;
    for (int i = 0; i < 40; ++i) preds.push_back({ContextType{}, i % 3 == 0, (i * 37 % 101) / 100.0});
    std::size_t last_tp = SIZE_MAX, last_fp = SIZE_MAX;
    for (double th = 0.0; th <= 1.0; th += 0.05) {
        Metrics m = confusion(preds, th);
        EXPECT_LE(m.tp, last_tp);
        EXPECT_LE(m.fp, last_fp);
        last_tp = m.tp;
        last_fp = m.fp;
    }
}

TEST(Render, RatioRounding) {
    EXPECT_EQ(format_ratio(0.86134), "0.8613");
    EXPECT_EQ(format_ratio(0.03125), "0.0313");  // exact half in binary goes up
    EXPECT_EQ(format_ratio(1.0), "1.0000");
    EXPECT_EQ(format_ratio(0.0), "0.0000");
}

TEST(Render, Csv) {
    EXPECT_EQ(render_csv({}), "context_type,tp,tn,fp,fn,total,accuracy,recall,precision,f1\n");
    std::string one = render_csv({{"FORlessEquals", Metrics::from_counts(15906, 177, 573, 2016)}});
    EXPECT_EQ(one,
              "context_type,tp,tn,fp,fn,total,accuracy,recall,precision,f1\n"
              "FORlessEquals,15906,177,573,2016,18672,0.8613,0.8875,0.9652,0.9247\n");
    Breakdown empty;
    EXPECT_TRUE(empty.with_total().empty());
}

TEST(Render, TextAligned) {
    Breakdown b = regroup(rows_of(published_rows()), GroupBy::Comparator);
    std::string text = render_text(b.with_total());
    std::istringstream in(text);
    std::string line;
    std::size_t width = 0;
    int lines = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (width == 0) width = line.size();
        EXPECT_EQ(line.size(), width);
        ++lines;
    }
    EXPECT_EQ(lines, 6);
    EXPECT_NE(text.find("\n\nTotal"), std::string::npos);
}

}  // namespace
