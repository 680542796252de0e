#include <random>
#include <sstream>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "svccoupling/cli.hpp"
#include "svccoupling/report.hpp"
#include "test_support.hpp"

namespace svccoupling {
namespace {

using ::testing::HasSubstr;
using ::testing::Not;
using testing::make_graph;

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

TEST(ClassifyTest, Examples) {
  EXPECT_EQ(classify(testing::star4(), "H"), ColorClass::kHub);
  EXPECT_EQ(classify(testing::chain3(), "B"), ColorClass::kBridge);
  EXPECT_EQ(classify(testing::star4(), "L1"), ColorClass::kHighOut);
  EXPECT_EQ(classify(testing::chain3(), "C"), ColorClass::kRegular);
  EXPECT_THROW(classify(testing::star4(), "nope"), Error);
}

TEST(ClassifyTest, SingleEdgeSystemHasNoHub) {
  const auto colors = classify_all(testing::single_edge());
  EXPECT_EQ(colors.at(ServiceId("A")), ColorClass::kHighOut);
  EXPECT_EQ(colors.at(ServiceId("B")), ColorClass::kRegular);
}

TEST(ClassifyTest, HubThresholdsConfigurable) {
  RenderOptions options;
  options.hub_min_degree = 5;
  EXPECT_EQ(classify(testing::star4(), "H", options), ColorClass::kBridge);
}

TEST(ClassifyTest, InvariantUnderRelabeling) {
  std::mt19937_64 rng(31);
  for (int c = 0; c < 100; ++c) {
    testing::RandomGraph raw = testing::random_graph(rng);
    const ServiceGraph graph = make_graph(raw.names, raw.edges);
    // Reverse the lexicographic order of names.
    auto relabel = [&](const std::string& s) { return "z" + std::to_string(100 - std::stoi(s.substr(1))); };
    testing::RandomGraph renamed;
    for (const auto& n : raw.names) renamed.names.push_back(relabel(n));
    for (const auto& e : raw.edges) renamed.edges.push_back({relabel(e.source), relabel(e.target), e.weight});
    const ServiceGraph other = make_graph(renamed.names, renamed.edges);
    const auto a = classify_all(graph);
    const auto b = classify_all(other);
    ASSERT_EQ(a.size(), graph.service_count());
    for (const auto& [id, color] : a) EXPECT_EQ(b.at(ServiceId(relabel(id.str()))), color);
  }
}

TEST(NodeSizeTest, Examples) {
  const ServiceGraph star = testing::star4();
  EXPECT_DOUBLE_EQ(node_size(star, "H"), 3.0);
  const ServiceGraph with_idle = make_graph({"A", "B", "Z"}, {{"A", "B"}});
  EXPECT_DOUBLE_EQ(node_size(with_idle, "Z"), 1.0);
  const ServiceGraph g = make_graph({"H", "A", "B", "C"},
                                    {{"A", "H"}, {"H", "A"}, {"B", "H"}, {"C", "H"}});
  RenderOptions options;
  options.base_node_size = 2.0;
  EXPECT_DOUBLE_EQ(node_size(g, "A", options), 4.0);
  EXPECT_LT(node_size(star, "L1"), node_size(star, "H"));
}

TEST(RenderOptionsTest, Validation) {
  RenderOptions options;
  EXPECT_NO_THROW(options.validate());
  options.hub_fraction = 1.01;
  EXPECT_THROW(options.validate(), Error);
  options.hub_fraction = 0.0;
  EXPECT_THROW(options.validate(), Error);
  options = RenderOptions{};
  options.base_node_size = -1;
  EXPECT_THROW(options.validate(), Error);
  options = RenderOptions{};
  options.decimal_places = -1;
  EXPECT_THROW(options.validate(), Error);
}

TEST(FormatFixedTest, RoundsAtEmissionOnly) {
  EXPECT_EQ(format_fixed(0.875, 2), "0.88");
  EXPECT_EQ(format_fixed(0.0, 2), "0.00");
  EXPECT_EQ(format_fixed(-0.0001, 2), "0.00");
  EXPECT_EQ(format_fixed(2.0 / 3.0, 3), "0.667");
}

TEST(PairMatrixCsvTest, SingleEdgeSc) {
  EXPECT_EQ(emit_pair_matrix_csv(testing::single_edge(), PairMetric::kSc),
            "service,A,B\n"
            "A,,0.00\n"
            "B,0.50,\n");
}

TEST(PairMatrixCsvTest, EdgelessGraphHasEmptyCells) {
  EXPECT_EQ(emit_pair_matrix_csv(make_graph({"A", "B"}, {}), PairMetric::kDegree),
            "service,A,B\nA,,\nB,,\n");
}

TEST(PairMatrixCsvTest, Star4Lwf) {
  const auto rows = parse_csv(emit_pair_matrix_csv(testing::star4(), PairMetric::kLwf));
  ASSERT_EQ(rows.size(), 6u);
  // rows[1] is H; columns 2..5 are the leaves.
  for (std::size_t c = 2; c <= 5; ++c) EXPECT_EQ(rows[1][c], "0.50");
  for (std::size_t r = 2; r <= 5; ++r) EXPECT_EQ(rows[r][1], "1.00");
}

TEST(PairMatrixCsvTest, SymmetricMetricsEqualTranspose) {
  std::mt19937_64 rng(32);
  for (int c = 0; c < 50; ++c) {
    const testing::RandomGraph raw = testing::random_graph(rng);
    const ServiceGraph graph = make_graph(raw.names, raw.edges);
    for (PairMetric metric : {PairMetric::kDegree, PairMetric::kGwf}) {
      const auto rows = parse_csv(emit_pair_matrix_csv(graph, metric));
      for (std::size_t r = 1; r < rows.size(); ++r) {
        for (std::size_t k = 1; k < rows.size(); ++k) EXPECT_EQ(rows[r][k], rows[k][r]);
      }
    }
  }
}

TEST(ServiceMetricsCsvTest, ExampleRowA) {
  const auto rows = parse_csv(emit_service_metrics_csv(cli::builtin_example_graph()));
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"service", "in_degree", "out_degree", "degree",
                                               "classes", "loc", "cbm", "ais", "ads", "acs"}));
  EXPECT_EQ(rows[1], (std::vector<std::string>{"A", "4", "1", "5", "50", "", "0.02", "4", "1", "4"}));
}

TEST(ServiceMetricsCsvTest, MissingClassCountAndIsolatedService) {
  const ServiceGraph graph = make_graph({"A", "B", "Z"}, {{"A", "B"}});
  EXPECT_EQ(emit_service_metrics_csv(graph),
            "service,in_degree,out_degree,degree,classes,loc,cbm,ais,ads,acs\n"
            "A,0,1,1,,,,0,1,0\n"
            "B,1,0,1,,,,1,0,0\n"
            "Z,0,0,0,,,,0,0,0\n");
}

TEST(SummaryCsvTest, Star4Row) {
  const ProjectSummary summary = project_summary(testing::star4(), "cqrs");
  const auto rows = parse_csv(emit_summary_csv(std::span(&summary, 1)));
  ASSERT_EQ(rows.size(), 2u);
  ASSERT_EQ(rows[0].size(), 27u);
  const auto column = [&](const std::string& name) {
    const auto it = std::find(rows[0].begin(), rows[0].end(), name);
    return rows[1][static_cast<std::size_t>(it - rows[0].begin())];
  };
  EXPECT_EQ(column("project"), "cqrs");
  EXPECT_EQ(column("sc_max"), "0.88");
  EXPECT_EQ(column("gwf_stdev"), "0.00");
  EXPECT_EQ(column("gwf_max"), "0.25");
  EXPECT_EQ(column("lwf_stdev"), "0.25");
  EXPECT_EQ(column("cbm_max"), "");
  EXPECT_EQ(column("cbm_tot"), "");
  EXPECT_EQ(column("siy"), "0");
}

TEST(SummaryCsvTest, EmptyCorpusIsHeaderOnly) {
  const std::string text = emit_summary_csv({});
  EXPECT_EQ(count_of(text, "\n"), 1u);
  EXPECT_THAT(text, HasSubstr("project,degree_max"));
}

TEST(SummaryCsvTest, QuotesProjectNamesWithCommas) {
  ProjectSummary summary;
  summary.project_name = "a, b";
  EXPECT_THAT(emit_summary_csv(std::span(&summary, 1)), HasSubstr("\"a, b\","));
}

TEST(DotTest, SingleEdge) {
  const std::string dot = emit_dot(testing::single_edge());
  EXPECT_THAT(dot, HasSubstr("digraph"));
  EXPECT_THAT(dot, HasSubstr("\"A\" -> \"B\" [label=\"0.00\", penwidth=1.00]"));
  EXPECT_EQ(count_of(dot, "->"), 1u);
  EXPECT_EQ(count_of(dot, "fillcolor="), 2u);
}

TEST(DotTest, Star4Colors) {
  const std::string dot = emit_dot(testing::star4());
  EXPECT_THAT(dot, HasSubstr("\"H\" [label=\"H\", style=filled, fillcolor=\"green\""));
  EXPECT_EQ(count_of(dot, "fillcolor=\"blue\""), 4u);
  EXPECT_EQ(count_of(dot, "label=\"0.75\""), 4u);
  EXPECT_EQ(count_of(dot, "->"), 4u);
}

TEST(DotTest, EdgelessAndDeterministic) {
  const ServiceGraph graph = make_graph({"A", "B"}, {});
  const std::string dot = emit_dot(graph);
  EXPECT_THAT(dot, Not(HasSubstr("->")));
  EXPECT_EQ(count_of(dot, "fillcolor="), 2u);
  EXPECT_EQ(emit_dot(cli::builtin_example_graph()), emit_dot(cli::builtin_example_graph()));
}

TEST(DotTest, DecimalPlacesOption) {
  RenderOptions options;
  options.decimal_places = 3;
  EXPECT_THAT(emit_dot(testing::star4(), options), HasSubstr("label=\"0.750\""));
}

TEST(SvgTest, SingleNode) {
  const std::string svg = emit_svg(make_graph({"A"}, {}));
  EXPECT_THAT(svg, HasSubstr("<svg xmlns=\"http://www.w3.org/2000/svg\" width="));
  EXPECT_EQ(count_of(svg, "<circle"), 1u);
  EXPECT_EQ(count_of(svg, "<line"), 0u);
}

TEST(SvgTest, SingleEdge) {
  const std::string svg = emit_svg(testing::single_edge());
  EXPECT_EQ(count_of(svg, "<circle"), 2u);
  EXPECT_EQ(count_of(svg, "<line"), 1u);
  EXPECT_THAT(svg, HasSubstr(">0.00</text>"));
}

TEST(SvgTest, Star4HubGreenAndLargest) {
  const std::string svg = emit_svg(testing::star4());
  EXPECT_EQ(count_of(svg, "<circle"), 5u);
  EXPECT_EQ(count_of(svg, "fill=\"green\""), 1u);
  EXPECT_THAT(svg, HasSubstr("r=\"36.00\" fill=\"green\""));
  EXPECT_EQ(count_of(svg, "r=\"36.00\""), 1u);
}

TEST(SvgTest, EmptyGraphThrowsAndOutputIsStable) {
  EXPECT_THROW(emit_svg(ServiceGraph{}), Error);
  EXPECT_EQ(emit_svg(cli::builtin_example_graph()), emit_svg(cli::builtin_example_graph()));
}

TEST(SvgTest, EscapesMarkup) {
  const std::string svg = emit_svg(make_graph({"a&b", "<c>"}, {{"a&b", "<c>"}}));
  EXPECT_THAT(svg, HasSubstr(">a&amp;b</text>"));
  EXPECT_THAT(svg, HasSubstr(">&lt;c&gt;</text>"));
}

}  // namespace
}  // namespace svccoupling
