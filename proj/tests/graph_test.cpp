#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "svccoupling/cli.hpp"
#include "svccoupling/graph.hpp"
#include "test_support.hpp"

namespace svccoupling {
namespace {

using ::testing::ElementsAre;
using ::testing::IsEmpty;
using testing::make_graph;

ErrorCode code_of(auto&& action) {
  try {
    action();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kIoError;
}

TEST(ServiceIdTest, RejectsEmptyAndSeparatorCharacters) {
  EXPECT_EQ(code_of([] { ServiceId(""); }), ErrorCode::kInvalidServiceId);
  EXPECT_EQ(code_of([] { ServiceId("a,b"); }), ErrorCode::kInvalidServiceId);
  EXPECT_EQ(code_of([] { ServiceId("a\tb"); }), ErrorCode::kInvalidServiceId);
  EXPECT_EQ(code_of([] { ServiceId("a\nb"); }), ErrorCode::kInvalidServiceId);
  EXPECT_EQ(ServiceId("order-service").str(), "order-service");
}

TEST(AddServiceTest, EmptyGraphPlusNode) {
  const ServiceGraph empty;
  const ServiceGraph graph = empty.add_service(ServiceNode{"A", {}, {}});
  EXPECT_EQ(graph.service_count(), 1u);
  EXPECT_EQ(graph.edge_count(), 0u);
  EXPECT_EQ(empty.service_count(), 0u);  // receiver untouched
}

TEST(AddServiceTest, DuplicateIsRejected) {
  const ServiceGraph graph = make_graph({"A"}, {});
  EXPECT_EQ(code_of([&] { graph.add_service(ServiceNode{"A", {}, {}}); }),
            ErrorCode::kDuplicateService);
}

TEST(AddServiceTest, SecondNode) {
  const ServiceGraph graph = make_graph({"A"}, {}).add_service(ServiceNode{"B", 3, {}});
  EXPECT_THAT(graph.service_ids(), ElementsAre(ServiceId("A"), ServiceId("B")));
  EXPECT_EQ(graph.node("B").class_count, 3u);
}

TEST(AddDependencyTest, InsertsEdge) {
  const ServiceGraph graph = make_graph({"A", "B"}, {}).add_dependency({"A", "B"});
  ASSERT_EQ(graph.edges().size(), 1u);
  EXPECT_EQ(graph.edges()[0], (DependencyEdge{"A", "B", 1, EdgeKind::kCall}));
}

TEST(AddDependencyTest, SameKindMergesBySum) {
  const ServiceGraph once = make_graph({"A", "B"}, {{"A", "B", 1}});
  const ServiceGraph twice = once.add_dependency({"A", "B", 2});
  ASSERT_EQ(twice.edges().size(), 1u);
  EXPECT_EQ(twice.edges()[0].weight, 3u);
  EXPECT_EQ(once.edges()[0].weight, 1u);
}

TEST(AddDependencyTest, DifferentKindsStaySeparateButDegreesSum) {
  const ServiceGraph graph = make_graph({"A", "B"}, {{"A", "B", 1}})
                                 .add_dependency({"A", "B", 2, EdgeKind::kCompose});
  EXPECT_EQ(graph.edge_count(), 2u);
  EXPECT_EQ(graph.pair_outdegree("A", "B"), 3u);
}

TEST(AddDependencyTest, Errors) {
  const ServiceGraph graph = make_graph({"A", "B"}, {});
  EXPECT_EQ(code_of([&] { graph.add_dependency({"A", "A"}); }), ErrorCode::kSelfDependency);
  EXPECT_EQ(code_of([&] { graph.add_dependency({"A", "X"}); }), ErrorCode::kUnknownService);
  EXPECT_EQ(code_of([&] { graph.add_dependency({"A", "B", 0}); }), ErrorCode::kInvalidWeight);
}

TEST(PairDegreeTest, SingleReverseEdge) {
  const ServiceGraph graph = make_graph({"A", "B"}, {{"B", "A"}});
  EXPECT_EQ(graph.pair_outdegree("A", "B"), 0u);
  EXPECT_EQ(graph.pair_outdegree("B", "A"), 1u);
  EXPECT_EQ(graph.pair_indegree("A", "B"), 1u);
  EXPECT_EQ(graph.pair_indegree("B", "A"), 0u);
  EXPECT_EQ(graph.pair_degree("A", "B"), 1u);
}

TEST(PairDegreeTest, WeightedBothDirections) {
  // A->B w=2, B->A w=1, counted by hand.
  const ServiceGraph graph = make_graph({"A", "B"}, {{"A", "B", 2}, {"B", "A", 1}});
  EXPECT_EQ(graph.pair_outdegree("A", "B"), 2u);
  EXPECT_EQ(graph.pair_indegree("A", "B"), 1u);
  EXPECT_EQ(graph.pair_degree("A", "B"), 3u);
  EXPECT_EQ(graph.pair_degree("B", "A"), 3u);
}

TEST(PairDegreeTest, BothDirectionsAndDisconnected) {
  EXPECT_EQ(make_graph({"A", "B"}, {{"A", "B"}, {"B", "A"}}).pair_degree("A", "B"), 2u);
  EXPECT_EQ(make_graph({"A", "B"}, {}).pair_degree("A", "B"), 0u);
}

TEST(PairDegreeTest, UnknownOrIdenticalServices) {
  const ServiceGraph graph = make_graph({"A", "B"}, {});
  EXPECT_EQ(code_of([&] { graph.pair_degree("A", "Z"); }), ErrorCode::kUnknownService);
  EXPECT_EQ(code_of([&] { graph.pair_outdegree("A", "A"); }), ErrorCode::kSelfDependency);
}

TEST(NodeDegreeTest, ExampleSystemRows) {
  const ServiceGraph graph = cli::builtin_example_graph();
  EXPECT_EQ(graph.node_indegree("A"), 4u);
  EXPECT_EQ(graph.node_outdegree("A"), 1u);
  EXPECT_EQ(graph.node_degree("A"), 5u);
  EXPECT_EQ(graph.node_indegree("B"), 0u);
  EXPECT_EQ(graph.node_outdegree("B"), 1u);
  EXPECT_EQ(graph.node_degree("B"), 1u);
}

TEST(NodeDegreeTest, IsolatedNode) {
  const ServiceGraph graph = make_graph({"A", "B", "Z"}, {{"A", "B"}});
  EXPECT_EQ(graph.node_indegree("Z"), 0u);
  EXPECT_EQ(graph.node_outdegree("Z"), 0u);
  EXPECT_EQ(graph.node_degree("Z"), 0u);
  EXPECT_EQ(code_of([&] { graph.node_degree("Q"); }), ErrorCode::kUnknownService);
}

TEST(MaxNodeDegreeTest, Examples) {
  EXPECT_EQ(cli::builtin_example_graph().max_node_degree(), 5u);
  EXPECT_EQ(testing::star4().max_node_degree(), 4u);
  EXPECT_EQ(make_graph({"A", "B"}, {}).max_node_degree(), 0u);
  EXPECT_EQ(code_of([] { ServiceGraph{}.max_node_degree(); }), ErrorCode::kEmptyGraph);
}

TEST(ConnectedPairsTest, BothOrientationsInOrder) {
  using P = std::pair<ServiceId, ServiceId>;
  EXPECT_THAT(testing::single_edge().connected_pairs(),
              ElementsAre(P{"A", "B"}, P{"B", "A"}));
  EXPECT_THAT(make_graph({"A", "B"}, {}).connected_pairs(), IsEmpty());
  EXPECT_EQ(cli::builtin_example_graph().connected_pairs().size(), 8u);
}

TEST(ArticulationTest, Examples) {
  EXPECT_THAT(testing::chain3().articulation_services(), ElementsAre(ServiceId("B")));
  EXPECT_THAT(testing::star4().articulation_services(), ElementsAre(ServiceId("H")));
  EXPECT_THAT(testing::single_edge().articulation_services(), IsEmpty());
}

TEST(ArticulationTest, CycleHasNoneAndTailAddsOne) {
  const ServiceGraph cycle = make_graph({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}, {"C", "A"}});
  EXPECT_THAT(cycle.articulation_services(), IsEmpty());
  const ServiceGraph tail = make_graph({"A", "B", "C", "D"},
                                       {{"A", "B"}, {"B", "C"}, {"C", "A"}, {"D", "C"}});
  EXPECT_THAT(tail.articulation_services(), ElementsAre(ServiceId("C")));
}

TEST(BidirectionalTest, Examples) {
  EXPECT_TRUE(make_graph({"A", "B"}, {{"A", "B"}, {"B", "A"}}).is_bidirectional("A", "B"));
  EXPECT_FALSE(make_graph({"A", "B"}, {{"A", "B"}}).is_bidirectional("A", "B"));
  EXPECT_FALSE(make_graph({"A", "B"}, {{"A", "B", 3}}).is_bidirectional("A", "B"));
}

TEST(ServiceGraphTest, InsertionOrderDoesNotMatter) {
  const ServiceGraph forward =
      make_graph({"A", "B", "C"}, {{"A", "B", 2}, {"B", "C"}, {"A", "B", 1}});
  const ServiceGraph backward =
      make_graph({"C", "B", "A"}, {{"A", "B", 1}, {"B", "C"}, {"A", "B", 2}});
  EXPECT_EQ(forward, backward);
}

}  // namespace
}  // namespace svccoupling
