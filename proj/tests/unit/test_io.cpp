#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "triad/generators.hpp"
#include "triad/io.hpp"

using namespace triad;

TEST(Json, BipartiteRoundTripIsExact) {
  Rng rng(1);
  const BipartiteOperator g(2, 3, sample::random_complex(rng, 6, 6));
  const BipartiteOperator back = parse_bipartite(dump(Json(g)));
  EXPECT_EQ(back.dim_a(), 2);
  EXPECT_EQ(back.dim_b(), 3);
  EXPECT_EQ((back.matrix() - g.matrix()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Json, LocalRoundTrip) {
  Rng rng(2);
  const LocalOperator a(sample::random_complex(rng, 3, 3));
  const LocalOperator back = local_from_json(Json::parse(dump(Json(a))));
  EXPECT_EQ((back.matrix() - a.matrix()).norm(), 0.0);
}

TEST(Json, Shape) {
  const Json j = canonical("classical_diag", 2);
  EXPECT_EQ(j.at("dim_a"), 2);
  EXPECT_EQ(j.at("dim_b"), 2);
  EXPECT_EQ(j.at("re").size(), 4u);
  EXPECT_EQ(j.at("im").at(0).size(), 4u);
  EXPECT_EQ(j.at("re").at(0).at(0).get<double>(), 0.5);
}

TEST(Json, MalformedInputIsParseError) {
  for (const char* text : {"{", "[]", R"({"dim_a": 2, "dim_b": 2, "re": [[1]], "im": [[0]]})",
                           R"({"dim_a": 1, "dim_b": 1, "re": [["x"]], "im": [[0]]})",
                           R"({"dim_a": 0, "dim_b": 1, "re": [], "im": []})"}) {
    try {
      parse_bipartite(text);
      FAIL() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError) << text;
    }
  }
}

TEST(Json, StreamReader) {
  std::istringstream in(dump(Json(canonical("bell", 2))));
  EXPECT_LT((read_bipartite(in).matrix() - canonical("bell", 2).matrix()).norm(), 1e-16);
}

TEST(Json, ReportsSerialize) {
  const BipartiteOperator cd = canonical("classical_diag", 2);
  const Json tree = decompose(cd);
  EXPECT_EQ(tree.at("status"), "internal");
  EXPECT_EQ(tree.at("children").size(), 2u);
  EXPECT_TRUE(tree.at("children").at(0).at("separable_decomposition").is_array());
  const Json filt = sinkhorn_filter(cd, FilterMode::General);
  EXPECT_TRUE(filt.at("log").is_array());
  EXPECT_EQ(filt.at("mode"), "general");
  const Json ex = minimal_rank_extract(cd, classify(cd));
  EXPECT_TRUE(ex.at("ok").get<bool>());
  EXPECT_TRUE(ex.at("failure").is_null());
  const Json probe = fully_indecomposable_probe(cd, 5, 1);
  EXPECT_EQ(probe.at("verdict"), "decomposable_witness");
  EXPECT_NO_THROW(Json::parse(dump(Json(schmidt(cd)))));
}
