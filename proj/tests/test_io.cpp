#include <gtest/gtest.h>

#include <filesystem>

#include "gpi/io.hpp"
#include "support.hpp"

namespace gpi {
namespace {

using io::json;
using testing::Rng;

TEST(GroupJson, RoundTripsTheCorpus) {
  for (const auto& g : testing::small_corpus()) {
    json j = json::parse(io::group_to_json(g.G).dump());
    FiniteGroup back = io::group_from_json(j);
    EXPECT_EQ(back.rows(), g.G.rows()) << g.name;
  }
}

TEST(GroupJson, RejectsMalformedInput) {
  EXPECT_THROW(io::group_from_json(json::parse(R"({"table": [[0]]})")), InvalidInput);
  EXPECT_THROW(io::group_from_json(json::parse(R"({"n": 2, "table": [[0, 1]]})")), InvalidInput);
  EXPECT_THROW(io::group_from_json(json::parse(R"({"n": 2, "table": [[0, 1], [1, 1]]})")), InvalidInput);
  EXPECT_THROW(io::group_from_json(json::parse(R"({"n": "two", "table": []})")), InvalidInput);
  EXPECT_THROW(io::group_from_json(json::parse("[1, 2]")), InvalidInput);
}

TEST(RepJson, RoundTripsRandomRepresentations) {
  Rng rng(91);
  for (int q : {2, 3, 4, 5}) {
    auto S3 = make_group_ref(symmetric_group(3));
    Representation R = testing::random_representation(S3, Field::of(q), 4, rng);
    json j = json::parse(io::rep_to_json(R).dump());
    Representation back = io::rep_from_json(j, S3);
    EXPECT_EQ(back.F.q(), q);
    EXPECT_TRUE(reps_equal(back, R));
  }
}

TEST(RepJson, RejectsMalformedInput) {
  auto Z2 = make_group_ref(cyclic_group(2));
  // Wrong number of images.
  EXPECT_THROW(io::rep_from_json(json::parse(R"({"p":2,"q":2,"d":1,"images":[[1]]})"), Z2), InvalidInput);
  // Entry outside the field.
  EXPECT_THROW(io::rep_from_json(json::parse(R"({"p":2,"q":2,"d":1,"images":[[1],[2]]})"), Z2), InvalidInput);
  // Not a homomorphism: the identity must map to I.
  EXPECT_THROW(io::rep_from_json(json::parse(R"({"p":3,"q":3,"d":1,"images":[[2],[1]]})"), Z2), InvalidInput);
  // p and q disagree; unsupported field.
  EXPECT_THROW(io::rep_from_json(json::parse(R"({"p":3,"q":4,"d":1,"images":[[1],[1]]})"), Z2), InvalidInput);
  EXPECT_THROW(io::rep_from_json(json::parse(R"({"p":2,"q":8,"d":1,"images":[[1],[1]]})"), Z2), InvalidInput);
  // Image of the wrong size.
  EXPECT_THROW(io::rep_from_json(json::parse(R"({"p":2,"q":2,"d":2,"images":[[1],[1]]})"), Z2), InvalidInput);
}

TEST(CocycleJson, RoundTripsExtensionData) {
  for (const auto& g : testing::small_corpus()) {
    if (g.G.order() == 1) continue;
    Subgroup A = layer_subgroup(g.G, "layer");
    if (A.size() == 1) continue;
    ExtensionData X = extension_data(g.G, A);
    Cocycle back = io::cocycle_from_json(json::parse(io::cocycle_to_json(X.f).dump()));
    EXPECT_EQ(back.values, X.f.values) << g.name;
    EXPECT_EQ(back.p, X.f.p);
    EXPECT_EQ(back.d, X.f.d);
    Representation theta = io::rep_from_json(io::rep_to_json(X.theta), X.Q);
    EXPECT_TRUE(reps_equal(theta, X.theta)) << g.name;
  }
}

TEST(CocycleJson, RejectsMalformedInput) {
  EXPECT_THROW(io::cocycle_from_json(json::parse(R"({"p":2,"d":1,"n":2,"values":[[[0],[0]]]})")), InvalidInput);
  EXPECT_THROW(io::cocycle_from_json(json::parse(R"({"p":2,"d":1,"n":1,"values":[[[2]]]})")), InvalidInput);
  EXPECT_THROW(io::cocycle_from_json(json::parse(R"({"p":2,"d":2,"n":1,"values":[[[0]]]})")), InvalidInput);
  EXPECT_THROW(io::cocycle_from_json(json::parse(R"({"p":2,"d":1,"values":[[[0]]]})")), InvalidInput);
}

TEST(JsonFiles, ReadWriteAndErrors) {
  auto dir = std::filesystem::temp_directory_path() / "gpi_io_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "g.json").string();
  io::write_json_file(path, io::group_to_json(dihedral_group(2)));
  EXPECT_EQ(io::group_from_json(io::read_json_file(path)).rows(), dihedral_group(2).rows());

  const std::string bad = (dir / "bad.json").string();
  {
    std::ofstream out(bad);
    out << "{not json";
  }
  EXPECT_THROW(io::read_json_file(bad), InvalidInput);
  EXPECT_THROW(io::read_json_file((dir / "missing.json").string()), InvalidInput);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace gpi
