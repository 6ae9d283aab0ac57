#include "mfhess/cache.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace mfhess;

namespace {

std::filesystem::path fresh_dir(const std::string &name)
{
  auto dir = std::filesystem::temp_directory_path() / ("mfhess-test-" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

} // namespace

TEST(Cache, Fnv1aReferenceVectors)
{
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(fnv1a("foobar"), 0x85944171f73967e8ull);
  EXPECT_EQ(hex64(0xabcull), "0000000000000abc");
}

TEST(Cache, ConventionHashSeparatesTypes)
{
  LieAlgebra b2 = chevalley_algebra(build_root_system(cartan_from_label("B2")));
  LieAlgebra c2 = chevalley_algebra(build_root_system(cartan_from_label("C2")));
  EXPECT_NE(convention_hash(b2), convention_hash(c2));
  EXPECT_EQ(convention_hash(b2), convention_hash(chevalley_algebra(build_root_system(cartan_from_label("B2")))));
}

TEST(Cache, JsonRoundTrip)
{
  LieAlgebra L = chevalley_algebra(build_root_system(cartan_from_label("B2")));
  GradientContext ctx(L);
  InvariantFamily inv = invariant_generators(ctx);
  auto doc = invariants_to_json("B2", L, inv);
  auto back = invariants_from_json("B2", ctx, nlohmann::json::parse(doc.dump()));
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(back->generators, inv.generators);
  EXPECT_EQ(back->degrees, inv.degrees);
  EXPECT_EQ(back->provenance, "cache");
  EXPECT_FALSE(invariants_from_json("C2", ctx, doc).has_value());
}

TEST(Cache, RejectsTamperedDocuments)
{
  LieAlgebra L = chevalley_algebra(build_root_system(cartan_from_label("A2")));
  GradientContext ctx(L);
  InvariantFamily inv = invariant_generators(ctx);
  auto doc = invariants_to_json("A2", L, inv);
  auto wrong_hash = doc;
  wrong_hash["convention_hash"] = "0000000000000000";
  EXPECT_FALSE(invariants_from_json("A2", ctx, wrong_hash).has_value());
  // x0 * x7 is homogeneous of the right degree but not invariant.
  auto not_invariant = doc;
  not_invariant["generators"][0]["terms"] = polynomial_to_json(Polynomial::variable(8, 0) * Polynomial::variable(8, 7));
  EXPECT_FALSE(invariants_from_json("A2", ctx, not_invariant).has_value());
  auto truncated = doc;
  truncated["generators"].erase(1);
  EXPECT_FALSE(invariants_from_json("A2", ctx, truncated).has_value());
  EXPECT_FALSE(invariants_from_json("A2", ctx, nlohmann::json::object()).has_value());
}

TEST(Cache, WritesThenReads)
{
  auto dir = fresh_dir("cache-rw");
  LieAlgebra L = chevalley_algebra(build_root_system(cartan_from_label("A2")));
  GradientContext ctx(L);
  InvariantFamily first = cached_invariants("A2", ctx, dir);
  EXPECT_EQ(first.provenance, "solver");
  EXPECT_TRUE(std::filesystem::exists(cache_file(dir, "A2", L)));
  InvariantFamily second = cached_invariants("A2", ctx, dir);
  EXPECT_EQ(second.provenance, "cache");
  EXPECT_EQ(second.generators, first.generators);
  // A corrupt file is ignored and replaced.
  std::ofstream(cache_file(dir, "A2", L)) << "{ not json";
  InvariantFamily third = cached_invariants("A2", ctx, dir);
  EXPECT_EQ(third.provenance, "solver");
  EXPECT_EQ(third.generators, first.generators);
  std::filesystem::remove_all(dir);
}

TEST(Cache, DirectoryPrecedence)
{
  unsetenv("MFHESS_CACHE");
  EXPECT_EQ(resolve_cache_dir(), std::filesystem::path(".mfhess-cache"));
  EXPECT_EQ(resolve_cache_dir("given"), std::filesystem::path("given"));
  setenv("MFHESS_CACHE", "/tmp/from-env", 1);
  EXPECT_EQ(resolve_cache_dir("given"), std::filesystem::path("/tmp/from-env"));
  unsetenv("MFHESS_CACHE");
}
