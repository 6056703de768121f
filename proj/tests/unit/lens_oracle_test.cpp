#include <gtest/gtest.h>

#include <cstdlib>
#include <numeric>

#include "oracles.hpp"
#include "qhb/errors.hpp"
#include "qhb/lens_oracle.hpp"

namespace qhb {
namespace {

const FamilyData& data() {
  static const FamilyData d = FamilyData::load(QHB_TEST_FAMILIES);
  return d;
}

TEST(LensSpace, Validation) {
  EXPECT_EQ(LensSpace(36, 19).to_string(), "L(36,19)");
  EXPECT_EQ(LensSpace(36, 19).string(), (WeightString{2, 10, 2}));
  EXPECT_TRUE(LensSpace::s3().string().empty());
  EXPECT_THROW(LensSpace(0, 0), DomainError);
  EXPECT_THROW(LensSpace(6, 3), DomainError);
  EXPECT_THROW(LensSpace(6, 6), DomainError);
  EXPECT_THROW(LensSpace(6, 0), DomainError);
}

TEST(LensSpace, Orbit) {
  EXPECT_EQ(symmetry_orbit(LensSpace(36, 19)), (std::vector<Integer>{17, 19}));
  EXPECT_EQ(symmetry_orbit(LensSpace(55, 19)), (std::vector<Integer>{19, 26, 29, 36}));
  EXPECT_EQ(symmetry_orbit(LensSpace(1, 0)), (std::vector<Integer>{0}));
}

TEST(BoundsQhb, Anchors) {
  const auto a = bounds_qhb(LensSpace(4, 1), data());
  EXPECT_TRUE(a.bounds);
  EXPECT_FALSE(a.family_name().empty());
  EXPECT_FALSE(bounds_qhb(LensSpace(36, 19), data()).bounds);
  const auto s3 = bounds_qhb(LensSpace(1, 0), data());
  EXPECT_TRUE(s3.bounds);
  EXPECT_EQ(s3.family_name(), "S3");
}

TEST(BoundsQhb, MatchesDefinitionOracle) {
  for (std::int64_t p = 2; p <= 400; ++p)
    for (std::int64_t q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const auto v = bounds_qhb(LensSpace(p, q), data());
      ASSERT_EQ(v.bounds, oracle::lens_bounds(p, q)) << "L(" << p << "," << q << ")";
      if (v.bounds) {
        ASSERT_TRUE(v.family);
        ASSERT_EQ(v.family->p, p);
        const auto orbit = symmetry_orbit(LensSpace(p, q));
        ASSERT_NE(std::find(orbit.begin(), orbit.end(), v.family->q), orbit.end());
      }
    }
}

TEST(BoundsQhb, SymmetricUnderOrbit) {
  for (std::int64_t p = 2; p <= 100; ++p)
    for (std::int64_t q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const bool v = bounds_qhb(LensSpace(p, q), data()).bounds;
      ASSERT_EQ(v, bounds_qhb(LensSpace(p, p - q), data()).bounds);
      ASSERT_EQ(v, bounds_qhb(LensSpace(p, oracle::inverse_mod(q, p)), data()).bounds);
    }
}

TEST(SquareFilter, Examples) {
  EXPECT_EQ(square_filter(LensSpace(36, 19)), SquareFilter::Passes);
  EXPECT_EQ(square_filter(LensSpace(3, 2)), SquareFilter::FailsNecessary);
  EXPECT_EQ(square_filter(LensSpace(4, 1)), SquareFilter::Passes);
}

TEST(EmbeddingNecessity, Examples) {
  EXPECT_EQ(embedding_necessity(LensSpace(3, 2)).verdict, Necessity::No);
  const auto four = embedding_necessity(LensSpace(4, 1));
  EXPECT_EQ(four.verdict, Necessity::Inconclusive);
  ASSERT_TRUE(four.direct && four.reversed);
  EXPECT_TRUE(verify_embedding(*four.reversed, gram(WeightString{2, 2, 2})));
  const auto r = embedding_necessity(LensSpace(36, 19));
  EXPECT_TRUE(r.direct);
  EXPECT_FALSE(r.reversed);
  EXPECT_EQ(r.verdict, Necessity::No);
  EXPECT_THROW(embedding_necessity(LensSpace(1, 0)), DomainError);
}

TEST(EmbeddingNecessity, NeverContradictsTheOracle) {
  for (std::int64_t p = 2; p <= 50; ++p)
    for (std::int64_t q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const LensSpace l(p, q);
      const bool yes = bounds_qhb(l, data()).bounds;
      if (square_filter(l) == SquareFilter::FailsNecessary) ASSERT_FALSE(yes);
      if (embedding_necessity(l).verdict == Necessity::No) ASSERT_FALSE(yes) << l.to_string();
    }
}

TEST(FamilyData, InstancesAreSane) {
  const auto all = data().instances(6);
  EXPECT_GT(all.size(), 20u);
  for (const auto& inst : all) {
    ASSERT_EQ(boost::multiprecision::gcd(inst.p, inst.q), 1) << inst.to_string();
    ASSERT_GT(inst.q, 0);
    ASSERT_LT(inst.q, inst.p);
    ASSERT_EQ(square_filter(LensSpace(inst.p, inst.q)), SquareFilter::Passes) << inst.to_string();
    for (const auto& [name, value] : inst.parameters) ASSERT_LE(value, 6);
  }
  EXPECT_EQ(data().version(), "1.0.0");
  EXPECT_EQ(data().families().size(), 6u);
}

TEST(FamilyData, SchemaErrors) {
  EXPECT_THROW(FamilyData::parse("{", "t"), DataAssetMissing);
  EXPECT_THROW(FamilyData::parse(R"({"schema":"other","version":"1","families":[]})", "t"), DataAssetMissing);
  EXPECT_THROW(FamilyData::parse(R"({"schema":"qhb.lens_families/1","version":"1","families":[]})", "t"),
               DataAssetMissing);
  const char* bad_expr = R"({"schema":"qhb.lens_families/1","version":"1","families":[
    {"name":"x","parameters":[{"name":"m","min":"2"}],"p":"m * m","q":"k"}]})";
  EXPECT_THROW(FamilyData::parse(bad_expr, "t"), DataAssetMissing);
  const char* bad_values = R"({"schema":"qhb.lens_families/1","version":"1","families":[
    {"name":"x","parameters":[{"name":"m","min":"2"}],"p":"m * m","q":"m"}]})";
  const FamilyData d = FamilyData::parse(bad_values, "t");
  EXPECT_THROW(d.instances(3), DataAssetMissing);
  EXPECT_THROW(FamilyData::load("/nonexistent/families.json"), DataAssetMissing);
}

TEST(FamilyData, PathResolution) {
  EXPECT_EQ(FamilyData::default_path("/x.json"), "/x.json");
  ::setenv("QHB_FAMILIES", "/from/env.json", 1);
  EXPECT_EQ(FamilyData::default_path(), "/from/env.json");
  ::unsetenv("QHB_FAMILIES");
  EXPECT_NO_THROW(FamilyData::load(FamilyData::default_path()));
}

TEST(FamilyData, CustomAssetDrivesVerdicts) {
  const char* only_mk = R"json({"schema":"qhb.lens_families/1","version":"test","families":[
    {"name":"mk+1","parameters":[{"name":"m","min":"2"},{"name":"k","min":"1","max":"m - 1"}],
     "constraints":["gcd(m, k) == 1"],"p":"m * m","q":"(m * k + 1) % (m * m)"}]})json";
  const FamilyData d = FamilyData::parse(only_mk, "t");
  EXPECT_EQ(d.version(), "test");
  EXPECT_TRUE(bounds_qhb(LensSpace(4, 1), d).bounds);
  EXPECT_TRUE(bounds_qhb(LensSpace(9, 2), d).bounds);
  EXPECT_EQ(bounds_qhb(LensSpace(9, 2), d).family->to_string(), "mk+1(m=3,k=1)");
}

}  // namespace
}  // namespace qhb
