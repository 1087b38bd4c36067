#include "pcm/property_value.hpp"

#include <limits>
#include <random>
#include <set>

#include <gtest/gtest.h>

using pcm::PropertyValue;
using pcm::Unsupported;

TEST(PropertyValue, Canonical)
{
    EXPECT_EQ(PropertyValue("Example Product Name").canonical(),
              "Example Product Name");
    EXPECT_EQ(PropertyValue(" padded ").canonical(), " padded ");
    EXPECT_EQ(PropertyValue(4).canonical(), "4");
    EXPECT_EQ(PropertyValue(-4).canonical(), "-4");
    EXPECT_EQ(PropertyValue(std::uint8_t{200}).canonical(), "200");
    EXPECT_EQ(PropertyValue(std::numeric_limits<std::int64_t>::min()).canonical(),
              "-9223372036854775808");
    EXPECT_EQ(PropertyValue(std::numeric_limits<std::uint64_t>::max()).canonical(),
              "18446744073709551615");
    EXPECT_EQ(PropertyValue(true).canonical(), "true");
    EXPECT_EQ(PropertyValue(false).canonical(), "false");
}

TEST(PropertyValue, Kinds)
{
    EXPECT_EQ(PropertyValue("x").kind(), PropertyValue::Kind::String);
    EXPECT_EQ(PropertyValue(1).kind(), PropertyValue::Kind::Integer);
    EXPECT_EQ(PropertyValue(1u).kind(), PropertyValue::Kind::Integer);
    EXPECT_EQ(PropertyValue(true).kind(), PropertyValue::Kind::Boolean);
    PropertyValue u(Unsupported{"array"});
    EXPECT_EQ(u.kind(), PropertyValue::Kind::Unsupported);
    EXPECT_FALSE(u.supported());
    EXPECT_EQ(u.canonical(), "<unsupported:array>");
}

TEST(PropertyValue, SignedAndUnsignedRenderAlike)
{
    EXPECT_EQ(PropertyValue(std::int64_t{7}).canonical(),
              PropertyValue(std::uint64_t{7}).canonical());
}

// Rendering adds no collisions within a variant.
TEST(PropertyValue, CanonicalInjective)
{
    std::mt19937_64 rng(7);
    std::set<std::int64_t> ints;
    std::set<std::string> rendered;
    for (std::int64_t v = -1000; v <= 1000; ++v)
    {
        ints.insert(v);
    }
    for (int i = 0; i < 5000; ++i)
    {
        ints.insert(static_cast<std::int64_t>(rng()));
    }
    for (auto v : ints)
    {
        rendered.insert(PropertyValue(v).canonical());
    }
    EXPECT_EQ(rendered.size(), ints.size());

    std::set<std::uint64_t> uints;
    std::set<std::string> urendered;
    for (int i = 0; i < 5000; ++i)
    {
        uints.insert(rng());
    }
    for (auto v : uints)
    {
        urendered.insert(PropertyValue(v).canonical());
    }
    EXPECT_EQ(urendered.size(), uints.size());

    std::set<std::string> strings;
    std::set<std::string> srendered;
    for (int i = 0; i < 5000; ++i)
    {
        std::string s(rng() % 6, ' ');
        for (auto& c : s)
        {
            c = static_cast<char>(rng() % 256);
        }
        strings.insert(s);
    }
    for (const auto& s : strings)
    {
        srendered.insert(PropertyValue(s).canonical());
    }
    EXPECT_EQ(srendered.size(), strings.size());

    EXPECT_NE(PropertyValue(true).canonical(), PropertyValue(false).canonical());
}
