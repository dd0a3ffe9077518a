#include <gtest/gtest.h>

#include <filesystem>

#include "error.hpp"
#include "instance_io.hpp"
#include "mallows.hpp"
#include "support/oracle.hpp"

using namespace smf;
using namespace smf::testing;

namespace {

Instance generated(int n, std::uint64_t seed) {
    Rng rng(seed, 0);
    return {generate_profile(n, MallowsParams::with_identity(n, 0.5, 0.7), rng), {0.5, 0.7, seed, 0}};
}

ErrorCode error_of(std::string_view text, InstanceFormat format) {
    try {
        instance_from_string(text, format);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "accepted: " << text;
    return ErrorCode::Degenerate;
}

}  // namespace

TEST(Json, RoundTripIsByteIdentical) {
    const auto inst = generated(12, 7);
    const auto text = instance_to_json(inst);
    const auto back = instance_from_json(text);
    EXPECT_EQ(back.profile, inst.profile);
    EXPECT_EQ(back.metadata, inst.metadata);
    EXPECT_EQ(instance_to_json(back), text);
}

TEST(Json, OneBasedLayout) {
    const auto text = instance_to_json({ex5_profile(), {}});
    EXPECT_NE(text.find("\"n\": 5"), std::string::npos);
    EXPECT_NE(text.find("[2, 4, 5, 1, 3]"), std::string::npos);
    EXPECT_EQ(text.find("metadata"), std::string::npos);
}

TEST(Soc, RoundTripAndConversionAreLossless) {
    const auto inst = generated(9, 3);
    const auto soc = instance_to_soc(inst);
    const auto back = instance_from_soc(soc);
    EXPECT_EQ(back.profile, inst.profile);
    EXPECT_EQ(back.metadata, inst.metadata);
    EXPECT_EQ(instance_to_soc(back), soc);
    EXPECT_EQ(instance_to_json(instance_from_soc(instance_to_soc(instance_from_json(instance_to_json(inst))))),
              instance_to_json(inst));
}

TEST(Soc, AcceptsCommentsAndShuffledIds) {
    const char* text =
        "# a comment\n2\n\n2: 1,2\n1: 2,1\n--\n# women\n1: 1,2\n2: 2,1\n";
    const auto inst = instance_from_soc(text);
    EXPECT_EQ(inst.profile.men_prefs(), (std::vector<std::vector<int>>{{1, 0}, {0, 1}}));
    EXPECT_TRUE(inst.metadata.empty());
}

TEST(Soc, RejectsMalformedInput) {
    EXPECT_EQ(error_of("2\n1: 1,2\n2: 2,1\n", InstanceFormat::Soc), ErrorCode::Parse);
    EXPECT_EQ(error_of("2\n1: 1,2\n2: 2,1\n1: 1,2\n2: 2,1\n", InstanceFormat::Soc), ErrorCode::InvalidInput);
    EXPECT_EQ(error_of("2\n1: 1,1\n2: 2,1\n--\n1: 1,2\n2: 2,1\n", InstanceFormat::Soc), ErrorCode::InvalidInput);
    EXPECT_EQ(error_of("2\n1: 1,2\n1: 2,1\n--\n1: 1,2\n2: 2,1\n", InstanceFormat::Soc), ErrorCode::InvalidInput);
    EXPECT_EQ(error_of("2\n1 1,2\n2: 2,1\n--\n1: 1,2\n2: 2,1\n", InstanceFormat::Soc), ErrorCode::Parse);
    EXPECT_EQ(error_of("x\n", InstanceFormat::Soc), ErrorCode::Parse);
    EXPECT_EQ(error_of("2\n1: 1,2\n--\n1: 1,2\n2: 2,1\n", InstanceFormat::Soc), ErrorCode::InvalidInput);
}

TEST(Json, RejectsMalformedInput) {
    EXPECT_EQ(error_of("{", InstanceFormat::Json), ErrorCode::Parse);
    EXPECT_EQ(error_of(R"({"n":2,"men_prefs":[[1,2]],"women_prefs":[[1,2],[2,1]]})", InstanceFormat::Json),
              ErrorCode::InvalidInput);
    EXPECT_EQ(error_of(R"({"n":2,"men_prefs":[[1,3],[1,2]],"women_prefs":[[1,2],[2,1]]})", InstanceFormat::Json),
              ErrorCode::InvalidInput);
    EXPECT_EQ(error_of(R"({"n":2,"men_prefs":[[1,1],[1,2]],"women_prefs":[[1,2],[2,1]]})", InstanceFormat::Json),
              ErrorCode::InvalidInput);
    EXPECT_EQ(error_of(R"({"n":2,"men_prefs":"x","women_prefs":[[1,2],[2,1]]})", InstanceFormat::Json),
              ErrorCode::Parse);
}

TEST(Files, SaveAndLoadByExtension) {
    const auto dir = std::filesystem::temp_directory_path() / "smfair_io_test";
    std::filesystem::create_directories(dir);
    const auto inst = generated(6, 1);
    for (const char* name : {"a.json", "a.soc"}) {
        save_instance(inst, dir / name);
        const auto back = load_instance(dir / name);
        EXPECT_EQ(back.profile, inst.profile);
    }
    EXPECT_EQ(read_file(dir / "a.soc").rfind("# ", 0), 0u);
    try {
        load_instance(dir / "missing.json");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Io);
    }
    std::filesystem::remove_all(dir);
}
