#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hhh/cli.hpp"

using namespace hhh;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("hhh_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Config unknot(const fs::path& dir) {
    Config c;
    c.strands = 1;
    c.qmax = 10;
    c.out_dir = (dir / "out").string();
    c.cache_dir = (dir / "cache").string();
    return c;
}

}  // namespace

TEST(Cli, Fnv1aKnownVectors) {
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
    EXPECT_EQ(hex64(0xabcULL), "0000000000000abc");
}

TEST(Cli, UnknotArtifact) {
    TempDir t;
    Config c = unknot(t.path);
    std::ostringstream out, err;
    ASSERT_EQ(run(c, out, err), 0) << err.str();
    fs::path art = fs::path(c.out_dir) / (word_hash(c) + ".hhh.json");
    ASSERT_TRUE(fs::exists(art));
    nlohmann::json j = nlohmann::json::parse(slurp(art));
    EXPECT_EQ(j.at("version"), kArtifactVersion);
    EXPECT_EQ(j.at("strands"), 1);
    EXPECT_EQ(j.at("writhe"), 0);
    EXPECT_EQ(j.at("entries").size(), 22u);
    for (auto& e : j.at("entries")) EXPECT_EQ(e.at(3), 1);
}

TEST(Cli, RerunIsByteIdenticalAndHitsCache) {
    TempDir t;
    Config c = unknot(t.path);
    c.strands = 2;
    c.braid = "1 1 1";
    c.qmax = 6;
    std::ostringstream o1, o2, err;
    ASSERT_EQ(run(c, o1, err), 0) << err.str();
    fs::path art = fs::path(c.out_dir) / (word_hash(c) + ".hhh.json");
    std::string first = slurp(art);
    bool hit = false;
    load_or_build_complex(c, parse_braid(c.braid, c.strands), &hit);
    EXPECT_TRUE(hit);
    ASSERT_EQ(run(c, o2, err), 0);
    EXPECT_EQ(slurp(art), first);
    EXPECT_EQ(o1.str(), o2.str());
}

TEST(Cli, UnsimplifiedRunWritesTheSameArtifact) {
    TempDir t;
    Config c = unknot(t.path);
    c.strands = 2;
    c.braid = "1 1";
    c.qmax = 5;
    std::ostringstream out, err;
    ASSERT_EQ(run(c, out, err), 0);
    fs::path art = fs::path(c.out_dir) / (word_hash(c) + ".hhh.json");
    std::string simplified = slurp(art);
    c.simplify = false;
    EXPECT_NE(complex_key(c), complex_key(unknot(t.path)));
    ASSERT_EQ(run(c, out, err), 0);
    EXPECT_EQ(slurp(art), simplified);
}

TEST(Cli, SupportArtifactAndExitCodes) {
    TempDir t;
    Config c = unknot(t.path);
    c.strands = 2;
    c.braid = "1 1 1";
    c.qmax = 8;
    c.support = true;
    std::ostringstream out, err;
    EXPECT_EQ(run(c, out, err), 0) << err.str();
    nlohmann::json s = nlohmann::json::parse(slurp(fs::path(c.out_dir) / (word_hash(c) + ".support.json")));
    EXPECT_EQ(s.at("verdict"), "PASS");

    c.braid = "3";
    std::ostringstream e2;
    EXPECT_EQ(run(c, out, e2), 1);
    EXPECT_EQ(nlohmann::json::parse(e2.str()).at("error"), "parse_error");

    c.strands = 4;
    c.braid = "1 2 3";
    std::ostringstream e3;
    EXPECT_EQ(run(c, out, e3), 1);
    EXPECT_EQ(nlohmann::json::parse(e3.str()).at("error"), "unsupported_stratum");
}

TEST(Cli, CutoffParsing) {
    Config c;
    parse_cutoff("8", c);
    EXPECT_EQ(c.qmax, 8);
    parse_cutoff("q=5,C=12,a=1", c);
    EXPECT_EQ(c.qmax, 5);
    EXPECT_EQ(c.cut.at("C"), 12);
    EXPECT_EQ(c.cut.at("a"), 1);
    EXPECT_THROW(parse_cutoff("z=3", c), CliError);
    EXPECT_THROW(parse_cutoff("q=", c), CliError);
}

TEST(Cli, NormalizationParsing) {
    Normalization n = parse_normalization("1,-1,-1");
    EXPECT_EQ(n.dX, 1);
    EXPECT_EQ(n.dh, -1);
    EXPECT_EQ(n.da, -1);
    EXPECT_THROW(parse_normalization("1,2"), CliError);
    Config a, b;
    b.normalization = Normalization{0, 0, 0};
    EXPECT_NE(word_hash(a), word_hash(b));
}

TEST(Cli, DefaultWindow) {
    Config c;
    c.strands = 2;
    EXPECT_EQ(effective_qmax(c, parse_braid("1 1 1", 2)), 15);
    c.qmax = 4;
    EXPECT_EQ(effective_qmax(c, parse_braid("1 1 1", 2)), 4);
}
