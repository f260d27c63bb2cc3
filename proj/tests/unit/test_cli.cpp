#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "corpus.hpp"
#include "histomark/cli.hpp"
#include "histomark/codec.hpp"
#include "histomark/image_io.hpp"

using namespace histomark;

namespace {

const std::string kKey = "2b7e151628aed2a6abf7158809cf4f3c";

struct CliRun {
    int code;
    std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
    args.insert(args.begin(), "histomark");
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        unsetenv("HISTOMARK_SEED");
        cover = (dir / "cover.pgm").string();
        marked = (dir / "marked.pgm").string();
        save_image(testsupport::corpus_image("camera"), cover);
    }
    void TearDown() override { unsetenv("HISTOMARK_SEED"); }

    testsupport::TempDir dir;
    std::string cover, marked;
};

}  // namespace

TEST_F(CliTest, EmbedThenExtract) {
    const CliRun e = cli({"embed", cover, marked, "--key", kKey});
    ASSERT_EQ(e.code, kExitOk) << e.err;
    const auto ej = nlohmann::json::parse(e.out);
    EXPECT_EQ(ej["kind"], "embed");
    EXPECT_GE(ej["psnr_db"].get<double>(), 40.0);
    EXPECT_TRUE(std::filesystem::exists(marked + ".wmmeta"));

    const CliRun x = cli({"extract", marked, "--key", kKey});
    ASSERT_EQ(x.code, kExitOk) << x.err;
    const auto xj = nlohmann::json::parse(x.out);
    EXPECT_EQ(xj["kind"], "detection");
    EXPECT_EQ(xj["ber"].get<double>(), 0.0);
    EXPECT_TRUE(xj["detected"].get<bool>());
}

TEST_F(CliTest, KeyFileAndExplicitSidecar) {
    std::ofstream(dir / "key.txt") << kKey << "\n";
    ASSERT_EQ(cli({"embed", cover, marked, "--key-file", (dir / "key.txt").string()}).code, kExitOk);
    std::filesystem::rename(marked + ".wmmeta", dir / "meta.txt");
    EXPECT_EQ(cli({"extract", marked, "--key", kKey}).code, kExitIo);
    EXPECT_EQ(cli({"extract", marked, "--key", kKey, "--sidecar", (dir / "meta.txt").string()}).code, kExitOk);
}

TEST_F(CliTest, WrongKeyIsNotDetected) {
    ASSERT_EQ(cli({"embed", cover, marked, "--key", kKey}).code, kExitOk);
    const CliRun x = cli({"extract", marked, "--key", "ffeeddccbbaa99887766554433221100"});
    EXPECT_EQ(x.code, kExitNotDetected);
    EXPECT_FALSE(nlohmann::json::parse(x.out)["detected"].get<bool>());
}

TEST_F(CliTest, UsageAndIoErrors) {
    EXPECT_EQ(cli({}).code, kExitIo);
    EXPECT_EQ(cli({"frobnicate"}).code, kExitIo);
    EXPECT_EQ(cli({"embed", cover}).code, kExitIo);
    EXPECT_EQ(cli({"embed", cover, marked}).code, kExitIo);  // no key
    EXPECT_EQ(cli({"embed", cover, marked, "--key", "abc"}).code, kExitIo);
    EXPECT_EQ(cli({"embed", (dir / "missing.pgm").string(), marked, "--key", kKey}).code, kExitIo);
    EXPECT_EQ(cli({"embed", cover, marked, "--key", kKey, "--lambda", "1.5"}).code, kExitIo);
    EXPECT_EQ(cli({"--help"}).code, kExitOk);
}

TEST_F(CliTest, CapacityExit) {
    const std::string dark = (dir / "dark.pgm").string();
    save_image(testsupport::random_image(64, 64, 1, 0, 8), dark);
    EXPECT_EQ(cli({"embed", dark, marked, "--key", kKey}).code, kExitCapacity);
    const std::string tiny = (dir / "tiny.pgm").string();
    save_image(testsupport::random_image(16, 16, 2, 60, 200), tiny);
    EXPECT_EQ(cli({"embed", tiny, marked, "--key", kKey}).code, kExitCapacity);
}

TEST_F(CliTest, SidecarVersionExit) {
    ASSERT_EQ(cli({"embed", cover, marked, "--key", kKey}).code, kExitOk);
    std::ifstream in(marked + ".wmmeta");
    std::stringstream s;
    s << in.rdbuf();
    in.close();
    std::string text = s.str();
    text.replace(0, 9, "version=9");
    std::ofstream(marked + ".wmmeta") << text;
    EXPECT_EQ(cli({"extract", marked, "--key", kKey}).code, kExitSidecarVersion);
}

TEST_F(CliTest, AttackCommand) {
    const std::string att = (dir / "att.png").string();
    const CliRun r = cli({"attack", cover, att, "--spec", "rotate:5"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["kind"], "attack");
    EXPECT_EQ(load_image(att).width(), 512);
    EXPECT_EQ(cli({"attack", cover, att, "--spec", "rotate:500"}).code, kExitBadAttack);
    EXPECT_EQ(cli({"attack", cover, att, "--spec", "wobble:1"}).code, kExitBadAttack);
    EXPECT_EQ(cli({"attack", cover, att, "--spec", "crop:0.9"}).code, kExitBadAttack);
    EXPECT_EQ(cli({"attack", (dir / "none.pgm").string(), att, "--spec", "crop:0.1"}).code, kExitIo);
}

TEST_F(CliTest, SeedEnvironmentOverridesFlag) {
    setenv("HISTOMARK_SEED", "77", 1);
    ASSERT_EQ(cli({"embed", cover, marked, "--key", kKey, "--seed", "5"}).code, kExitOk);
    EXPECT_EQ(load_sidecar(marked + ".wmmeta").params.rng_seed, 77u);
    setenv("HISTOMARK_SEED", "x", 1);
    EXPECT_EQ(cli({"embed", cover, marked, "--key", kKey}).code, kExitIo);
}

TEST_F(CliTest, PsnrCommand) {
    const CliRun same = cli({"psnr", cover, cover});
    ASSERT_EQ(same.code, kExitOk);
    const auto j = nlohmann::json::parse(same.out);
    EXPECT_EQ(j["kind"], "quality");
    EXPECT_TRUE(j["psnr_db"].is_null());
    EXPECT_EQ(j["mse"].get<double>(), 0.0);
}

TEST_F(CliTest, BenchWritesFiles) {
    std::filesystem::create_directory(dir / "corpus");
    std::filesystem::copy_file(cover, dir / "corpus" / "camera.pgm");
    const std::string prefix = (dir / "run").string();
    const CliRun r = cli({"bench", (dir / "corpus").string(), "--out", prefix, "--key", kKey, "--no-default-suite",
                       "--attack", "luminance_scale:1.05", "--attack", "crop:0.05"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["kind"], "bench_totals");
    EXPECT_EQ(j["trials"], 2);
    EXPECT_TRUE(std::filesystem::exists(prefix + ".csv"));
    EXPECT_TRUE(std::filesystem::exists(prefix + ".json"));
    EXPECT_EQ(cli({"bench", (dir / "corpus").string(), "--out", prefix, "--key", kKey, "--attack", "bad"}).code,
              kExitBadAttack);
}
