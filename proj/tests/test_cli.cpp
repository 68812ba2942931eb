#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "cli/cli.hpp"
#include "mfsr/image_io.hpp"
#include "mfsr/metrics.hpp"
#include "support.hpp"

namespace mfsr {
namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    image_ = (dir_ / "img.pgm").string();
    write_image(test::smooth_scene(24, 24), image_, ImageFormat::kPgm8);
  }
  test::TempDir dir_{"cli"};
  std::string image_;
};

TEST_F(Cli, MseOfAnImageWithItselfIsZero) {
  const CliResult r = run_cli({"mse", "--a", image_, "--b", image_});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, "0\n");
}

TEST_F(Cli, UsageErrors) {
  CliResult r = run_cli({"mse", "--a", image_, "--bogus", "1"});
  EXPECT_EQ(r.code, cli::kUsage);
  EXPECT_NE(r.err.find("--a"), std::string::npos);
  EXPECT_EQ(run_cli({}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"denoise", "--in", image_, "--out", "x.pgm", "--method", "tv"}).code, cli::kUsage);
  r = run_cli({"superres", "--manifest", "m", "--out", "o.pgm", "--model", "M7"});
  EXPECT_EQ(r.code, cli::kUsage);
}

TEST_F(Cli, IoAndContractErrors) {
  EXPECT_EQ(run_cli({"mse", "--a", image_, "--b", (dir_ / "none.pgm").string()}).code, cli::kIo);
  const CliResult r = run_cli({"denoise", "--in", image_, "--out", (dir_ / "o.pgm").string(), "--method", "sd",
                         "--tau", "0.5"});
  EXPECT_EQ(r.code, cli::kContract);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(Cli, HelpListsOptions) {
  const CliResult r = run_cli({"superres", "--help"});
  EXPECT_EQ(r.code, 0);
  for (const char* s : {"--model", "--regulariser", "--alpha", "--kmax", "--sigma-b", "--flow", "α", "σ_B"}) {
    EXPECT_NE(r.out.find(s), std::string::npos) << s;
  }
}

TEST_F(Cli, DenoiseReportsErrorAndIsDeterministic) {
  const std::string a = (dir_ / "a.pfm").string();
  const std::string b = (dir_ / "b.pfm").string();
  const std::vector<std::string> common{"--in", image_, "--clean", image_, "--method", "eed",
                                        "--noise", "30", "--seed", "4", "--lambda", "20", "--kmax", "5"};
  std::vector<std::string> first{"denoise", "--out", a};
  first.insert(first.end(), common.begin(), common.end());
  std::vector<std::string> second{"denoise", "--out", b};
  second.insert(second.end(), common.begin(), common.end());
  const CliResult r1 = run_cli(first);
  const CliResult r2 = run_cli(second);
  ASSERT_EQ(r1.code, cli::kOk) << r1.err;
  EXPECT_EQ(r1.out, r2.out);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_NEAR(std::stod(r1.out), mse(read_image(a), read_image(image_)), 1e-4);
}

TEST_F(Cli, DegradeThenSuperresAndEvaluate) {
  const std::string set = (dir_ / "set").string();
  CliResult r = run_cli({"degrade", "--in", image_, "--out", set, "--frames", "3", "--seed", "2"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const std::string manifest = r.out.substr(0, r.out.find('\n'));

  const std::string out1 = (dir_ / "u1.pfm").string();
  const std::string out2 = (dir_ / "u2.pfm").string();
  r = run_cli({"superres", "--manifest", manifest, "--out", out1, "--kmax", "3"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_GT(std::stod(r.out), 0.0);
  EXPECT_EQ(run_cli({"superres", "--manifest", manifest, "--out", out2, "--kmax", "3"}).out, r.out);
  EXPECT_EQ(slurp(out1), slurp(out2));

  r = run_cli({"evaluate-models", "--manifest", manifest, "--models", "M1,M2.1", "--kmax", "2",
               "--regulariser", "eed"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(r.out.rfind("model,sigma,sigma_b,lambda,alpha,k_max,mse\nM1,", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("\nM2.1,"), std::string::npos);

  r = run_cli({"grid-search", "--manifest", manifest, "--alpha", "0.5,2", "--max-iterations", "3",
               "--regulariser", "hd"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 2);
}

TEST_F(Cli, FlowWritesAFloFile) {
  const std::string flo = (dir_ / "w.flo").string();
  const CliResult r = run_cli({"flow", "--reference", image_, "--target", image_, "--out", flo, "--preset", "text2"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const FlowField w = read_flow(flo);
  EXPECT_EQ(w.width(), 24);
  EXPECT_EQ(w.height(), 24);
}

}  // namespace
}  // namespace mfsr
