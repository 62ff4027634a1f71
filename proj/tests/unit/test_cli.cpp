#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "nilcurve/io.hpp"

namespace {

const std::string kCli = NILCURVE_CLI_PATH;
const std::string kDir = NILCURVE_TEST_DIR;

int run(const std::string& args) {
  int status = std::system((kCli + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    write(kDir + "/h3.json", R"({"dim": 3, "brackets": [{"i": 0, "j": 1, "coeffs": {"2": "1"}}]})");
    write(kDir + "/flat.json", R"({"gram": [["1","0","0"],["0","0","1"],["0","1","0"]]})");
    write(kDir + "/broken.json", R"({"dim": 3, "brackets": [)");
  }
  std::string h3() const { return "--algebra " + kDir + "/h3.json --metric " + kDir + "/flat.json"; }
};

}  // namespace

TEST_F(Cli, ClassifyFlatH3) {
  const std::string out = kDir + "/classify.json";
  ASSERT_EQ(run("classify " + h3() + " --out " + out), 0);
  auto j = nilcurve::read_json_file(out);
  EXPECT_EQ(j["signature"], nilcurve::Json::parse("[2, 1]"));
  EXPECT_EQ(j["frame"]["U"], nilcurve::Json::parse(R"([["0", "0", "1"]])"));
  EXPECT_TRUE(j["flat"].get<bool>());
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("classify --algebra " + kDir + "/broken.json --metric " + kDir + "/flat.json"), 1);
  EXPECT_EQ(run("conjugate " + h3() + " --velocity 1,0,0 --closed-form"), 2);
  EXPECT_EQ(run("conjugate " + h3() + " --velocity 1,0"), 1);
  EXPECT_EQ(run("catalog show no_such_entry"), 1);
  EXPECT_EQ(run("verify --seed 3 --count 5"), 0);
}

TEST_F(Cli, OutputIsDeterministic) {
  const std::string a = kDir + "/geo_a.csv", b = kDir + "/geo_b.csv";
  const std::string args = "geodesic --catalog heisenberg_1 --velocity 1,1/2,1/3 --tmin -3 --tmax 3 --format csv --out ";
  ASSERT_EQ(run(args + a), 0);
  ASSERT_EQ(run(args + b), 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_NE(slurp(a).find("t,a1,a2,a3,x1,x2,x3,energy"), std::string::npos);
}

TEST_F(Cli, CatalogExportsJsonFormats) {
  const std::string out = kDir + "/entry.json";
  ASSERT_EQ(run("catalog show heisenberg_1 --out " + out), 0);
  auto j = nilcurve::read_json_file(out);
  EXPECT_NO_THROW(nilcurve::algebra_from_json(j["algebra"]));
  EXPECT_NO_THROW(nilcurve::metric_from_json(j["metrics"][0]["metric"]));
}
