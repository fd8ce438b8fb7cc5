#include <baerdec/cli.hpp>

#include <gtest/gtest.h>

#include <fstream>

using namespace baerdec;
using json = nlohmann::ordered_json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST(Cli, DecomposeJson) {
  const auto path = temp_file("cli_diag.txt", "matrix x 2\n1 0\n0 2\n");
  const auto r = run({"decompose", "--in", path, "--property", "normal", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["command"], "decompose");
  EXPECT_EQ(j["rank"], 2);
  EXPECT_EQ(j["dim"], 2);
  for (const char* key : {"property", "projection", "residuals", "iterations", "dimension_trace", "tolerance", "seed"})
    EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Cli, DecomposeUserFunctionalWritesProjection) {
  const auto path = temp_file("cli_shift.txt", "matrix J 2\n0 1\n0 0\nmatrix D 2\n3 0\n0 1j\n");
  const std::string outp = ::testing::TempDir() + "cli_shift_out.txt";
  const auto r = run({"decompose", "--in", path, "--names", "D", "--functional", "D*D' - D'*D", "--out", outp});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_matrix_file(outp).at("p"), identity(2));
  const auto rj = run({"decompose", "--in", path, "--names", "J", "--property", "normal", "--json"});
  EXPECT_EQ(json::parse(rj.out)["rank"], 0);
}

TEST(Cli, CanonicalVerdicts) {
  auto write_pair = [](const std::string& name, const std::pair<ComplexMatrix, ComplexMatrix>& xy) {
    MatrixFile f;
    f.add("x", xy.first);
    f.add("y", xy.second);
    return temp_file(name, serialize_matrix_file(f));
  };
  const auto yes = run({"canonical", "--in", write_pair("cli_exists.txt", selfcheck::canonical_exists_pair()), "--json"});
  EXPECT_EQ(yes.code, 0) << yes.err;
  EXPECT_EQ(json::parse(yes.out)["verdict"], "EXISTS");
  const auto no = run({"canonical", "--in", write_pair("cli_swap.txt", selfcheck::canonical_swap_pair()), "--json"});
  EXPECT_EQ(no.code, 1) << no.err;
  EXPECT_EQ(json::parse(no.out)["verdict"], "NO");
}

TEST(Cli, GenerateThenDecompose) {
  const std::string path = ::testing::TempDir() + "cli_example.txt";
  ASSERT_EQ(run({"gen", "paper-example", "--out", path}).code, 0);
  const auto r = run({"decompose", "--in", path, "--property", "compatible", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["rank"], 9);
  const auto q = run({"quad", "--in", path, "--json"});
  ASSERT_EQ(q.code, 0) << q.err;
  int total = 0;
  const auto j = json::parse(q.out);
  for (const auto& c : j["cells"]) total += c["rank"].get<int>();
  EXPECT_EQ(total, 9);
}

TEST(Cli, PlantedRoundTrip) {
  const std::string path = ::testing::TempDir() + "cli_planted.txt";
  ASSERT_EQ(run({"gen", "planted", "--property", "unitary", "--dim", "7", "--seed", "3", "--out", path}).code, 0);
  const auto f = read_matrix_file(path);
  const Projection expected = Projection::from_matrix(f.at("expected"));
  const auto r = run({"decompose", "--in", path, "--names", "x", "--property", "unitary", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["rank"], expected.rank());
}

TEST(Cli, HalmosWallenExitCodes) {
  const std::string path = ::testing::TempDir() + "cli_ppi.txt";
  ASSERT_EQ(run({"gen", "ppi", "--multiplicities", "1:1,3:2", "--unitary-dim", "2", "--out", path}).code, 0);
  const auto r = run({"halmos-wallen", "--in", path, "--names", "x", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["verdict"], "ok");
  const auto bad = temp_file("cli_not_ppi.txt", "matrix x 2\n1 0\n0 2\n");
  EXPECT_EQ(run({"halmos-wallen", "--in", bad}).code, 1);
}

TEST(Cli, InputErrorsExitTwo) {
  const auto diag = temp_file("cli_noniso.txt", "matrix x 2\n1 0\n0 0.5\n");
  EXPECT_EQ(run({"wold", "--in", diag}).code, 2);
  EXPECT_EQ(run({"decompose", "--in", ::testing::TempDir() + "does_not_exist.txt", "--property", "normal"}).code, 2);
  EXPECT_EQ(run({"decompose", "--in", diag, "--property", "hyponormal"}).code, 2);
  EXPECT_EQ(run({"decompose", "--in", diag, "--names", "y", "--property", "normal"}).code, 2);
  const auto broken = temp_file("cli_broken.txt", "matrix x 2\n1 0\n");
  const auto r = run({"decompose", "--in", broken, "--property", "normal"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line"), std::string::npos);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"decompose", "--in", diag, "--property", "normal", "--tol-rank", "-1"}).code, 2);
}

TEST(Cli, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("decompose"), std::string::npos);
}

TEST(Cli, LeftProjectionAndLattice) {
  const auto path = temp_file("cli_lp.txt", "matrix a 2\n0 1\n0 0\nmatrix b 2\n0 0\n1 0\n");
  const auto r = run({"leftproj", "--in", path, "--names", "a", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["rank"], 1);
  const auto s = run({"lattice", "sup", "--in", path, "--json"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(json::parse(s.out)["rank"], 2);
  const auto i = run({"lattice", "inf", "--in", path, "--json"});
  EXPECT_EQ(json::parse(i.out)["rank"], 0);
}

TEST(Cli, SeedFromEnvironment) {
  ::setenv("BAERDEC_SEED", "12", 1);
  const auto a = run({"gen", "planted", "--property", "normal"});
  const auto b = run({"gen", "planted", "--property", "normal", "--seed", "12"});
  ::setenv("BAERDEC_SEED", "twelve", 1);
  const auto c = run({"gen", "planted", "--property", "normal"});
  ::unsetenv("BAERDEC_SEED");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(c.code, 2);
}
