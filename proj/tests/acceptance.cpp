// Acceptance run: one PASS/FAIL line per criterion. Criteria 1-8 reuse the
// self-check suites; 9 and 10 also drive the installed command line tool.

#include <baerdec/fixtures.hpp>
#include <baerdec/matrix_io.hpp>
#include <baerdec/selfcheck.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <string>
#include <sys/wait.h>

#ifndef BAERDEC_CLI_PATH
#error "BAERDEC_CLI_PATH must name the baerdec executable"
#endif

using namespace baerdec;

namespace {

int exit_status(const std::string& cmd) {
  const int raw = std::system((cmd + " > /dev/null 2>&1").c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string temp_path(const std::string& name) {
  const char* dir = std::getenv("TMPDIR");
  return std::string(dir ? dir : "/tmp") + "/baerdec_acceptance_" + name;
}

std::string write_pair(const std::string& name, const std::pair<ComplexMatrix, ComplexMatrix>& xy) {
  MatrixFile f;
  f.add("x", xy.first);
  f.add("y", xy.second);
  const std::string path = temp_path(name);
  write_matrix_file(path, f);
  return path;
}

selfcheck::SuiteResult canonical_with_cli(const ToleranceProfile& tol) {
  auto r = selfcheck::canonical_examples(tol);
  const std::string cli = BAERDEC_CLI_PATH;
  const int yes = exit_status(cli + " canonical --in " + write_pair("exists.txt", selfcheck::canonical_exists_pair()));
  const int no = exit_status(cli + " canonical --in " + write_pair("swap.txt", selfcheck::canonical_swap_pair()));
  r.detail += "; cli exit codes " + std::to_string(yes) + "/" + std::to_string(no) + " (want 0/1)";
  r.passed = r.passed && yes == 0 && no == 1;
  return r;
}

selfcheck::SuiteResult round_trip_and_selfcheck(const ToleranceProfile&) {
  selfcheck::SuiteResult r{10, "matrix file round trip and selfcheck command", true, "", 0.0};
  fixtures::Rng rng(0x5eed);
  std::uniform_real_distribution<double> expo(-300.0, 300.0);
  std::size_t mismatches = 0;
  for (int k = 0; k < 1000; ++k) {
    const Eigen::Index n = 1 + k % 8;
    ComplexMatrix m = fixtures::gaussian(n, n, rng);
    m(n - 1, 0) *= std::pow(10.0, expo(rng));
    const std::string text = serialize_matrix("m", m);
    const ComplexMatrix back = parse_matrix_file(text).at("m");
    if (back.rows() != n || std::memcmp(back.data(), m.data(), sizeof(cplx) * static_cast<std::size_t>(m.size())) != 0)
      ++mismatches;
  }
  const auto t0 = std::chrono::steady_clock::now();
  const int code = exit_status(std::string(BAERDEC_CLI_PATH) + " selfcheck");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.passed = mismatches == 0 && code == 0 && secs < 60.0;
  r.detail = std::to_string(mismatches) + " of 1000 round trips differ; selfcheck exit " + std::to_string(code) +
             " in " + std::to_string(secs) + " s (limit 60 s)";
  r.seconds = secs;
  return r;
}

}  // namespace

int main() {
  const ToleranceProfile tol{};
  std::vector<std::function<selfcheck::SuiteResult(const ToleranceProfile&)>> criteria = {
      selfcheck::planted_recovery,
      selfcheck::postconditions,
      selfcheck::product_law,
      selfcheck::quaternary_partition,
      selfcheck::range_projection_commutation,
      selfcheck::grid_example,
      selfcheck::halmos_wallen_recovery,
      selfcheck::wold_collapse,
      canonical_with_cli,
      round_trip_and_selfcheck,
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto r = criteria[i](tol);
    if (!r.passed) ++failed;
    std::cout << "criterion " << (i + 1) << ": " << (r.passed ? "PASS" : "FAIL") << "  " << r.name << " ("
              << r.seconds << " s) " << r.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
