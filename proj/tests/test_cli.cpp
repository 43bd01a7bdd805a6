#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  const fs::path d = fs::temp_directory_path() / "fracalc_test_cli";
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args, const std::string& env = "") {
  const fs::path out = scratch_dir() / "stdout.txt";
  const fs::path err = scratch_dir() / "stderr.txt";
  const std::string cmd = env + " '" FRACALC_CLI "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("kernel") {
  const Run r = run("kernel --which e1 --points 1");
  CHECK(r.code == 0);
  CHECK(r.out == "x,value\n1,0.21938393439552\n");
  const Run q = run("kernel --which q --points 0,1,2");
  CHECK(q.out == "x,value\n0,0\n1,1.48120380451529\n2,2.49610789982595\n");
  const Run p = run("kernel --which p --s 0.5 --points 1");
  CHECK(p.out == "x,value\n1,0.842700792949715\n");
  const Run s = run("kernel --which s --points 1");
  CHECK(s.out == "x,value\n1,1.03292094757526\n");
  CHECK(run("kernel --which zeta --points 1").code == 2);
  CHECK(run("kernel --which e1 --points 1,abc").code == 2);
  CHECK(run("kernel --which e1 --points -1").code == 2);
}

TEST_CASE("apply j matches the constant closed form") {
  const Run r = run("apply --op j --side left --alpha 1 --spec const:1 --interval 0,2 --n-out 5");
  REQUIRE(r.code == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"x", "value", "converged", "err_estimate"});
  CHECK(rows[1][1] == "0");
  CHECK(rows[3][0] == "1");
  CHECK(std::fabs(std::stod(rows[3][1]) - 0.8515044932223282) < 1e-10);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][2] == "true");
}

TEST_CASE("apply s and d") {
  const Run s = run("apply --op s --side right --alpha 0.5 --spec const:1 --interval 0,2 --n-out 3");
  REQUIRE(s.code == 0);
  const auto rows = csv(s.out);
  CHECK(std::fabs(std::stod(rows[2][1]) - 1.248053949912972) < 1e-9);
  CHECK(rows[3][1] == "0");

  const Run d = run("apply --op d --side left --alpha 0.3 --spec powshift-left:1 --n-out 11");
  REQUIRE(d.code == 0);
  const Run j = run("apply --op j --side left --alpha 0.3 --spec const:1 --n-out 11");
  CHECK(d.out == j.out);

  const Run bad = run("apply --op d --side left --alpha 0.3 --spec const:1 --n-out 11");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("nonzero") != std::string::npos);
}

TEST_CASE("apply d on a grid file") {
  const fs::path grid = scratch_dir() / "square.csv";
  {
    std::ofstream g(grid);
    g.precision(17);
    g << "x,value\n";
    for (int i = 0; i <= 512; ++i) g << i / 512.0 << ',' << (i / 512.0) * (i / 512.0) << '\n';
  }
  const Run r = run("apply --op d --side left --alpha 0.5 --spec grid:" + grid.string() + " --interval 0,1");
  REQUIRE(r.code == 0);
  const auto rows = csv(r.out);
  CHECK(rows.size() == 514);
  // D x^2 = J 2x; at x = 1 (alpha = 0.5) compare with the AC route.
  const Run ac = run("apply --op d --side left --alpha 0.5 --spec poly:0,0,1 --n-out 3");
  CHECK(std::fabs(std::stod(rows[257][1]) - std::stod(csv(ac.out)[2][1])) < 1e-4);
  CHECK(run("apply --op d --alpha 0.5 --spec grid:" + grid.string() + " --interval 0,2").code == 2);
}

TEST_CASE("validation errors exit 2") {
  CHECK(run("apply --op j --alpha 0 --spec const:1").code == 2);
  CHECK(run("apply --op j --alpha 1 --spec const:1 --n-out 1").code == 2);
  CHECK(run("apply --op q --alpha 1 --spec const:1").code == 2);
  CHECK(run("apply --op j --side up --spec const:1").code == 2);
  CHECK(run("apply --op j --spec const:1 --interval 1,0").code == 2);
  const Run bad_spec = run("apply --op j --spec powshift-left:x");
  CHECK(bad_spec.code == 2);
  CHECK(bad_spec.err.find("position 14") != std::string::npos);
  const std::string missing = (scratch_dir() / "nowhere.csv").string();
  const Run no_file = run("apply --op j --spec grid:" + missing);
  CHECK(no_file.code == 2);
  CHECK(no_file.err.find(missing) != std::string::npos);
  CHECK(run("verify --suite everything").code == 2);
  CHECK(run("verify --alpha-list 0.2,-1").code == 2);
  CHECK(run("sweep --spec sin:3 --alpha-list 0.1 --norm l2").code == 2);
  CHECK(run("bogus").code == 2);
  CHECK(run("kernel --which e1 --points 1", "FRACALC_MAX_WORK=lots").code == 2);
}

TEST_CASE("max work override reaches the operators") {
  const Run r = run("apply --op j --alpha 0.01 --spec sin:200 --n-out 3", "FRACALC_MAX_WORK=8");
  CHECK(r.code == 0);
  CHECK(r.out.find("false") != std::string::npos);
}

TEST_CASE("verify suite rows") {
  const Run r = run("verify --suite laplace");
  CHECK(r.code == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == std::vector<std::string>{"check", "side", "alpha", "value", "expected", "tolerance", "pass"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].size() == 7);
    CHECK(rows[i][6] == "true");
  }
  CHECK(rows[4][0] == "laplace_s_lambda=e-1");
  CHECK(rows[4][5] == "1e-05");
}

TEST_CASE("verify output is deterministic") {
  const Run a = run("verify --suite derivatives --alpha-list 0.5");
  const Run b = run("verify --suite derivatives --alpha-list 0.5");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const fs::path file = scratch_dir() / "verify.csv";
  CHECK(run("verify --suite derivatives --alpha-list 0.5 --out " + file.string()).code == 0);
  CHECK(slurp(file) == a.out);
}

TEST_CASE("sweep") {
  const Run r = run("sweep --spec sin:3 --alpha-list 0.2,0.1 --interval 0,1");
  REQUIRE(r.code == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == std::vector<std::string>{"alpha", "side", "j_minus_f_l1", "s_minus_running_l1"});
  CHECK(rows[1][1] == "left");
  CHECK(rows[2][1] == "right");
  CHECK(std::stod(rows[3][2]) < std::stod(rows[1][2]));
  CHECK(std::stod(rows[3][3]) < std::stod(rows[1][3]));
}

TEST_CASE("relax") {
  const fs::path problem = scratch_dir() / "problem.json";
  std::ofstream(problem) << R"({"alpha": 0.5, "lambda": 0.5, "rhs": {"type": "affine", "g": "sin:1", "c": -0.2},
                               "lipschitz_cf": 0.2, "grid_n": 64, "tol": 1e-10})";
  const fs::path diag = scratch_dir() / "diag.json";
  const fs::path sol = scratch_dir() / "sol.csv";
  const Run r = run("relax --problem " + problem.string() + " --u0 const:1 --out " + sol.string() +
                    " --diagnostics " + diag.string());
  REQUIRE(r.code == 0);
  const nlohmann::json d = nlohmann::json::parse(slurp(diag));
  CHECK(d["converged"] == true);
  CHECK(d["warning"] == false);
  CHECK(d["kappa"].get<double>() < 1.0);
  const auto rows = csv(slurp(sol));
  CHECK(rows.size() == 66);
  CHECK(rows[0] == std::vector<std::string>{"t", "u"});
  CHECK(rows[1][1] == "0");

  const Run to_stderr = run("relax --problem " + problem.string());
  CHECK(to_stderr.code == 0);
  CHECK(to_stderr.err.find("\"iterations\"") != std::string::npos);

  CHECK(run("relax --problem " + problem.string() + " --u0 maybe").code == 2);
  const std::string missing = (scratch_dir() / "absent.json").string();
  const Run m = run("relax --problem " + missing);
  CHECK(m.code == 2);
  CHECK(m.err.find(missing) != std::string::npos);
}
