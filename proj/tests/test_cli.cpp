#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "approxsym/harness.hpp"
#include "approxsym/metrics.hpp"
#include "approxsym/report.hpp"
#include "approxsym/text_io.hpp"

#ifndef APPROXSYM_TOOL
#error "APPROXSYM_TOOL must point at the built command-line tool"
#endif

using namespace approxsym;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(APPROXSYM_TOOL) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("approxsym_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& p) { return read_text_file(p); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit 2") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("gen --model er --n 5 --p 0.1 --seed 1 --out /dev/null --bogus").code == 2);
    CHECK(run("gen --model zz --out /dev/null").code == 2);
    CHECK(run("gen --model er --n 5 --out /dev/null").code == 2);         // missing p
    CHECK(run("gen --model er --n 5 --p 0.1 --m 2 --out /dev/null").code == 2);  // m not an ER parameter
    CHECK(run("--help").code == 0);
  }

  TEST_CASE("gen") {
    TempDir d;
    const Run er = run("gen --model er --n 20 --p 0.3 --seed 7 --out " + (d / "er.txt"));
    CHECK(er.code == 0);
    const Graph g = read_graph(d / "er.txt");
    CHECK(g.n() == 20);
    CHECK(g.edge_count() <= 190);
    CHECK(slurp(d / "er.txt").rfind("20 " + std::to_string(g.edge_count()) + "\n", 0) == 0);
    CHECK(run("gen --model er --n 20 --p 0.3 --seed 7 --out " + (d / "er2.txt")).code == 0);
    CHECK(slurp(d / "er.txt") == slurp(d / "er2.txt"));

    CHECK(run("gen --model lrm --n 200 --p 0.15 --q 0.25 --seed 1 --out " + (d / "l.txt")).code == 0);
    const Graph l = read_graph(d / "l.txt");
    const Permutation lr = read_permutation(d / "l.txt.lr");
    CHECK(symmetry_coefficient(l, lr) == 0.0);

    CHECK(run("gen --model sbm --sizes 3,3 --probs [[1,0],[0,1]] --seed 2 --out " + (d / "s.txt")).code == 0);
    CHECK(read_graph(d / "s.txt").edge_count() == 6);
    CHECK(run("gen --model grid --dims 5,4 --out " + (d / "g.txt")).code == 0);
    CHECK(read_graph(d / "g.txt").edge_count() == 31);
    CHECK(run("gen --model lrm-distorted --n 40 --p 0.2 --q 0.3 --r 3 --t 6 --seed 4 --out " + (d / "dl.txt")).code == 0);
    const Graph dl = read_graph(d / "dl.txt");
    CHECK(epsilon(dl, read_permutation(d / "dl.txt.aut")) == 0);
    CHECK(run("gen --model lrm-rewired --n 40 --p 0.2 --q 0.3 --k 5 --seed 4 --out " + (d / "rw.txt")).code == 0);
    CHECK(epsilon(read_graph(d / "rw.txt"), read_permutation(d / "rw.txt.lr")) <= 10);

    CHECK(run("gen --model er --n 20 --p 1.5 --seed 7 --out " + (d / "bad.txt")).code == 1);
    CHECK(run("gen --model lrm --n 21 --p 0.1 --q 0.1 --out " + (d / "bad.txt")).code == 1);
  }

  TEST_CASE("solve") {
    TempDir d;
    REQUIRE(run("gen --model lrm --n 60 --p 0.2 --q 0.3 --seed 3 --out " + (d / "l.txt")).code == 0);
    const Run q = run("solve --method qsa --graph " + (d / "l.txt") + " --init lr-file:" + (d / "l.txt.lr") +
                      " --report " + (d / "q.json"));
    CHECK(q.code == 0);
    CHECK(q.out == "qsa 0 0 0\n");
    const SolverReport rep = report_from_json(slurp(d / "q.json"));
    CHECK(rep.S == 0.0);
    CHECK(read_permutation(d / "q.json.perm") == rep.final);
    CHECK(rep.wall_ms == 0);

    const Run a = run("solve --method afp --graph " + (d / "l.txt") + " --max-fp 30 --budget 40000 --seed 5 --report " +
                      (d / "a.json") + " --perm " + (d / "a.perm"));
    CHECK(a.code == 0);
    const SolverReport ar = report_from_json(slurp(d / "a.json"));
    CHECK(ar.fixed_point_count <= 30);
    CHECK(read_permutation(d / "a.perm") == ar.final);
    CHECK(run("solve --method afp --graph " + (d / "l.txt") + " --max-fp 30 --budget 40000 --seed 5 --report " +
              (d / "a2.json") + " --perm " + (d / "a2.perm")).out == a.out);
    CHECK(slurp(d / "a.json") == slurp(d / "a2.json"));

    const Run rs = run("solve --method qsa --graph " + (d / "l.txt") + " --init reshuffle:lr-file:" + (d / "l.txt.lr") +
                       ":l=5:seed=3 --report " + (d / "r.json"));
    CHECK(rs.code == 0);
    CHECK(read_permutation(d / "r.json.perm").size() == 60);

    CHECK(run("solve --method qsa --graph " + (d / "missing.txt") + " --report " + (d / "x.json")).code == 1);
    write_text_file(d / "broken.txt", "3 1\n2 1\n");
    CHECK(run("solve --method qsa --graph " + (d / "broken.txt") + " --report " + (d / "x.json")).code == 1);
    CHECK(run("solve --method qsa --graph " + (d / "l.txt") + " --budget 10 --report " + (d / "x.json")).code == 2);
    CHECK(run("solve --method afp --graph " + (d / "l.txt") + " --blend 0.2 --report " + (d / "x.json")).code == 2);
    CHECK(run("solve --method qsa --graph " + (d / "l.txt") + " --init nonsense --report " + (d / "x.json")).code == 2);
  }

  TEST_CASE("experiment and compare") {
    TempDir d;
    write_text_file(d / "cfg.json", R"({
      "model": "er", "params": {"n": 14}, "sweep": {"p": [0.2, 0.4]},
      "methods": {"afp": {"budget": 2000}, "qsa": {}},
      "repetitions": 3, "base_seed": 5
    })");
    CHECK(run("experiment --config " + (d / "cfg.json") + " --out " + (d / "a.csv")).code == 0);
    CHECK(run("experiment --config " + (d / "cfg.json") + " --out " + (d / "b.csv") + " --workers 2").code == 0);
    const std::string csv = slurp(d / "a.csv");
    CHECK(csv == slurp(d / "b.csv"));
    CHECK(records_from_csv(csv).size() == 12);

    const Run c1 = run("compare --csv " + (d / "a.csv"));
    CHECK(c1.code == 0);
    CHECK(c1.out.rfind("model,params,x_method,y_method", 0) == 0);
    CHECK(run("compare --csv " + (d / "a.csv")).out == c1.out);

    write_text_file(d / "min.json", R"({"model":"ba","params":{"n":12,"m":2},"methods":{"qsa":{}}})");
    CHECK(run("experiment --config " + (d / "min.json") + " --out " + (d / "min.csv")).code == 0);
    CHECK(records_from_csv(slurp(d / "min.csv")).size() == 1);

    write_text_file(d / "bad.json", R"({"model":"er","params":{"n":5,"p":0.1},"methods":{"qsa":{}},"extra":true})");
    CHECK(run("experiment --config " + (d / "bad.json") + " --out " + (d / "bad.csv")).code == 2);

    const std::string header = std::string(kCsvHeader) + "\n";
    write_text_file(d / "hand.csv", header + "er,c,afp,1,0,1,0,0,-1,0,0,0\ner,c,qsa,1,0,0,0,0,-1,0,0,0\n" +
                                        "er,c,afp,2,1,2,0,0,-1,0,0,0\ner,c,qsa,2,1,0,0,0,-1,0,0,0\n" +
                                        "er,c,afp,3,2,3,0,0,-1,0,0,0\ner,c,qsa,3,2,0,0,0,-1,0,0,0\n");
    const Run hand = run("compare --csv " + (d / "hand.csv"));
    CHECK(hand.code == 0);
    CHECK(hand.out.find(",3,2,0,3.464101615,") != std::string::npos);
    CHECK(hand.out.find(",2,0,2,0.05,") != std::string::npos);

    write_text_file(d / "unpaired.csv", header + "er,c,afp,1,0,1,0,0,-1,0,0,0\ner,c,afp,2,1,2,0,0,-1,0,0,0\n" +
                                            "er,c,qsa,2,1,0,0,0,-1,0,0,0\n");
    CHECK(run("compare --csv " + (d / "unpaired.csv")).code == 1);
  }

  TEST_CASE("brain") {
    TempDir d;
    // Mirror-symmetric 6-region matrix: regions i and i + 3 are mirrors.
    write_text_file(d / "m.csv",
                    "0,5,1,4,0.5,0.2\n5,0,2,0.5,3,0.1\n1,2,0,0.2,0.1,6\n4,0.5,0.2,0,5,1\n0.5,3,0.1,5,0,2\n0.2,0.1,6,1,2,0\n");
    const Run b = run("brain --matrix " + (d / "m.csv") + " --density 0.45 --method qsa --init lr --graph-out " + (d / "g.txt"));
    CHECK(b.code == 0);
    CHECK(b.out.rfind("method,runs,S_final,S_lr,S_diff,epsilon,fixed_points,hd_to_lr\n", 0) == 0);
    CHECK(b.out.find("qsa,1,0,0,0,0,") != std::string::npos);
    // round(0.45 * 15) = 7 strongest pairs; the mirrored ties at weight 2 both make it.
    CHECK(read_graph(d / "g.txt").edge_count() == 7);
    CHECK(run("brain --matrix " + (d / "m.csv") + " --density 0.4 --method qsa --budget 500").code == 2);
    const Run both_ok = run("brain --matrix " + (d / "m.csv") + " --density 0.45 --runs 3 --seed 2 --budget 500");
    CHECK(both_ok.code == 0);
    CHECK(run("brain --matrix " + (d / "m.csv") + " --density 0.45 --runs 3 --seed 2 --budget 500").out == both_ok.out);
    write_text_file(d / "ragged.csv", "0 1\n1\n");
    CHECK(run("brain --matrix " + (d / "ragged.csv")).code == 1);
    write_text_file(d / "odd.csv", "0 1 1\n1 0 1\n1 1 0\n");
    CHECK(run("brain --matrix " + (d / "odd.csv")).code == 1);
  }
}
