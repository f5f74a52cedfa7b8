#include "util.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <sstream>

using namespace regsat;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  std::string cmd = std::string(REGSAT_BIN) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string data(const std::string& f) { return std::string(REGSAT_DATA) + "/" + f; }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("sat-ltl") {
  Run r = cli("sat-ltl \"freeze X eq\" --witness");
  CHECK(r.code == 0);
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "Sat");
  DataWord w = parse_word(ls[1]);
  CHECK(w.size() == 2);
  CHECK(w.at(1).datum == w.at(2).datum);

  CHECK(cli("sat-ltl \"freeze (eq & !eq)\"").code == 1);
  CHECK(cli("sat-ltl --ordered \"freeze (lt | gt)\"").out == "Unsat\n");
  Run g = cli("sat-ltl \"freeze X gt\" --witness");
  CHECK(g.code == 0);
  REQUIRE(lines(g.out).size() == 2);
  CHECK(eval_ltl(parse_word(lines(g.out)[1]), parse_ltl("freeze X gt")));
  CHECK(cli("sat-ltl \"!Aprev a\"").code == 2);
  CHECK(cli("sat-ltl \"U(a\"").code == 2);
  CHECK(cli("sat-ltl \"G(!a | freeze F(b & eq))\" --max-steps 1").code == 3);
}

TEST_CASE("sat-xpath") {
  CHECK(cli("sat-xpath -f " + data("dup.xp")).code == 0);
  CHECK(cli("sat-xpath -f " + data("dup.xp") + " --key a").code == 1);
  CHECK(cli("sat-xpath true --dtd " + data("loop.dtd")).code == 1);
  CHECK(cli("sat-xpath \"<down/right*[a]>\" --dtd " + data("nob.dtd")).code == 1);
  Run k = cli("sat-xpath \"<down[a] != down[a]>\" --dtd " + data("pairs.dtd") + " --key a --witness");
  CHECK(k.code == 0);
  auto ls = lines(k.out);
  REQUIRE(ls.size() == 2);
  DataTree t = parse_tree(ls[1]);
  CHECK(conforms(parse_dtd("dtd { root: r; r -> a a; a -> eps; }"), t));
  CHECK(satisfies(t, key_formula("a")));
  CHECK(cli("sat-xpath \"<down =\"").code == 2);
  CHECK(cli("sat-xpath a --dtd /nonexistent.dtd").code == 2);
  // two keys over two labels: the search outgrows the budget
  CHECK(cli("sat-xpath \"<down[a]> and <down[b]>\" --key a --key b --timeout 1").code == 3);
}

TEST_CASE("eval and run") {
  CHECK(cli("eval-ltl \"freeze X eq\" --word \"a@1 b@1\"").out == "true\n");
  CHECK(cli("eval-ltl \"freeze X eq\" --word \"a@1 b@2\"").code == 1);
  CHECK(cli("eval-ltl \"G(!a | freeze F(b & eq))\" --input " + data("word.txt")).code == 0);
  CHECK(cli("eval-xpath \"<down[b] = down[b]>\" --tree \"a@1(b@2 b@2)\"").code == 0);
  CHECK(cli("eval-xpath a --tree \"a@0()\"").code == 2);
  CHECK(cli("run --automaton " + data("example54.atra") + " --tree \"a@0(a@1(a@7) a@7)\"").out == "accepted\n");
  CHECK(cli("run --automaton " + data("example54.atra") + " --tree \"a@0(a@1(a@7) a@8)\"").code == 1);
  CHECK(cli("run --automaton " + data("neq.ara") + " --word \"a@1\"").code == 1);
}

TEST_CASE("empty") {
  CHECK(cli("empty --automaton " + data("neq.ara")).out == "Empty\n");
  CHECK(cli("empty --automaton " + data("neq.ara")).code == 1);
  Run e = cli("empty --automaton " + data("example54.atra") + " --witness");
  CHECK(e.code == 0);
  auto ls = lines(e.out);
  REQUIRE(ls.size() == 2);
  DataTree t = parse_tree(ls[1]);
  CHECK(t.nodes[t.node_at({1, 1})].datum == t.nodes[t.node_at({2})].datum);
  CHECK(cli("empty").code == 2);
  CHECK(cli("empty --automaton /nonexistent.ara").code == 2);
}

TEST_CASE("translate") {
  Run t = cli("translate-ltl \"freeze X eq\"");
  CHECK(t.code == 0);
  Automaton a = parse_automaton(t.out);
  CHECK(ara_membership(a, parse_word("a@1 a@1")));
  CHECK_FALSE(ara_membership(a, parse_word("a@1 a@2")));
  Run x = cli("translate-xpath \"<down[a]>\"");
  CHECK(x.code == 0);
  Automaton xa = parse_automaton(x.out);
  CHECK(atra_membership(xa, parse_tree("a@1(a@2)")));
  CHECK_FALSE(atra_membership(xa, parse_tree("a@1")));
}

TEST_CASE("crosscheck") {
  Run r = cli("crosscheck ltl --seed 1 --count 10");
  CHECK(r.code == 0);
  CHECK(r.out.find("result: PASS") != std::string::npos);
  CHECK(r.out == cli("crosscheck ltl --seed 1 --count 10").out);
  CHECK(cli("crosscheck rdc-atra --count 2").code == 0);
  CHECK(cli("crosscheck embedding --count 100").code == 0);
  CHECK(cli("crosscheck bogus").code == 2);
  CHECK(cli("crosscheck ltl --max-nodes 0").code == 2);
}

TEST_CASE("usage errors") {
  CHECK(cli("").code == 2);
  CHECK(cli("sat-ltl a eval-ltl").code == 2);
  CHECK(cli("frobnicate").code == 2);
  CHECK(cli("--help").code == 0);
}

}  // TEST_SUITE
