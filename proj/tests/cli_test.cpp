#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "tsat/instance.h"

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string &args) {
  std::string cmd = std::string(TSAT_BIN) + " " + args + " 2>/dev/null";
  Result r;
  FILE *p = popen(cmd.c_str(), "r");
  if (!p)
    return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
    r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string &name) {
  return std::string(TSAT_DATA) + "/" + name;
}

std::string stripComments(const std::string &text, char marker) {
  std::string out, line;
  for (std::size_t i = 0; i < text.size();) {
    std::size_t j = text.find('\n', i);
    line = text.substr(i, j - i);
    if (line.empty() || line[0] != marker)
      out += line + "\n";
    i = j == std::string::npos ? text.size() : j + 1;
  }
  return out;
}

} // namespace

TEST(Cli, SolveWorkedInstance) {
  Result r = run("solve " + data("worked10.cnf"));
  EXPECT_EQ(r.code, 20);
  EXPECT_EQ(stripComments(r.out, 'c'), "UNSAT\n");

  r = run("solve " + data("worked9.cnf") + " --enumerate 10 --count");
  EXPECT_EQ(r.code, 10);
  EXPECT_EQ(stripComments(r.out, 'c'), "SAT\nmodels 1\n0010\n");

  for (const char *order : {"greedy", "density", "random --seed 4"}) {
    r = run("solve " + data("worked9.cnf") + " --enumerate 10 --order " + order);
    EXPECT_EQ(r.code, 10) << order;
    EXPECT_EQ(stripComments(r.out, 'c'), "SAT\n0010\n") << order;
  }
}

TEST(Cli, Errors) {
  EXPECT_EQ(run("solve /nonexistent.cnf").code, 1);
  EXPECT_EQ(run("solve " + data("worked9.cnf") + " --order sideways").code, 1);
  EXPECT_EQ(run("gen --n 4").code, 1);
  EXPECT_EQ(run("gen --n 4 --kernel --m 3").code, 1);
  EXPECT_EQ(run("tiling --n 3 --mode formula --block-size 2").code, 1);
  EXPECT_EQ(run("tiling --n 3 --mode simple --trials 5").code, 1);
  EXPECT_EQ(run("transition --n 30 --trials 1 --seed 1 --engine oracle").code, 1);
  EXPECT_EQ(run("count " + data("worked9.cnf") + " --method magic").code, 1);
}

TEST(Cli, GenAndCount) {
  Result r = run("gen --n 16 --m 80 --seed 7");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(tsat::instanceDigest(tsat::parseDimacs(r.out)), 8809792915176065168ull);
  EXPECT_EQ(r.out.rfind("c tsat gen", 0), 0u);

  EXPECT_EQ(stripComments(run("gen --n 3 --m 0 --seed 1").out, 'c'), "p cnf 3 0\n");

  std::string kernel = "kernel_cli_test.cnf";
  ASSERT_EQ(run("gen --n 4 --kernel -o " + kernel).code, 0);
  EXPECT_EQ(run("solve " + kernel).code, 20);

  std::string empty = "empty_cli_test.cnf";
  ASSERT_EQ(run("gen --n 3 --m 0 --seed 1 -o " + empty).code, 0);
  std::string random = "random_cli_test.cnf";
  ASSERT_EQ(run("gen --n 10 --m 35 --seed 12 -o " + random).code, 0);
  std::string reference = run("count " + random + " --method oracle").out;
  for (const char *m : {"trie", "iex", "oracle"}) {
    EXPECT_EQ(run("count " + data("worked9.cnf") + " --method " + m).out, "1\n");
    EXPECT_EQ(run("count " + empty + " --method " + m).out, "8\n");
    EXPECT_EQ(run("count " + random + " --method " + m).out, reference);
  }
}

TEST(Cli, TransitionIsDeterministic) {
  std::string args = "transition --n 8 --m-min 8 --m-max 64 --m-step 8 "
                     "--trials 20 --seed 9";
  Result a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("# tsat transition", 0), 0u);
  EXPECT_NE(a.out.find("\nn_vars,m,ratio,trials,sat_count,sat_fraction\n"),
            std::string::npos);
  std::string t = run(args + " --engine trie").out;
  EXPECT_EQ(t.substr(t.find('\n')), a.out.substr(a.out.find('\n')));
}

TEST(Cli, TilingOutputs) {
  Result r = run("tiling --n 2 --mode formula --t-max 13");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\n2,8,1,8,0.3770751953125\n"), std::string::npos);

  r = run("tiling --n 5 --mode simple");
  ASSERT_EQ(r.code, 0);
  auto pos = r.out.find("t_prime0=");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_NEAR(std::stod(r.out.substr(pos + 9)), 0.693, 0.001);

  r = run("tiling --n 3 --mode montecarlo --block-size 8 --trials 50 --seed 2 "
          "--t-max 4 --format json");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.find("\"d_value\": 1"), std::string::npos);
  EXPECT_NE(r.out.find("\"d_value\": 0"), std::string::npos);
}
