#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  std::string cmd = std::string(FATSURF_CLI) + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
  int st = pclose(f);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string fixture(const char* name) { return std::string(FATSURF_FIXTURES) + "/" + name; }

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(cli("sample --n 4 --no-such-flag").code == 2);
  CHECK(cli("").code == 2);
  CHECK(cli("sample").code == 2);
  CHECK(cli("surface --backend magic --sample 100").code == 2);
}

TEST_CASE("domain errors exit 1") {
  CHECK(cli("sample --n 5 --trivial").code == 1);
  CHECK(cli("bounds --loops /nonexistent/file").code == 1);
}

TEST_CASE("sample is deterministic") {
  auto a = cli("sample --n 20 --count 5 --seed 3");
  auto b = cli("sample --n 20 --count 5 --seed 3");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("# fatsurf sample", 0) == 0);
}

TEST_CASE("experiment csv") {
  auto r = cli("experiment-trivalent --rank 2 --lengths 6:8:2 --samples 5 --seed 7");
  CHECK(r.code == 0);
  CHECK(r.out.find("\nlength,samples,bounds,unknown,fraction\n") != std::string::npos);
  CHECK(r.out == cli("experiment-trivalent --rank 2 --lengths 6:8:2 --samples 5 --seed 7 --workers 2").out);
}

TEST_CASE("certify the annulus fixture") {
  auto r = cli("certify --surface " + fixture("annulus_surface.json") + " --presentation " +
               fixture("annulus_presentation.json") + " --alpha 0.5 --lambda 0.1666");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"schema\"") != std::string::npos);
  CHECK(r.out.find("\"pass\": true\n}") != std::string::npos);
}

TEST_CASE("json reports carry schema, seed and params") {
  for (std::string args : {"cprime --sample 30 --density 0.1 --seed 2", "beads --sample 3000 --seed 4",
                           "thin --synthetic 20 --matched --Tprime 30 --T 32 --seed 1"}) {
    auto r = cli(args);
    CHECK_MESSAGE(r.code <= 1, args);
    for (auto key : {"\"schema\"", "\"seed\"", "\"params\"", "\"version\""})
      CHECK_MESSAGE(r.out.find(key) != std::string::npos, args);
    CHECK(r.out == cli(args).out);
  }
}
