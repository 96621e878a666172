#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "knotoid/cli.hpp"

using namespace knotoid;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "knotoid");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code =
      cli::run((int)argv.size(), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("worked lift example on stdin") {
  auto r = run({"lift", "--format", "paper"}, "1,-2,b,-1,2 / 1,1");
  CHECK(r.code == 0);
  CHECK(r.out == "1,-2,-3,4,2,-1,-4,3 / -1,-1,-1,-1\n");
}

TEST_CASE("bracket of the empty knotoid") {
  auto r = run({"bracket"}, " / ");
  CHECK(r.code == 0);
  CHECK(r.out == "1\n");
}

TEST_CASE("parse canonicalizes and round trips") {
  auto r = run({"parse"}, "2,-1,b,-2,1 / 1,1");
  CHECK(r.code == 0);
  CHECK(r.out == "1,-2,b,-1,2 / 1,1\n");
  auto again = run({"parse"}, r.out);
  CHECK(again.out == r.out);

  auto j = run({"parse", "--format", "json"}, "1,-2,b,-1,2 / 1,1");
  CHECK(j.code == 0);
  auto back = run({"parse"}, j.out);
  CHECK(back.out == r.out);
}

TEST_CASE("validate and error reporting") {
  CHECK(run({"validate"}, "1,-2,b,-1,2 / 1,1").code == 0);
  auto bad = run({"validate"}, "1,2 / 1");
  CHECK(bad.code == 1);
  CHECK(bad.err.find("InvalidCode") != std::string::npos);
  CHECK(run({"validate"}, "totally wrong").code == 1);
  CHECK(run({"no-such-verb"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("involution verbs") {
  const std::string g = "1,-2,b,-1,2 / 1,1";
  CHECK(run({"reverse"}, g).out == g + "\n");  // this code is reversible
  CHECK(run({"mirror"}, g).out == "-1,2,b,1,-2 / -1,-1\n");
  auto sym = run({"symmetric"}, g).out;
  auto rot = run({"rotate"}, g).out;
  CHECK(run({"symmetric"}, sym).out == g + "\n");
  CHECK(run({"rotate"}, rot).out == g + "\n");
}

TEST_CASE("product of two knotoids") {
  auto r = run({"product"}, "1,-2,-1,2 / 1,1\n1,-1 / -1\n");
  CHECK(r.code == 0);
  CHECK(r.out == "1,-2,-1,2,3,-3 / 1,1,-1\n");
  CHECK(run({"product"}, "1,-1 / -1\n").code == 1);
}

TEST_CASE("diagram pipeline: gauss, ggc, closures") {
  const std::string code = "-1,1,2,-3,-2,3 / 1,1,1";
  auto r = run({"gauss"}, code);  // code in, realized, read back
  CHECK(r.out == code + "\n");

  auto g = run({"ggc"}, code);
  CHECK(g.code == 0);
  auto stripped = run({"parse"}, g.out);  // still parses as a gGC
  CHECK(stripped.code == 0);

  auto under = run({"close-under"}, code);
  auto over = run({"close-over"}, code);
  CHECK(under.code == 0);
  CHECK(over.code == 0);
  CHECK(under.out != over.out);
  CHECK(run({"bracket", "--kind", "knot"}, over.out).out == "1\n");
}

TEST_CASE("alpha cut of the trefoil") {
  const std::string trefoil = "1,-2,3,-1,2,-3 / 1,1,1";
  auto r = run({"alpha", "--edge", "2"}, trefoil);
  CHECK(r.code == 0);
  auto b = run({"bracket", "--kind", "knot"}, trefoil);
  CHECK(run({"close-under"}, r.out).out.size() > 0);
}

TEST_CASE("winding and twist embedding from a diagram") {
  auto r = run({"winding"}, "1,-2,-1,2 / 1,1");
  CHECK(r.code == 0);
  CHECK(std::stoi(r.out) % 2 != 0);

  auto d = run({"double", "--cut", "auto"}, "1,-2,-1,2 / 1,1");
  CHECK(d.code == 0);
  CHECK(d.out.find("\"radial_ref\"") != std::string::npos);

  auto t = run({"twist-embed", "--turns", "0"}, "1,-2,-1,2 / 1,1");
  CHECK(t.code == 0);
}

TEST_CASE("bracket guard and certificate") {
  const std::string trefoil = "1,-2,3,-1,2,-3 / 1,1,1";
  auto guarded =
      run({"bracket", "--kind", "knot", "--max-crossings", "2"}, trefoil);
  CHECK(guarded.code == 1);
  CHECK(guarded.err.find("TooLarge") != std::string::npos);
  CHECK(run({"certify", "--kind", "knot"}, trefoil).out == "nontrivial\n");
  CHECK(run({"certify"}, " / ").out == "inconclusive\n");
}
