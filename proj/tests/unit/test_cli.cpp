#include "doctest.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ot/error.hpp"
#include "otcli/cli.hpp"
#include "otcli/io.hpp"

using otcli::json;

namespace {

const std::string kData = OT_TEST_DATA_DIR;

std::string data(const std::string& name) { return kData + "/" + name; }

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run otsolve(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = otcli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count(const std::string& s, const std::string& needle) {
  int n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("assign with scaling") {
  const Run r = otsolve({"assign", "--cost", data("cost3.json"), "--eta", "1e-3", "--trace", "assign.csv"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["sigma"] == json({2, 1, 0}));
  CHECK(j["cost"].get<double>() == 10.0);
  CHECK(j["psi"].size() == 3);
  CHECK(j["epsilon"].get<double>() <= 1e-3);
  const std::string csv = slurp("assign.csv");
  CHECK(csv.rfind("iter,residual_inf,step_or_eps,wall_ns\n", 0) == 0);
  CHECK(count(csv, "\n") == j["steps"].get<int>() + 1);
}

TEST_CASE("assign without scaling") {
  const Run r = otsolve({"assign", "--cost", data("three_houses.json"), "--epsilon", "0.01"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["steps"].get<int>() > 550);
}

TEST_CASE("usage errors exit with 1") {
  CHECK(otsolve({}).code == 1);
  CHECK(otsolve({"transport"}).code == 1);
  CHECK(otsolve({"assign"}).code == 1);
  CHECK(otsolve({"assign", "--cost", data("cost3.json"), "--epsilon", "0.1", "--eta", "0.1"}).code == 1);
  CHECK(otsolve({"assign", "--cost", data("missing.json")}).code == 1);
  CHECK(otsolve({"semidiscrete", "--sites", data("two_sites.json"), "--density", data("square.json"),
                 "--method", "lbfgs"})
            .code == 1);
  CHECK(otsolve({"--help"}).code == 0);
}

TEST_CASE("malformed JSON reports its position") {
  const Run r = otsolve({"assign", "--cost", data("bad_syntax.json")});
  CHECK(r.code == 1);
  CHECK(r.err.find("bad_syntax.json:2:9:") != std::string::npos);

  const Run f = otsolve({"render", "--sites", data("bad_field.json"), "--density", data("square.json"),
                         "--svg", "never.svg"});
  CHECK(f.code == 1);
  CHECK(f.err.find("/sites/1/1") != std::string::npos);

  CHECK_THROWS_AS(otcli::cost_from_json(json::parse(R"({"matrix": [[1, 2], [3]]})"), "inline"),
                  ot::InputError);
  CHECK_THROWS_AS(otcli::measure_from_json(json::parse(R"({"weights": [0.5, 0.6]})"), "inline"),
                  ot::InputError);
  CHECK_THROWS_AS(otcli::density_from_json(
                      json::parse(R"({"polygon": [[0,0],[1,0],[1,1],[0,1]], "triangles": [[0,1,2]], "densities": [2]})"),
                      "inline"),
                  ot::InputError);
}

TEST_CASE("sinkhorn") {
  const Run r = otsolve({"sinkhorn", "--mu", data("mu.json"), "--nu", data("mu.json"), "--cost",
                         data("swap2.json"), "--eta", "1", "--plan-out", "plan.json", "--log", "sinkhorn.csv"});
  REQUIRE(r.code == 0);
  const json plan = json::parse(slurp("plan.json"))["plan"];
  CHECK(plan[0][0].get<double>() == doctest::Approx(0.5 / (1 + std::exp(-1.0))).epsilon(1e-12));
  CHECK(slurp("sinkhorn.csv").rfind("iter,residual_inf,step_or_eps,wall_ns\n", 0) == 0);

  const Run cut = otsolve({"sinkhorn", "--mu", data("mu3.json"), "--nu", data("mu3.json"), "--cost",
                           data("cost3.json"), "--eta", "0.1", "--max-iter", "1"});
  CHECK(cut.code == 2);
  CHECK(json::parse(cut.out)["converged"] == false);
}

TEST_CASE("semidiscrete newton with SVG") {
  const Run r = otsolve({"semidiscrete", "--method", "newton", "--sites", data("two_sites.json"),
                         "--density", data("square.json"), "--nu", data("quarter.json"), "--svg",
                         "two.svg", "--psi-out", "two_psi.json"});
  REQUIRE(r.code == 0);
  const json psi = json::parse(slurp("two_psi.json"))["psi"];
  CHECK(psi[0].get<double>() == doctest::Approx(1.0 / 16).epsilon(1e-9));
  CHECK(psi[1].get<double>() == doctest::Approx(-1.0 / 16).epsilon(1e-9));
  const std::string svg = slurp("two.svg");
  CHECK(svg.find("viewBox=\"0 0 1000 1000\"") != std::string::npos);
  CHECK(count(svg, "class=\"cell\"") == 2);
  // y axis flipped: the domain corner (0, 0) lands at the bottom left.
  CHECK(svg.find("0.000,1000.000") != std::string::npos);

  const Run render = otsolve({"render", "--sites", data("two_sites.json"), "--density",
                              data("square.json"), "--psi", "two_psi.json", "--svg", "render.svg"});
  CHECK(render.code == 0);
  CHECK(slurp("render.svg") == svg);
}

TEST_CASE("semidiscrete OP and entropic") {
  const Run op = otsolve({"semidiscrete", "--method", "op", "--delta", "1e-3", "--sites",
                          data("sites6.json"), "--density", data("square_graded.json")});
  REQUIRE(op.code == 0);
  CHECK(json::parse(op.out)["residual_inf"].get<double>() <= 1e-3);

  const Run en = otsolve({"sd-entropic", "--sites", data("sites6.json"), "--density",
                          data("square_graded.json"), "--eta", "0.05", "--tol", "1e-9"});
  REQUIRE(en.code == 0);
  CHECK(json::parse(en.out)["residual_inf"].get<double>() < 1e-9);

  CHECK(otsolve({"sd-entropic", "--sites", data("sites6.json"), "--density", data("square.json"),
                 "--eta", "1e-5"})
            .code == 1);
  CHECK(otsolve({"semidiscrete", "--method", "op", "--delta", "0.5", "--sites", data("sites6.json"),
                 "--density", data("square.json")})
            .code == 1);
}

TEST_CASE("non-convergence exits with 2") {
  const Run r = otsolve({"semidiscrete", "--sites", data("sites6.json"), "--density",
                         data("square_graded.json"), "--max-iter", "1"});
  CHECK(r.code == 2);
  CHECK(json::parse(r.out)["converged"] == false);
}

TEST_CASE("traces are byte-identical across runs") {
  for (const char* name : {"a.csv", "b.csv"}) {
    REQUIRE(otsolve({"--threads", name[0] == 'a' ? "1" : "2", "semidiscrete", "--sites",
                     data("sites6.json"), "--density", data("square_graded.json"), "--trace", name})
                .code == 0);
  }
  CHECK(slurp("a.csv") == slurp("b.csv"));

  REQUIRE(otsolve({"--timing", "semidiscrete", "--method", "op", "--sites", data("sites6.json"),
                   "--density", data("square.json"), "--trace", "timed.csv"})
              .code == 0);
  const std::string timed = slurp("timed.csv");
  CHECK(timed.substr(timed.rfind(',', timed.size() - 2) + 1) != "0\n");
}

TEST_CASE("bench matches the golden file") {
  const Run a = otsolve({"bench"});
  const Run b = otsolve({"--threads", "2", "bench"});
  REQUIRE(a.code == 0);
  CHECK(a.out == slurp(std::string(OT_GOLDEN_DIR) + "/bench.csv"));
  CHECK(a.out == b.out);
  CHECK(otsolve({"--seed", "1", "bench"}).out != a.out);
}
