#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "mapwss/cli.hpp"
#include "mapwss/json_io.hpp"

using namespace mapwss;
using namespace mapwss::test;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("mapwss_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

const char* kChain = R"({"variables": [{"name": "a", "card": 2}, {"name": "b", "card": 2}, {"name": "c", "card": 2}],
 "potentials": [{"scope": ["a", "b"], "table": [1, 0, 0, 1]},
                {"scope": ["b", "c"], "table": [0, 1, 1, 0]},
                {"scope": ["a"], "table": [0, 0.5]}]})";

const char* kFrustrated = R"({"variables": [{"name": "a", "card": 2}, {"name": "b", "card": 2}, {"name": "c", "card": 2}, {"name": "d", "card": 2}],
 "potentials": [{"scope": ["a", "b"], "table": [0, 1, 1, 0]},
                {"scope": ["b", "c"], "table": [1, 0, 0, 1]},
                {"scope": ["c", "d"], "table": [1, 0, 0, 1]},
                {"scope": ["d", "a"], "table": [1, 0, 0, 1]}]})";

}  // namespace

TEST_CASE("model JSON round trip and validation") {
  const Model m = model_from_json(parse_json(kChain));
  CHECK(m.num_variables() == 3);
  const Model again = model_from_json(model_to_json(m));
  for_each_config(3, [&](const std::vector<int>& x) { CHECK(again.energy(x) == m.energy(x)); });
  CHECK_THROWS_AS(parse_json("{"), Error);
  CHECK_THROWS_AS(model_from_json(parse_json(R"({"variables": [], "potentials": [], "extra": 1})")), Error);
  CHECK_THROWS_AS(model_from_json(parse_json(R"({"variables": [{"name": "a"}], "potentials": [{"scope": ["z"], "table": [1, 2]}]})")),
                  Error);
}

TEST_CASE("NMRF JSON round trip") {
  Rng rng(113);
  for (int trial = 0; trial < 20; ++trial) {
    const Model m = random_tractable_model(rng, 6);
    const Nmrf n = compile_binary_pairwise(m, default_enode_plan(signed_view(m))).nmrf;
    const Nmrf back = nmrf_from_json(nmrf_to_json(n));
    REQUIRE(back.nodes.size() == n.nodes.size());
    CHECK(back.adjacency.edges() == n.adjacency.edges());
    CHECK(back.pruned.size() == n.pruned.size());
    CHECK(back.constant == doctest::Approx(n.constant));
    for (std::size_t i = 0; i < n.nodes.size(); ++i) {
      CHECK(back.nodes[i].assignment == n.nodes[i].assignment);
      CHECK(back.nodes[i].weight == doctest::Approx(n.nodes[i].weight));
    }
  }
}

TEST_CASE("cli subcommands and exit codes") {
  const std::string chain = temp_file("chain.json", kChain);
  const std::string frustrated = temp_file("frustrated.json", kFrustrated);

  auto r = cli({"validate", chain});
  CHECK(r.code == kExitOk);
  CHECK(parse_json(r.out)["valid"] == true);

  r = cli({"classify", chain});
  CHECK(r.code == kExitOk);
  CHECK(parse_json(r.out)["tractable"] == true);

  r = cli({"classify", frustrated});
  CHECK(r.code == kExitNegative);
  CHECK(parse_json(r.out)["tractable"] == false);

  r = cli({"solve", chain, "--oracle-check"});
  CHECK(r.code == kExitOk);
  const Json sol = parse_json(r.out);
  CHECK(sol["oracle"]["agree"] == true);
  CHECK(sol["objective"].get<double>() == doctest::Approx(2.5));

  r = cli({"solve", frustrated, "--method", "blocks"});
  CHECK(r.code == kExitNegative);
  CHECK(parse_json(r.out)["error"] == "IntractableTopology");

  r = cli({"solve", frustrated, "--method", "bnb", "--oracle-check"});
  CHECK(r.code == kExitOk);

  r = cli({"compile", frustrated});
  CHECK(r.code == kExitOk);
  const std::string nmrf = temp_file("nmrf.json", r.out);
  r = cli({"perfect", nmrf});
  CHECK(r.code == kExitNegative);
  CHECK(parse_json(r.out)["perfect"] == false);

  r = cli({"compile", chain});
  const std::string chain_nmrf = temp_file("chain_nmrf.json", r.out);
  CHECK(cli({"perfect", chain_nmrf}).code == kExitOk);
  CHECK(cli({"perfect", chain_nmrf, "--max-nodes", "2"}).code == kExitTooLarge);

  const std::string order4 = temp_file("order4.json", R"({"scope": ["a", "b", "c", "d"],
    "table": [2, 1, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0]})");
  r = cli({"submodular", order4});
  CHECK(r.code == kExitNegative);
  const Json sub = parse_json(r.out);
  CHECK(sub["supermodular"] == true);
  CHECK(sub["alpha"].get<double>() == -2.0);
  CHECK(sub["feasible"] == false);

  const std::string product = temp_file("product.json", R"({"scope": ["a", "b", "c"], "table": [0, 0, 0, 0, 0, 0, 0, 1]})");
  r = cli({"submodular", product});
  CHECK(r.code == kExitOk);
  CHECK(parse_json(r.out)["branch"] == "ones");

  CHECK(cli({"validate", "/nonexistent/file.json"}).code == kExitInput);
  CHECK(cli({"nonsense"}).code == kExitInput);
  CHECK(cli({"solve", chain, "--method", "magic"}).code == kExitInput);
  CHECK(cli({}).code == kExitInput);
}

TEST_CASE("bench is deterministic for a seed") {
  const std::vector<std::string> args{"bench", "--family", "random-tractable", "--size", "7", "--count", "15", "--seed", "5",
                                      "--oracle-check"};
  const auto a = cli(args);
  const auto b = cli(args);
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out.find("disagree") == std::string::npos);
  CHECK(cli({"bench", "--family", "block-chain", "--size", "100", "--count", "2"}).code == kExitOk);
  CHECK(cli({"bench", "--family", "random-supermodular-k3", "--count", "20"}).code == kExitOk);
  CHECK(cli({"bench", "--family", "unknown"}).code == kExitInput);
}
