#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <unistd.h>

#include "lpfact/cli.hpp"
#include "lpfact/density.hpp"
#include "lpfact/hits_csv.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

int run(std::vector<std::string> args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = lpfact::cli::run(args, o, e);
  if (out) *out = o.str();
  if (code != 0) MESSAGE(e.str());
  return code;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("sieve -> verify -> density -> exact pipeline through files") {
  const fs::path dir = fs::temp_directory_path() / ("lpfact_it_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string hits = (dir / "hits.csv").string();
  const std::string both = (dir / "both.csv").string();

  REQUIRE(run({"sieve", "--pmax", "4000", "--ord", "on", "--threads", "3", "--out", hits}) == 0);
  REQUIRE(run({"sieve", "--f", "1", "--f", "-1", "--pmax", "4000", "--out", both}) == 0);

  SUBCASE("symmetry with both polynomials") {
    std::string out;
    REQUIRE(run({"verify", "--mode", "symmetry", "--hits", both, "--f", "1", "--f", "-1"}, &out) == 0);
    const auto j = json::parse(out);
    CHECK(j["failures"] == 0);
    CHECK(j["instances"].get<int>() > 100);
    bool saw_cross = false;
    for (const auto& v : j["verdicts"]) saw_cross = saw_cross || v["details"]["against"] == "f=-1";
    CHECK(saw_cross);
  }

  SUBCASE("lemma4 verdicts are seeded and replayable") {
    const std::string a = (dir / "a.json").string(), b = (dir / "b.json").string();
    REQUIRE(run({"verify", "--mode", "lemma4", "--hits", hits, "--seed", "42", "--instances", "200", "--out", a}) == 0);
    REQUIRE(run({"verify", "--mode", "lemma4", "--hits", hits, "--seed", "42", "--instances", "200", "--out", b}) == 0);
    CHECK(slurp(a) == slurp(b));
    const auto j = json::parse(slurp(a));
    CHECK(j["instances"] == 200);
    CHECK(j["failures"] == 0);
    CHECK(j["verdicts"][0].contains("details"));
  }

  SUBCASE("lemma7 and cor6 emit margins and counts") {
    std::string out;
    REQUIRE(run({"verify", "--mode", "lemma7", "--hits", hits, "--instances", "20"}, &out) == 0);
    auto j = json::parse(out);
    CHECK(j["instances"] == 20);
    for (const auto& v : j["verdicts"]) {
      CHECK(v.contains("margin"));
      CHECK(v["details"]["label"] == "report-only, hypothesis scaled down");
    }
    REQUIRE(run({"verify", "--mode", "cor6", "--hits", hits, "--instances", "20"}, &out) == 0);
    j = json::parse(out);
    for (const auto& v : j["verdicts"]) CHECK(v["details"]["binding"] == false);
  }

  SUBCASE("density report agrees with the library") {
    const std::string rep = (dir / "report.json").string();
    REQUIRE(run({"density", "--hits", hits, "--lambda", "2", "--range", "1:300", "--out", rep}) == 0);
    const auto j = json::parse(slurp(rep));
    const auto store = lpfact::HitStore::from_records(lpfact::read_hits_csv(fs::path(hits)));
    const auto want = lpfact::density_above(lpfact::BoundTable::build(store, 300), 2.0, 1, 300);
    CHECK(j["count_above"] == want.count_above);
    CHECK(j["caveat"] == "lower bound only");
    CHECK(j["density"].get<double>() >= 0.0);
    CHECK(j["density"].get<double>() <= 1.0);
  }

  SUBCASE("exact cross-check passes on genuine hits") {
    REQUIRE(run({"exact", "--nmax", "14", "--out", (dir / "factors.csv").string(), "--hits", hits}) == 0);
    CHECK(slurp(dir / "factors.csv").find("\n6,3,7*103,complete,103\n") != std::string::npos);
  }

  fs::remove_all(dir);
}
