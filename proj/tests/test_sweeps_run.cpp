#include <doctest.h>

#include <json.hpp>

#include "core/run.hpp"
#include "core/sweeps.hpp"
#include "core/verifier.hpp"

using namespace chainstore;
using nlohmann::json;

namespace {
const Payoffs kPay = default_payoffs();
const Cmp<double> kCmp{};
}  // namespace

TEST_CASE("pi sweep at a high prior: qA weakly increasing, entry kinked at delta") {
  SweepPointInputs base{0.6, 0.0, std::nullopt, std::nullopt};
  const auto res = sweep_1d(SweepAxis::Pi, 0.0, 1.0, 51, base, kPay, kCmp);
  CHECK(res.monotonicity.at("qA") == "increasing");
  // Below delta the conditional entry probability rises with pi; at the kink
  // it drops to zero.
  const double delta = 5.0 / 7.0;
  for (std::size_t i = 0; i + 1 < res.rows.size(); ++i) {
    if (res.rows[i + 1].value < delta - 1e-9)
      CHECK(res.rows[i + 1].ex_ante_entry_B >= res.rows[i].ex_ante_entry_B - 1e-12);
    if (res.rows[i].value > delta + 1e-9) CHECK(res.rows[i].ex_ante_entry_B == 0.0);
  }
}

TEST_CASE("pi sweep at a low prior shows entry decreasing below delta") {
  SweepPointInputs base{0.3, 0.0, std::nullopt, std::nullopt};
  const auto res = sweep_1d(SweepAxis::Pi, 0.0, 1.0, 101, base, kPay, kCmp);
  for (const auto& row : res.rows) {
    if (row.value < 5.0 / 7.0 - 1e-9) {
      CHECK(row.ex_ante_entry_B == doctest::Approx(1.0 - 0.3 * row.value).epsilon(1e-12));
      CHECK(row.regime == "LOW_ACCOMMODATE");
    }
  }
  // kstar weakly decreasing in pi along the sweep (qA = 0 below delta).
  double prev = 1e9;
  for (const auto& row : res.rows) {
    if (row.value >= 5.0 / 7.0 - 1e-9) break;
    CHECK(row.kstar <= prev + 1e-12);
    prev = row.kstar;
  }
}

TEST_CASE("k sweep flips acquisition at kstar") {
  SweepPointInputs base{0.3, 0.5, std::nullopt, 0.0};
  const auto res = sweep_1d(SweepAxis::K, 0.0, 0.4, 41, base, kPay, kCmp);
  for (const auto& row : res.rows) {
    if (row.value > 0.1501) CHECK(row.acquires == "0");
    // Below the baseline cutoff no pure equilibrium exists except at k = 0.
    if (row.value > 1e-9 && row.value < 0.1499) CHECK(row.acquires == "none");
    if (row.value == 0.0) CHECK(row.acquires == "1");
  }
}

TEST_CASE("csv emit/parse round trip") {
  CsvTable t;
  t.header = {"a", "b", "c"};
  t.rows = {{"1", "x", "2.5"}, {"0.333333333333", "", "7"}};
  const std::string text = t.emit();
  const CsvTable back = CsvTable::parse(text);
  CHECK(back.header == t.header);
  REQUIRE(back.rows.size() == t.rows.size());
  CHECK(back.rows[0] == t.rows[0]);
  CHECK(back.rows[1] == t.rows[1]);
  CHECK(back.emit() == text);
}

TEST_CASE("format_number uses 12 significant digits") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(5.0 / 7.0) == "0.714285714286");
  CHECK(format_number(1e-9) == "1e-09");
}

TEST_CASE("run solve: machine payload and determinism") {
  const std::string cfg = R"({"model":{"p0":0.6,"pi":0.8}})";
  const auto r1 = run_command("solve", cfg);
  REQUIRE(r1.status == RunStatus::Ok);
  const json j = json::parse(r1.json);
  CHECK(j.at("regime") == "HIGH_FIGHT");
  CHECK(j.at("qA") == doctest::Approx(1.0));
  CHECK(j.at("exAnteEntryB") == doctest::Approx(0.0));
  CHECK(j.at("thresholds").at("phi") == doctest::Approx(0.5));

  const auto r2 = run_command("solve", cfg);
  CHECK(r1.json == r2.json);  // byte-identical output
  CHECK(r1.csv == r2.csv);

  const CsvTable table = CsvTable::parse(r1.csv);
  CHECK(table.header.front() == "p0");
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0][3] == "HIGH_FIGHT");
}

TEST_CASE("run solve with simultaneous protocol") {
  const auto r = run_command(
      "solve", R"({"model":{"p0":0.3,"protocol":"simultaneous"}})");
  REQUIRE(r.status == RunStatus::Ok);
  const json j = json::parse(r.json);
  CHECK(j.at("regime") == "SIMULTANEOUS");
  CHECK(j.at("strategicPayoff") == doctest::Approx(0.6));
  CHECK(j.at("entrantAEnters") == true);
}

TEST_CASE("run solve with noise flips the regime per the noisy example") {
  const auto r = run_command(
      "solve", R"({"model":{"p0":0.6,"pi":0.8},"noise":{"epsF":0.45,"epsA":0.45}})");
  REQUIRE(r.status == RunStatus::Ok);
  CHECK(json::parse(r.json).at("regime") == "LOW_ACCOMMODATE");
}

TEST_CASE("run regions: float and rational modes") {
  const auto r = run_command("regions", R"({"sweep":{"grid":"21x21"}})");
  REQUIRE(r.status == RunStatus::Ok);
  const json j = json::parse(r.json);
  CHECK(j.at("rows") == 441);
  const CsvTable t = CsvTable::parse(r.csv);
  CHECK(t.header == std::vector<std::string>{"p0", "pi", "regime", "qA", "exAnteEntryB",
                                             "fightProb"});
  CHECK(t.rows.size() == 441);

  const auto rr = run_command(
      "regions", R"({"sweep":{"grid":"21x21"},"numerics":{"rationalMode":true}})");
  REQUIRE(rr.status == RunStatus::Ok);
  CHECK(json::parse(rr.json).at("highFightCells") == j.at("highFightCells"));
}

TEST_CASE("run verify: pass on solver output, fail on planted candidate") {
  const auto ok = run_command("verify", R"({"model":{"p0":0.6,"pi":0.8}})");
  CHECK(ok.status == RunStatus::Ok);
  CHECK(json::parse(ok.json).at("report").at("pass") == true);

  const auto bad =
      run_command("verify", R"({"model":{"p0":0.6,"pi":0.5},"verify":{"forceQA":1.0}})");
  CHECK(bad.status == RunStatus::VerificationFailed);
  const json bj = json::parse(bad.json);
  CHECK(bj.at("report").at("pass") == false);
  CHECK(bj.at("report").at("maxIncumbentGain").get<double>() == doctest::Approx(0.15));
}

TEST_CASE("run voi") {
  const auto r = run_command(
      "voi", R"({"model":{"p0":0.3,"pi":0.5},"verify":{"forceQA":0.0},"acquisition":{"k":0.1}})");
  REQUIRE(r.status == RunStatus::Ok);
  const json j = json::parse(r.json);
  CHECK(j.at("voi") == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(j.at("acquires") == true);
  CHECK(j.at("piEff") == doctest::Approx(1.0));
}

TEST_CASE("run sweep emits monotonicity flags") {
  const auto r = run_command(
      "sweep", R"({"model":{"p0":0.6},"sweep":{"axis":"pi","count":41}})");
  REQUIRE(r.status == RunStatus::Ok);
  const json j = json::parse(r.json);
  CHECK(j.at("monotonicity").at("qA") == "increasing");
  CHECK(CsvTable::parse(r.csv).rows.size() == 41);
}

TEST_CASE("run simulate is deterministic and reports series") {
  const std::string cfg =
      R"({"model":{"p0":0.6,"pi":0.8},
          "simulate":{"nMarkets":2,"tPeriods":2,"replications":3000,"seed":12,
                      "forceFirstEntry":true,"policy":"threshold"}})";
  const auto r1 = run_command("simulate", cfg);
  REQUIRE(r1.status == RunStatus::Ok);
  const auto r2 = run_command("simulate", cfg);
  CHECK(r1.json == r2.json);
  CHECK(r1.csv == r2.csv);
  const json j = json::parse(r1.json);
  CHECK(j.at("periods").size() == 2);
  // High-prior cell: strategic type fights the forced period-1 entrant.
  CHECK(j.at("periods")[0].at("fightFreqStrategic") == doctest::Approx(1.0));
  CHECK(j.at("periods")[1].at("entryFreq") == doctest::Approx(0.0));
}

TEST_CASE("run status codes") {
  CHECK(run_command("solve", R"({"model":{"p0":1.5,"pi":0.5}})").status ==
        RunStatus::InvalidConfig);
  CHECK(run_command("solve", R"({"model":{"p0":1,"pi":0.5}})").status ==
        RunStatus::InvalidConfig);  // degenerate prior
  CHECK(run_command("solve", R"({"model":{"pi":0.5}})").status == RunStatus::InvalidConfig);
  CHECK(run_command("nonsense", "{}").status == RunStatus::InvalidConfig);
  CHECK(run_command("solve", "{not json").status == RunStatus::InvalidConfig);
  // No pure acquisition equilibrium surfaces as a numerical-degeneracy report.
  CHECK(run_command("solve",
                    R"({"model":{"p0":0.3,"pi":0.5},"acquisition":{"k":0.1}})")
            .status == RunStatus::NumericalDegeneracy);
}

TEST_CASE("rational mode requires exact inputs") {
  const auto bad = run_command(
      "regions", R"({"payoffs":{"a":0.3},"numerics":{"rationalMode":true}})");
  CHECK(bad.status == RunStatus::InvalidConfig);
  const auto good = run_command(
      "regions",
      R"({"payoffs":{"a":"0.30"},"sweep":{"grid":"11x11"},"numerics":{"rationalMode":true}})");
  CHECK(good.status == RunStatus::Ok);
}
