#include "opanet/config.hpp"

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "opanet/errors.hpp"

using namespace opanet;

namespace {

// Writes text to a fresh file under the system temp directory and removes it
// when the test block ends.
class TempFile {
 public:
  explicit TempFile(const std::string& text) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("opanet_test_" + std::to_string(++counter) + "_" +
             std::to_string(static_cast<long>(getpid())) + ".json");
    std::ofstream out(path_, std::ios::binary);
    out << text;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST_CASE("durations need explicit units") {
  CHECK(parse_duration("100us") == doctest::Approx(1e-4).epsilon(1e-15));
  CHECK(parse_duration("25us") == doctest::Approx(25e-6).epsilon(1e-15));
  CHECK(parse_duration("1ms") == doctest::Approx(1e-3).epsilon(1e-15));
  CHECK(parse_duration("50ns") == doctest::Approx(5e-8).epsilon(1e-15));
  CHECK(parse_duration("2s") == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(parse_duration(" 10ms ") == doctest::Approx(1e-2).epsilon(1e-15));
  CHECK(parse_duration("1.5 us") == doctest::Approx(1.5e-6).epsilon(1e-15));
  CHECK(parse_duration("0") == 0.0);
  CHECK(parse_duration("0.0") == 0.0);

  CHECK_THROWS_WITH_AS(parse_duration("100"),
                       doctest::Contains("unit suffix"), InvalidInput);
  CHECK_THROWS_AS(parse_duration("10parsecs"), InvalidInput);
  CHECK_THROWS_AS(parse_duration("fast"), InvalidInput);
  CHECK_THROWS_AS(parse_duration(""), InvalidInput);
  CHECK_THROWS_AS(parse_duration("-5us"), InvalidInput);
}

TEST_CASE("frequencies need explicit units") {
  CHECK(parse_frequency("10GHz") == doctest::Approx(1e10).epsilon(1e-15));
  CHECK(parse_frequency("100MHz") == doctest::Approx(1e8).epsilon(1e-15));
  CHECK(parse_frequency("1kHz") == doctest::Approx(1e3).epsilon(1e-15));
  CHECK(parse_frequency("50Hz") == doctest::Approx(50.0).epsilon(1e-15));
  CHECK(parse_frequency("0") == 0.0);
  CHECK_THROWS_AS(parse_frequency("10"), InvalidInput);
  CHECK_THROWS_AS(parse_frequency("10ghz"), InvalidInput);
}

TEST_CASE("built-in defaults") {
  const auto cfg = default_config();
  CHECK(cfg.fiber.name == "HNLF");
  CHECK(cfg.pump.p0_w == 1.0);
  CHECK(cfg.pump.omega_m ==
        doctest::Approx(2.0 * std::numbers::pi * 1e10).epsilon(1e-15));
  CHECK(cfg.pon.slot_s == doctest::Approx(100e-6));
  CHECK(cfg.output.format == "csv");
}

TEST_CASE("config file loading") {
  SUBCASE("fields override the defaults") {
    TempFile file(R"json({
      "fiber": "SMF",
      "pon": {"slot": "50us", "rho": 0.5},
      "pump": {"p0_w": 1.2, "f_m": "5GHz"},
      "ode": {"method": "rk45", "rel_tol": 1e-9},
      "output": {"directory": "out", "format": "json"}
    })json");
    const auto cfg = load_config(file.path());
    CHECK(cfg.fiber.name == "SMF");
    CHECK(cfg.fiber.gamma == doctest::Approx(1.8));
    CHECK(cfg.pon.slot_s == doctest::Approx(50e-6).epsilon(1e-15));
    CHECK(cfg.pon.rho == doctest::Approx(0.5));
    CHECK(cfg.pon.t_laser_s == doctest::Approx(25e-6));  // untouched default
    CHECK(cfg.pump.p0_w == doctest::Approx(1.2));
    CHECK(cfg.pump.omega_m ==
          doctest::Approx(2.0 * std::numbers::pi * 5e9).epsilon(1e-15));
    CHECK(cfg.ode.method == ode::Method::AdaptiveRk45);
    CHECK(cfg.ode.rel_tol == doctest::Approx(1e-9));
    CHECK(cfg.output.directory == "out");
    CHECK(cfg.output.format == "json");
  }

  SUBCASE("fiber can be spelled out") {
    TempFile file(R"json({
      "fiber": {"name": "lab", "alpha_db": 0.5, "a_eff": 20,
                 "gamma": 10, "lambda0": 1.54, "disp_slope": 0.05}
    })json");
    const auto cfg = load_config(file.path());
    CHECK(cfg.fiber.name == "lab");
    CHECK(cfg.fiber.gamma == doctest::Approx(10.0));
    // the decibel slope follows the nonlinearity when not given
    CHECK(cfg.fiber.s_p ==
          doctest::Approx(parametric_gain_slope(10.0)).epsilon(1e-12));
  }

  SUBCASE("a typo cannot pass silently") {
    TempFile file(R"json({"pon": {"slott": "50us"}})json");
    CHECK_THROWS_WITH_AS(load_config(file.path()),
                         doctest::Contains("slott"), ConfigError);
    TempFile top(R"json({"pins": {}})json");
    CHECK_THROWS_WITH_AS(load_config(top.path()), doctest::Contains("pins"),
                         ConfigError);
  }

  SUBCASE("nonzero bare numbers are rejected for durations") {
    TempFile file(R"json({"pon": {"slot": 100}})json");
    CHECK_THROWS_WITH_AS(load_config(file.path()),
                         doctest::Contains("unit suffix"), ConfigError);
    TempFile zero(R"json({"pon": {"t_laser": 0}})json");
    CHECK(load_config(zero.path()).pon.t_laser_s == 0.0);
  }

  SUBCASE("broken JSON and missing files") {
    TempFile file("{ not json");
    CHECK_THROWS_AS(load_config(file.path()), ConfigError);
    CHECK_THROWS_AS(load_config("/no/such/config.json"), IoError);
  }

  SUBCASE("bad enum values") {
    TempFile file(R"json({"ode": {"method": "euler"}})json");
    CHECK_THROWS_WITH_AS(load_config(file.path()), doctest::Contains("rk4"),
                         ConfigError);
    TempFile out(R"json({"output": {"format": "xml"}})json");
    CHECK_THROWS_AS(load_config(out.path()), ConfigError);
  }
}

TEST_CASE("effective configuration serialization round-trips") {
  const auto cfg = default_config();
  const auto j = nlohmann::json::parse(config_json(cfg));
  CHECK(j.at("fiber").at("name") == "HNLF");
  CHECK(j.at("pump").at("f_m_hz").get<double>() ==
        doctest::Approx(1e10).epsilon(1e-12));
  CHECK(j.at("pon").at("slot_s").get<double>() == doctest::Approx(100e-6));
  CHECK(j.at("ode").at("method") == "rk4");
}

TEST_CASE("sweep descriptions from JSON") {
  SUBCASE("series values in all three spellings") {
    const auto spec = parse_sweep_spec_json(R"json({
      "target": "network_delay",
      "swept": {"name": "rho", "min": 0.1, "max": 1.0, "steps": 10},
      "series": {"name": "t_laser_s", "values": [1e-05, "text", {"label": "25us", "value": 2.5e-05}]},
      "fixed": {"w_users": 256, "t_tx_s": 1e-4}
    })json");
    CHECK(spec.target == "network_delay");
    CHECK(spec.swept.steps == 10);
    REQUIRE(spec.series.has_value());
    REQUIRE(spec.series->values.size() == 3);
    CHECK(spec.series->values[0].number == doctest::Approx(1e-5));
    CHECK(spec.series->values[0].label == "1e-05");
    CHECK(spec.series->values[1].label == "text");
    CHECK_FALSE(spec.series->values[1].number.has_value());
    CHECK(spec.series->values[2].label == "25us");
    CHECK(spec.series->values[2].number == doctest::Approx(2.5e-5));
    CHECK(spec.fixed.at("w_users") == doctest::Approx(256.0));
  }

  SUBCASE("unknown keys are named") {
    CHECK_THROWS_WITH_AS(parse_sweep_spec_json(R"json({
      "target": "network_delay",
      "swept": {"name": "rho", "min": 0.1, "max": 1.0, "steps": 10},
      "jitter": 1
    })json"),
                         doctest::Contains("jitter"), ConfigError);
  }

  SUBCASE("files load the same way") {
    TempFile file(R"json({
      "target": "network_delay",
      "swept": {"name": "rho", "min": 0.1, "max": 1.0, "steps": 10},
      "fixed": {"w_users": 256, "t_tx_s": 1e-4}
    })json");
    const auto spec = load_sweep_spec(file.path());
    CHECK(spec.target == "network_delay");
    CHECK_THROWS_AS(load_sweep_spec("/no/such/spec.json"), IoError);
  }
}
