#include <catch_amalgamated.hpp>

#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "sphdiff/io.hpp"

namespace io = sphdiff::io;

namespace {

// Random doubles that exercise exponents and mantissas across the full range.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : stream_(seed, 0) {}
  double unit() { return stream_.next_uniform_pair()[0]; }
  double wild() {
    const auto [a, b] = stream_.next_uniform_pair();
    const double mag = std::ldexp(1.0 + a, static_cast<int>(b * 200.0) - 100);
    return unit() < 0.5 ? -mag : mag;
  }

 private:
  sphdiff::rng::IndexStream stream_;
};

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

sphdiff::RadialProfile random_profile(Draw& draw, bool numeric) {
  sphdiff::RadialProfile p;
  const int n = 1 + static_cast<int>(draw.unit() * 40);
  double s = draw.unit() * 1e-3;
  for (int i = 0; i < n; ++i) {
    p.s_values.push_back(s);
    s += draw.unit() + 1e-9;
    p.eta_closed.push_back(draw.wild());
  }
  if (numeric) {
    p.R = 1.0 + draw.unit() * 500.0;
    p.eta_numeric.emplace();
    for (int i = 0; i < n; ++i) p.eta_numeric->emplace_back(draw.wild(), draw.wild());
  }
  return p;
}

sphdiff::ConvergenceReport random_report(Draw& draw) {
  sphdiff::ConvergenceReport r;
  const int n = 2 + static_cast<int>(draw.unit() * 6);
  for (int i = 0; i < n; ++i) {
    r.R_values.push_back(10.0 * (i + 1) + draw.unit());
    r.max_abs_error.push_back(std::fabs(draw.wild()));
    r.max_imag_residual.push_back(std::fabs(draw.wild()));
    if (i + 1 < n) r.decay_ratios.push_back(draw.unit() < 0.2 ? std::nullopt : std::optional<double>(draw.wild()));
    r.samples.push_back({r.R_values.back(), draw.unit(), {draw.wild(), draw.wild()}, draw.wild(), draw.unit() < 0.5});
  }
  return r;
}

void check_profiles_equal(const sphdiff::RadialProfile& a, const sphdiff::RadialProfile& b) {
  REQUIRE(a.s_values.size() == b.s_values.size());
  for (std::size_t i = 0; i < a.s_values.size(); ++i) {
    CHECK(same_bits(a.s_values[i], b.s_values[i]));
    CHECK(same_bits(a.eta_closed[i], b.eta_closed[i]));
  }
  REQUIRE(a.eta_numeric.has_value() == b.eta_numeric.has_value());
  if (a.eta_numeric) {
    CHECK(same_bits(*a.R, *b.R));
    for (std::size_t i = 0; i < a.eta_numeric->size(); ++i) {
      CHECK(same_bits((*a.eta_numeric)[i].real(), (*b.eta_numeric)[i].real()));
      CHECK(same_bits((*a.eta_numeric)[i].imag(), (*b.eta_numeric)[i].imag()));
    }
  }
}

void check_summaries_equal(const sphdiff::ConvergenceReport& a, const sphdiff::ConvergenceReport& b) {
  REQUIRE(a.R_values.size() == b.R_values.size());
  for (std::size_t i = 0; i < a.R_values.size(); ++i) {
    CHECK(same_bits(a.R_values[i], b.R_values[i]));
    CHECK(same_bits(a.max_abs_error[i], b.max_abs_error[i]));
    CHECK(same_bits(a.max_imag_residual[i], b.max_imag_residual[i]));
  }
  REQUIRE(a.decay_ratios.size() == b.decay_ratios.size());
  for (std::size_t i = 0; i < a.decay_ratios.size(); ++i) {
    REQUIRE(a.decay_ratios[i].has_value() == b.decay_ratios[i].has_value());
    if (a.decay_ratios[i]) CHECK(same_bits(*a.decay_ratios[i], *b.decay_ratios[i]));
  }
}

}  // namespace

TEST_CASE("format_double round-trips", "[io][property]") {
  Draw draw(1);
  for (int i = 0; i < 5000; ++i) {
    const double v = draw.wild();
    CHECK(same_bits(io::parse_double(io::format_double(v)), v));
  }
  CHECK_THROWS_AS(io::parse_double("1.5x"), sphdiff::domain_error);
  CHECK_THROWS_AS(io::parse_double("abc"), sphdiff::domain_error);
}

TEST_CASE("RadialProfile CSV round-trip", "[io][property]") {
  Draw draw(2);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_profile(draw, i % 2 == 0);
    std::stringstream ss;
    io::write_profile_csv(ss, p);
    check_profiles_equal(p, io::read_profile_csv(ss));
  }
}

TEST_CASE("RadialProfile JSON round-trip", "[io][property]") {
  Draw draw(3);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_profile(draw, i % 2 == 1);
    const auto text = io::to_json(p).dump();
    check_profiles_equal(p, io::profile_from_json(io::json::parse(text)));
  }
}

TEST_CASE("ConvergenceReport JSON round-trip", "[io][property]") {
  Draw draw(4);
  for (int i = 0; i < 200; ++i) {
    const auto r = random_report(draw);
    const auto back = io::report_from_json(io::json::parse(io::to_json(r).dump()));
    check_summaries_equal(r, back);
    REQUIRE(back.samples.size() == r.samples.size());
    for (std::size_t j = 0; j < r.samples.size(); ++j) {
      CHECK(same_bits(back.samples[j].eta_numeric.real(), r.samples[j].eta_numeric.real()));
      CHECK(same_bits(back.samples[j].eta_numeric.imag(), r.samples[j].eta_numeric.imag()));
      CHECK(back.samples[j].boundary_dominated == r.samples[j].boundary_dominated);
    }
  }
}

TEST_CASE("ConvergenceReport CSV round-trip", "[io][property]") {
  Draw draw(5);
  for (int i = 0; i < 200; ++i) {
    const auto r = random_report(draw);
    std::stringstream ss;
    io::write_report_csv(ss, r);
    check_summaries_equal(r, io::read_report_csv(ss));
  }
}

TEST_CASE("malformed input is rejected", "[io]") {
  std::stringstream ragged("s,eta_closed\n0,1\n1\n");
  CHECK_THROWS_AS(io::read_profile_csv(ragged), sphdiff::domain_error);
  std::stringstream missing("x,y\n0,1\n");
  CHECK_THROWS_AS(io::read_profile_csv(missing), sphdiff::domain_error);
  std::stringstream empty("");
  CHECK_THROWS_AS(io::read_csv(empty), sphdiff::domain_error);
  const auto bad = io::json::parse(R"({"R_values":[1,2],"max_abs_error":[1],"max_imag_residual":[1,2],"decay_ratios":[null],"samples":[]})");
  CHECK_THROWS_AS(io::report_from_json(bad), sphdiff::domain_error);
}

TEST_CASE("envelope layout", "[io]") {
  const auto j = io::envelope("taylor", {{"d", 2}}, io::json::array({1, 2}), true);
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  CHECK(keys == std::vector<std::string>{"command", "config", "results", "pass"});
  CHECK(j["command"] == "taylor");
  CHECK(j["pass"] == true);
}
