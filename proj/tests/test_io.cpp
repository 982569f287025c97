#include <doctest.h>

#include <cstring>

#include "phasespace/errors.hpp"
#include "phasespace/io.hpp"

using namespace phasespace;

TEST_CASE("matrix documents round-trip bit-exactly through text") {
  Rng rng = make_rng(0);
  std::normal_distribution<double> normal;
  for (int k = 0; k < 25; ++k) {
    const int n = 1 + k % 6;
    ComplexMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < n; ++c) {
        const double re = normal(rng) * std::pow(10.0, k % 7 - 3);
        const double im = normal(rng) / 3.0;
        m(r, c) = Complex(re, im);
      }
    }
    const std::string text = io::dump(io::matrix_to_json(m));
    const ComplexMatrix back = io::matrix_from_json(io::parse_json(text));
    CHECK(std::memcmp(back.data(), m.data(), sizeof(Complex) * static_cast<std::size_t>(m.size())) == 0);
  }
}

TEST_CASE("numbers print with 17 significant digits") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(0.5) == "0.5");
  CHECK(io::format_double(-1.0) == "-1");
  CHECK(io::format_double(std::numeric_limits<double>::infinity()) == "null");
  CHECK(io::dump(io::Json::parse(R"({"a":[1,2.5],"b":{"c":true}})"), -1) == R"({"a":[1, 2.5],"b":{"c":true}})");
}

TEST_CASE("malformed matrix documents") {
  const auto kind = [](const std::string& text) {
    try {
      io::matrix_from_json(io::parse_json(text));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  CHECK(kind("{") == ErrorKind::ParseError);
  CHECK(kind(R"({"n":2})") == ErrorKind::ParseError);
  CHECK(kind(R"({"n":1,"entries":[[1]]})") == ErrorKind::ParseError);
  CHECK(kind(R"({"n":1,"entries":[[[1,0,0]]]})") == ErrorKind::ParseError);
  CHECK(kind(R"({"n":2,"entries":[[[1,0]]]})") == ErrorKind::ParseError);
  CHECK(kind(R"({"n":1,"entries":[[["1",0]]]})") == ErrorKind::ParseError);
  CHECK(kind(R"({"n":0,"entries":[]})") == ErrorKind::ParseError);
}

TEST_CASE("run configuration overlay") {
  const io::RunConfig cfg = io::config_from_json(io::parse_json(R"({"hbar":2,"cluster_tol":1e-6,"seed":7})"));
  CHECK(cfg.hbar == 2.0);
  CHECK(cfg.tol.cluster_tol == 1e-6);
  CHECK(cfg.tol.trace_tol == 1e-10);
  CHECK(cfg.seed == 7);
  CHECK_THROWS_AS(io::config_from_json(io::parse_json(R"({"hbar":0})")), Error);
  CHECK_THROWS_AS(io::config_from_json(io::parse_json(R"({"psd_tol":-1})")), Error);
  CHECK_THROWS_AS(io::config_from_json(io::parse_json(R"({"seed":-3})")), Error);
}

TEST_CASE("plan documents") {
  const SamplingPlan plan = io::plan_from_json(io::parse_json(R"({"spectrum":"0.1:2,0.4:2","count":5})"));
  CHECK(plan.n == 4);
  CHECK(plan.count == 5);
  CHECK(io::plan_from_json(io::plan_to_json(plan)).count == 5);

  const auto kind = [](const std::string& text) {
    try {
      io::plan_from_json(io::parse_json(text));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  CHECK(kind(R"({"spectrum":"0.1:2,0.4:2","count":-1})") == ErrorKind::InvalidPlan);
  CHECK(kind(R"({"spectrum":"0.1:2,0.4:2"})") == ErrorKind::InvalidPlan);
  CHECK(kind(R"({"spectrum":"0.1:2,0.4:2","count":3,"n":3})") == ErrorKind::InvalidPlan);
  CHECK(kind(R"({"spectrum":"bogus","count":3})") == ErrorKind::InvalidPlan);
  CHECK(kind(R"({"spectrum":"random:2,3","count":3,"observable_scale":"big"})") == ErrorKind::InvalidPlan);
}
