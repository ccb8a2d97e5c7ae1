#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "json.hpp"
#include "lfwp/cli.hpp"
#include "lfwp/file_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run lfwp_cmd(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = lfwp::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Scratch {
 public:
  Scratch() {
    static int counter = 0;
    dir_ = fs::temp_directory_path() /
           ("lfwp_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(dir_);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
  }

 private:
  fs::path dir_;
};

}  // namespace

TEST_CASE("gen writes the canonical Haar bank") {
  Scratch tmp;
  const Run r = lfwp_cmd({"gen", "--type", "canonical", "--p", "2", "--c", "1", "--out",
                          tmp.path("haar.json")});
  REQUIRE(r.code == 0);
  const auto bank = lfwp::deserialize_filter_bank(lfwp::read_text_file(tmp.path("haar.json")));
  CHECK(lfwp::is_canonical(bank));
  CHECK(bank.q() == 2);
}

TEST_CASE("gen rejects bad parameters") {
  Scratch tmp;
  CHECK(lfwp_cmd({"gen", "--type", "canonical", "--p", "4", "--out", tmp.path("x.json")}).code == 2);
  CHECK(lfwp_cmd({"gen", "--type", "random", "--p", "2", "--out", tmp.path("x.json")}).code == 2);
  CHECK(lfwp_cmd({"gen", "--type", "canonical", "--p", "2", "--c", "2", "--modulus", "1", "0", "1",
                  "--out", tmp.path("x.json")})
            .code == 2);
  CHECK(lfwp_cmd({"gen", "--type", "wavelet", "--p", "2", "--out", tmp.path("x.json")}).code == 2);
  CHECK(lfwp_cmd({"gen", "--type", "canonical", "--p", "2", "--c", "2", "--modulus", "1", "1", "1",
                  "--out", tmp.path("x.json")})
            .code == 0);
}

TEST_CASE("validate reports pass, fail and malformed input") {
  Scratch tmp;
  REQUIRE(lfwp_cmd({"gen", "--type", "canonical", "--p", "2", "--out", tmp.path("haar.json")})
              .code == 0);
  const Run ok = lfwp_cmd({"validate", tmp.path("haar.json")});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("PASS") != std::string::npos);

  auto doc = nlohmann::json::parse(lfwp::read_text_file(tmp.path("haar.json")));
  doc["analysis"][0][1][0] = doc["analysis"][0][1][0].get<double>() + 1e-3;
  tmp.write("bad.json", doc.dump());
  const Run bad = lfwp_cmd({"validate", "--filters", tmp.path("bad.json")});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("max_time_deviation     0.00070710678") != std::string::npos);

  const std::string text = lfwp::read_text_file(tmp.path("haar.json"));
  tmp.write("trunc.json", text.substr(0, text.size() / 3));
  CHECK(lfwp_cmd({"validate", tmp.path("trunc.json")}).code == 2);
  CHECK(lfwp_cmd({"validate", tmp.path("missing.json")}).code == 2);
}

TEST_CASE("decompose and reconstruct the Haar impulse") {
  Scratch tmp;
  REQUIRE(lfwp_cmd({"gen", "--type", "canonical", "--p", "2", "--out", tmp.path("haar.json")})
              .code == 0);
  tmp.write("sig.json", R"({"format": "lfwp-signal", "p": 2, "c": 1, "coeffs": [1, 0]})");
  const Run d = lfwp_cmd({"decompose", "--filters", tmp.path("haar.json"), "--signal",
                          tmp.path("sig.json"), "--mra-levels", "1", "--packet-depth", "0", "--out",
                          tmp.path("dec.json")});
  REQUIRE(d.code == 0);
  for (const char* key : {"energy_before", "energy_after"}) {
    const auto at = d.out.find(key);
    REQUIRE(at != std::string::npos);
    CHECK(std::stod(d.out.substr(at + std::string(key).size())) ==
          doctest::Approx(0.5).epsilon(1e-14));
  }
  const auto dec = lfwp::deserialize_decomposition(lfwp::read_text_file(tmp.path("dec.json")));
  REQUIRE(dec.lowpass.size() == 1);
  CHECK(std::abs(dec.lowpass[0] - 0.5) < 1e-15);
  REQUIRE(dec.nodes.at({0, 1}).size() == 1);
  CHECK(std::abs(dec.nodes.at({0, 1})[0] - 0.5) < 1e-15);

  const Run r = lfwp_cmd({"reconstruct", "--filters", tmp.path("haar.json"), "--coeffs",
                          tmp.path("dec.json"), "--out", tmp.path("back.json"), "--expect",
                          tmp.path("sig.json")});
  CHECK(r.code == 0);
  const auto [back, normalized] = lfwp::deserialize_signal(lfwp::read_text_file(tmp.path("back.json")));
  REQUIRE(back.coeffs.size() == 2);
  CHECK(std::abs(back.coeffs[0] - 1.0) < 1e-15);
  CHECK(std::abs(back.coeffs[1]) < 1e-15);

  // M = 0 keeps the input as the lowpass.
  REQUIRE(lfwp_cmd({"decompose", "--filters", tmp.path("haar.json"), "--signal",
                    tmp.path("sig.json"), "--mra-levels", "0", "--out", tmp.path("dec0.json")})
              .code == 0);
  const auto dec0 = lfwp::deserialize_decomposition(lfwp::read_text_file(tmp.path("dec0.json")));
  CHECK(dec0.lowpass == lfwp::Block{1.0, 0.0});
  CHECK(dec0.nodes.empty());

  CHECK(lfwp_cmd({"decompose", "--filters", tmp.path("haar.json"), "--signal", tmp.path("sig.json"),
                  "--mra-levels", "2", "--out", tmp.path("x.json")})
            .code == 2);
  CHECK(lfwp_cmd({"decompose", "--filters", tmp.path("haar.json"), "--signal", tmp.path("sig.json"),
                  "--mra-levels", "1", "--packet-depth", "deep", "--out", tmp.path("x.json")})
            .code == 2);
}

TEST_CASE("reconstruct rejects broken grids and flags mismatches") {
  Scratch tmp;
  REQUIRE(lfwp_cmd({"gen", "--type", "canonical", "--p", "2", "--out", tmp.path("haar.json")})
              .code == 0);
  tmp.write("sig.json", R"({"p": 2, "c": 1, "coeffs": [1, 2, 3, 4]})");
  REQUIRE(lfwp_cmd({"decompose", "--filters", tmp.path("haar.json"), "--signal",
                    tmp.path("sig.json"), "--mra-levels", "2", "--out", tmp.path("dec.json")})
              .code == 0);

  auto doc = nlohmann::json::parse(lfwp::read_text_file(tmp.path("dec.json")));
  doc["nodes"].erase(0);
  tmp.write("holes.json", doc.dump());
  CHECK(lfwp_cmd({"reconstruct", "--filters", tmp.path("haar.json"), "--coeffs",
                  tmp.path("holes.json"), "--out", tmp.path("x.json")})
            .code == 2);

  tmp.write("other.json", R"({"p": 2, "c": 1, "coeffs": [1, 2, 3, 5]})");
  const Run mismatch = lfwp_cmd({"reconstruct", "--filters", tmp.path("haar.json"), "--coeffs",
                                 tmp.path("dec.json"), "--out", tmp.path("x.json"), "--expect",
                                 tmp.path("other.json")});
  CHECK(mismatch.code == 1);
  const auto at = mismatch.out.find("max_deviation");
  REQUIRE(at != std::string::npos);
  CHECK(std::stod(mismatch.out.substr(at + 13)) == doctest::Approx(1.0).epsilon(1e-12));

  // Zero coefficients give a zero signal.
  auto zero = nlohmann::json::parse(lfwp::read_text_file(tmp.path("dec.json")));
  zero["lowpass"] = nlohmann::json::array({nlohmann::json::array({0, 0})});
  for (auto& node : zero["nodes"]) {
    for (auto& v : node["coeffs"]) v = {0, 0};
  }
  tmp.write("zero.json", zero.dump());
  REQUIRE(lfwp_cmd({"reconstruct", "--filters", tmp.path("haar.json"), "--coeffs",
                    tmp.path("zero.json"), "--out", tmp.path("z.json")})
              .code == 0);
  const auto [z, n] = lfwp::deserialize_signal(lfwp::read_text_file(tmp.path("z.json")));
  CHECK(z.coeffs == lfwp::Block(4));
}

TEST_CASE("packet command") {
  Scratch tmp;
  REQUIRE(lfwp_cmd({"gen", "--type", "canonical", "--p", "2", "--out", tmp.path("haar.json")})
              .code == 0);
  const Run r = lfwp_cmd({"packet", "--filters", tmp.path("haar.json"), "--n", "1", "--depth", "1",
                          "--out", tmp.path("p.json")});
  REQUIRE(r.code == 0);
  const auto pv = lfwp::deserialize_packet(lfwp::read_text_file(tmp.path("p.json")));
  CHECK(pv.coeffs == lfwp::Block{1.0, -1.0});

  REQUIRE(lfwp_cmd({"packet", "--filters", tmp.path("haar.json"), "--n", "0", "--depth", "0",
                    "--out", tmp.path("p0.json")})
              .code == 0);
  CHECK(lfwp::deserialize_packet(lfwp::read_text_file(tmp.path("p0.json"))).coeffs ==
        lfwp::Block{1.0});

  CHECK(lfwp_cmd({"packet", "--filters", tmp.path("haar.json"), "--n", "3", "--depth", "1"}).code ==
        2);
  REQUIRE(lfwp_cmd({"gen", "--type", "random", "--p", "2", "--seed", "1", "--out",
                    tmp.path("rand.json")})
              .code == 0);
  CHECK(lfwp_cmd({"packet", "--filters", tmp.path("rand.json"), "--n", "1", "--depth", "1",
                  "--samples"})
            .code == 2);
  CHECK(lfwp_cmd({"packet", "--filters", tmp.path("rand.json"), "--n", "1", "--depth", "1"})
            .code == 0);
}

TEST_CASE("theta command") {
  CHECK(lfwp_cmd({"theta", "--q", "2", "--ell", "2"}).out == "4..7 (size 4)\n");
  CHECK(lfwp_cmd({"theta", "--q", "3", "--ell", "0"}).out == "1..2 (size 2)\n");
  CHECK(lfwp_cmd({"theta", "--q", "2", "--ell", "70"}).code == 3);
}

TEST_CASE("certify") {
  Scratch tmp;
  for (const char* p : {"2", "3"}) {
    REQUIRE(lfwp_cmd({"gen", "--type", "canonical", "--p", p, "--out", tmp.path("c.json")}).code ==
            0);
    CHECK(lfwp_cmd({"certify", "--filters", tmp.path("c.json"), "--trials", "2", "--max-level", "3"})
              .code == 0);
  }
  REQUIRE(lfwp_cmd({"gen", "--type", "canonical", "--p", "2", "--c", "2", "--out",
                    tmp.path("c4.json")})
              .code == 0);
  CHECK(lfwp_cmd({"certify", "--filters", tmp.path("c4.json"), "--trials", "2", "--max-level", "3"})
            .code == 0);

  REQUIRE(lfwp_cmd({"gen", "--type", "random", "--p", "3", "--seed", "1", "--out",
                    tmp.path("r.json")})
              .code == 0);
  CHECK(lfwp_cmd({"certify", "--filters", tmp.path("r.json"), "--max-level", "3"}).code == 0);

  auto doc = nlohmann::json::parse(lfwp::read_text_file(tmp.path("r.json")));
  std::swap(doc["dual"][0], doc["dual"][1]);
  tmp.write("swapped.json", doc.dump());
  CHECK(lfwp_cmd({"certify", "--filters", tmp.path("swapped.json"), "--max-level", "2"}).code == 1);
}

TEST_CASE("usage errors") {
  CHECK(lfwp_cmd({}).code == 2);
  CHECK(lfwp_cmd({"frobnicate"}).code == 2);
  CHECK(lfwp_cmd({"theta", "--q", "2"}).code == 2);
  CHECK(lfwp_cmd({"--help"}).code == 0);
}

TEST_CASE("commands are deterministic") {
  Scratch tmp;
  REQUIRE(lfwp_cmd({"gen", "--type", "random", "--p", "2", "--c", "2", "--seed", "9", "--out",
                    tmp.path("a.json")})
              .code == 0);
  REQUIRE(lfwp_cmd({"gen", "--type", "random", "--p", "2", "--c", "2", "--seed", "9", "--out",
                    tmp.path("b.json")})
              .code == 0);
  CHECK(lfwp::read_text_file(tmp.path("a.json")) == lfwp::read_text_file(tmp.path("b.json")));
}
