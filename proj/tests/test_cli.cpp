// End-to-end CLI checks through a subprocess: exit-code contract, CSV
// schemas, unit conversion, config-file handling with flag precedence,
// deterministic reruns, and thread-count independence.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

const std::string kScratch = "cli_scratch";

std::string binary() { return std::string("\"") + RDC_LAB_BINARY + "\""; }

int run(const std::string& args, const std::string& env_prefix = "") {
  std::filesystem::create_directories(kScratch);
  const std::string cmd = env_prefix + binary() + " " + args + " > " + kScratch +
                          "/stdout.txt 2> " + kScratch + "/stderr.txt";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -2;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

// Strips the volatile wall-time entry so reports can be compared bytewise.
std::string without_wall_time(const std::string& json_text) {
  std::string out;
  for (const std::string& line : lines_of(json_text)) {
    if (line.find("wall_time_s") != std::string::npos) continue;
    out += line;
    out += '\n';
  }
  return out;
}

double extract_number(const std::string& json_text, const std::string& key) {
  const std::string needle = "\"" + key + "\":";
  const std::size_t at = json_text.find(needle);
  REQUIRE(at != std::string::npos);
  return std::strtod(json_text.c_str() + at + needle.size(), nullptr);
}

std::string scratch(const std::string& name) { return kScratch + "/" + name; }

}  // namespace

TEST_CASE("version and parse failures") {
  CHECK(run("--version") == 0);
  CHECK(run("definitely-not-a-command") == 1);
  CHECK(run("gaussian-dcr --no-such-flag 1") == 1);
  CHECK(run("") == 1);  // a subcommand is required
}

TEST_CASE("exit codes map the error families") {
  // Bad parameter values: configuration error.
  CHECK(run("gaussian-dcr --sigma2-x -1 --theta1 0.5 -o " + scratch("x.csv") +
            " --report " + scratch("x.json")) == 1);
  // Classification budget below the feasibility threshold: infeasible.
  CHECK(run("gaussian-rdc --theta1 0.7 --classification 0.9 -o " +
            scratch("x.csv") + " --report " + scratch("x.json")) == 2);
}

TEST_CASE("gaussian-dcr schema, determinism, and units") {
  const std::string csv = scratch("dcr.csv"), json = scratch("dcr.json");
  const std::string base = "gaussian-dcr --theta1 0.7 --rate 0.25 --points 12 -o " +
                           csv + " --report " + json;
  REQUIRE(run(base) == 0);
  const std::string first = read_file(csv);
  const auto rows = lines_of(first);
  REQUIRE(rows.size() == 13);
  CHECK(rows[0] == "C,R,D,case");
  CHECK(fields_of(rows[1]).size() == 4);

  // Byte-identical rerun.
  REQUIRE(run(base) == 0);
  CHECK(read_file(csv) == first);
  const std::string report = read_file(json);
  CHECK(report.find("\"command\": \"gaussian-dcr\"") != std::string::npos);
  CHECK(report.find("wall_time_s") != std::string::npos);

  // Entropic columns scale by ln 2 under --units bits; distortion does not.
  const std::string csv_bits = scratch("dcr_bits.csv");
  REQUIRE(run("gaussian-dcr --theta1 0.7 --rate 0.25 --points 12 --units bits -o " +
              csv_bits + " --report " + scratch("dcr_bits.json")) == 0);
  const auto nat_row = fields_of(lines_of(first)[5]);
  const auto bit_row = fields_of(lines_of(read_file(csv_bits))[5]);
  const double ln2 = std::log(2.0);
  CHECK(std::strtod(bit_row[0].c_str(), nullptr) ==
        doctest::Approx(std::strtod(nat_row[0].c_str(), nullptr) / ln2).epsilon(1e-12));
  CHECK(std::strtod(bit_row[1].c_str(), nullptr) ==
        doctest::Approx(std::strtod(nat_row[1].c_str(), nullptr) / ln2).epsilon(1e-12));
  CHECK(bit_row[2] == nat_row[2]);
  CHECK(bit_row[3] == nat_row[3]);
}

TEST_CASE("config file seeds options and flags override it") {
  const std::string cfg = scratch("run.ini");
  {
    std::ofstream out(cfg);
    out << "[gaussian-dcr]\n"
        << "theta1=0.7\n"
        << "rate=0.25\n"
        << "points=12\n";
  }
  const std::string from_flags = scratch("cfg_baseline.csv");
  REQUIRE(run("gaussian-dcr --theta1 0.7 --rate 0.25 --points 12 -o " +
              from_flags + " --report " + scratch("cfg_baseline.json")) == 0);
  const std::string from_cfg = scratch("cfg.csv");
  REQUIRE(run("--config " + cfg + " gaussian-dcr -o " + from_cfg + " --report " +
              scratch("cfg.json")) == 0);
  CHECK(read_file(from_cfg) == read_file(from_flags));

  // An explicit flag beats the config value.
  const std::string overridden = scratch("cfg_override.csv");
  REQUIRE(run("--config " + cfg + " gaussian-dcr --rate 0.5 -o " + overridden +
              " --report " + scratch("cfg_override.json")) == 0);
  CHECK(read_file(overridden) != read_file(from_cfg));
  const auto row = fields_of(lines_of(read_file(overridden))[1]);
  CHECK(std::strtod(row[1].c_str(), nullptr) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("gaussian-rdc sweeps distortion at fixed classification") {
  const std::string csv = scratch("rdc.csv");
  REQUIRE(run("gaussian-rdc --theta1 0.7 --classification 1.3 --d-min 0.2 "
              "--d-max 0.9 --points 10 -o " +
              csv + " --report " + scratch("rdc.json")) == 0);
  const auto rows = lines_of(read_file(csv));
  REQUIRE(rows.size() == 11);
  CHECK(rows[0] == "D,C,R,case");
  // Rate decreases as the distortion budget relaxes.
  double prev = 1e300;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double r = std::strtod(fields_of(rows[i])[2].c_str(), nullptr);
    CHECK(r <= prev + 1e-12);
    prev = r;
  }
}

TEST_CASE("gaussian-universal rows dominate their targets") {
  const std::string csv = scratch("uni.csv");
  REQUIRE(run("gaussian-universal --theta1 0.7 --rates 0.1,0.25 --points 8 -o " +
              csv + " --report " + scratch("uni.json")) == 0);
  const auto rows = lines_of(read_file(csv));
  REQUIRE(rows.size() == 17);
  CHECK(rows[0] == "rate,target_D,target_C,achieved_D,achieved_C,gamma");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = fields_of(rows[i]);
    REQUIRE(f.size() == 6);
    const double target_d = std::strtod(f[1].c_str(), nullptr);
    const double target_c = std::strtod(f[2].c_str(), nullptr);
    const double achieved_d = std::strtod(f[3].c_str(), nullptr);
    const double achieved_c = std::strtod(f[4].c_str(), nullptr);
    CHECK(achieved_d <= target_d + 1e-9);
    CHECK(achieved_c <= target_c + 1e-9);
  }
}

TEST_CASE("discrete-dcr marks infeasible sweep points honestly") {
  const std::string csv = scratch("ddcr.csv");
  REQUIRE(run("discrete-dcr --q 0.5,0.5 --t 0.9,0.2,0.1,0.8 --labels 2 "
              "--grid 24 --rate 0.3 --c-min 0.2 --points 12 -o " +
              csv + " --report " + scratch("ddcr.json")) == 0);
  const auto rows = lines_of(read_file(csv));
  REQUIRE(rows.size() == 13);
  CHECK(rows[0] == "C,R,D,lp_status");
  bool saw_provable = false, saw_optimal = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = fields_of(rows[i]);
    REQUIRE(f.size() == 4);
    if (f[3] == "infeasible_provable") {
      saw_provable = true;
      CHECK(f[2] == "nan");
    } else if (f[3] == "optimal") {
      saw_optimal = true;
      CHECK(f[2] != "nan");
    }
  }
  CHECK(saw_provable);  // the sweep starts below H(S|X) = 0.41...
  CHECK(saw_optimal);
}

TEST_CASE("region emits extreme, inner, and outer rows") {
  const std::string csv = scratch("region.csv");
  REQUIRE(run("region --q 0.5,0.5 --t 1,0,0,1 --labels 2 "
              "--channel 0.8,0.3,0.2,0.7 --z-letters 2 --c-points 5 -o " +
              csv + " --report " + scratch("region.json")) == 0);
  const auto rows = lines_of(read_file(csv));
  REQUIRE(rows.size() >= 4);
  CHECK(rows[0] == "kind,D,C");
  int extremes = 0, inners = 0, outers = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = fields_of(rows[i]);
    REQUIRE(f.size() == 3);
    if (f[0] == "extreme") ++extremes;
    if (f[0] == "inner") ++inners;
    if (f[0] == "outer") ++outers;
  }
  CHECK(extremes == 2);
  CHECK(inners >= 1);
  CHECK(outers == 5);
}

TEST_CASE("bound-check reports the factor-two identity") {
  const std::string json = scratch("bc.json");
  REQUIRE(run("bound-check --mode discrete --joint 0.3,0.2,0.1,0.4 --nx 2 "
              "--values 0,1 --report " +
              json) == 0);
  const std::string report = read_file(json);
  CHECK(extract_number(report, "ratio") == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(extract_number(report, "psnr_drop_db") ==
        doctest::Approx(3.0102999566398120).epsilon(1e-9));

  // Gaussian mode is seeded and deterministic up to the wall-time entry.
  const std::string g1 = scratch("bcg1.json"), g2 = scratch("bcg2.json");
  REQUIRE(run("bound-check --mode gaussian --rate 0.5 --samples 120000 --seed 9 "
              "--report " + g1) == 0);
  REQUIRE(run("bound-check --mode gaussian --rate 0.5 --samples 120000 --seed 9 "
              "--report " + g2) == 0);
  CHECK(without_wall_time(read_file(g1)) == without_wall_time(read_file(g2)));
  CHECK(std::abs(extract_number(read_file(g1), "ratio") - 2.0) <= 0.05);
}

TEST_CASE("w2 computes the hand instance") {
  const std::string csv = scratch("w2.csv");
  REQUIRE(run("w2 --mode discrete --a-support 0,1 --a-weights 0.5,0.5 "
              "--b-support 0.25,0.75 --b-weights 0.5,0.5 -o " +
              csv + " --report " + scratch("w2.json")) == 0);
  const auto rows = lines_of(read_file(csv));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "cost");
  CHECK(rows[1] == "0.0625");

  CHECK(run("w2 --mode gaussian --mu-a 0 --var-a 1 --mu-b 1 --var-b 2.25 -o " +
            scratch("w2g.csv") + " --report " + scratch("w2g.json")) == 0);
  CHECK(lines_of(read_file(scratch("w2g.csv")))[1] == "1.25");
}

TEST_CASE("thread cap does not change results") {
  const std::string multi = scratch("region_mt.csv"), single = scratch("region_st.csv");
  const std::string tail = "region --q 0.5,0.5 --t 1,0,0,1 --labels 2 "
                           "--channel 0.8,0.3,0.2,0.7 --z-letters 2 --c-points 5 ";
  REQUIRE(run(tail + "-o " + multi + " --report " + scratch("mt.json")) == 0);
  REQUIRE(run(tail + "-o " + single + " --report " + scratch("st.json"),
              "RDC_LAB_THREADS=1 ") == 0);
  CHECK(read_file(multi) == read_file(single));
}
