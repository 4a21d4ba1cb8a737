// End-to-end tests of the command-line binary: every documented subcommand,
// the exit-code contract (0 verified/success, 1 negative verdict, 2 usage,
// 3 invalid mathematical input), and byte-stable JSON output.

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

using nlohmann::json;

struct RunResult {
  int exitCode = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& envPrefix = "") {
  std::string cmd = envPrefix + " " + std::string(TEST_CLI_PATH) + " " + args +
                    " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json run_json(const std::string& args, int wantExit) {
  RunResult r = run(args);
  INFO("command: " << args << "\noutput: " << r.out);
  REQUIRE(r.exitCode == wantExit);
  json j = json::parse(r.out);
  REQUIRE(j.at("schemaVersion") == 1);
  return j;
}

}  // namespace

TEST_CASE("classify subcommand") {
  SECTION("full classification with a realized group") {
    json j = run_json("classify --ell 1/6 --B 0 --g2 4 --g3 0", 0);
    CHECK(j.at("admissible") == json::array({"S4", "A5"}));
    CHECK(j.at("realized") == "S4");
    CHECK(j.at("J") == "1");
    CHECK(j.at("closureSize") == 24);
    CHECK(j.at("classical") == false);
  }

  SECTION("inadmissible ell") {
    json j = run_json("classify --ell 1/3", 0);
    CHECK(j.at("admissible").empty());
    CHECK(!j.contains("realized"));
  }

  SECTION("curve scope") {
    json j = run_json("classify --ell 1/4 --curve", 0);
    CHECK(j.at("pairs") == json::array({json::array({"A4", "S4"})}));
  }

  SECTION("exit codes") {
    CHECK(run("classify --ell abc").exitCode == 2);
    CHECK(run("classify").exitCode == 2);           // missing required
    CHECK(run("classify --ell 1/6 --B 0").exitCode == 2);  // needs g2, g3
    CHECK(run("classify --ell 1/6 --B 0 --g2 3 --g3 1").exitCode == 3);
  }
}

TEST_CASE("verify-pullback subcommand") {
  SECTION("the named certificates verify") {
    for (const char* name : {"harmonic-quadratic", "equianharmonic-cubic",
                             "prop32-quintic", "klein-caseXIV"}) {
      json j = run_json(std::string("verify-pullback --named ") + name, 0);
      CHECK(j.at("verified") == true);
      CHECK(j.at("name") == name);
      CHECK(!j.contains("witness"));
    }
  }

  SECTION("family member selection") {
    CHECK(run("verify-pullback --named harmonic-quadratic --ell 2/5").exitCode == 0);
    CHECK(run("verify-pullback --named prop32-quintic --ell 1/5").exitCode == 2);
  }

  SECTION("explicit negative control carries the witness") {
    json j = run_json(
        "verify-pullback --ell 1/6 --B 1/7 --g2 4 --g3 0 "
        "--triple 1/2,1/3,1/4 --xi \"(x^2-1)/x^2\"",
        1);
    CHECK(j.at("verified") == false);
    CHECK(j.at("witness") == "(-1/28)/(x^3 - x)");
  }

  SECTION("usage errors") {
    CHECK(run("verify-pullback --named harmonic-quadratic --B 1/7").exitCode == 2);
    CHECK(run("verify-pullback --named no-such-map").exitCode == 2);
    CHECK(run("verify-pullback --ell 1/6 --B 0").exitCode == 2);
  }
}

TEST_CASE("monodromy subcommand") {
  SECTION("icosahedral instance") {
    json j = run_json("monodromy --ell 1/10 --B 0 --g2 0 --g3 4", 0);
    CHECK(j.at("group") == "A5");
    CHECK(j.at("closureSize") == 60);
    CHECK(j.at("orderCounts") ==
          json({{"1", 1}, {"2", 15}, {"3", 20}, {"5", 24}}));
    CHECK(std::stod(j.at("maxResidual").get<std::string>()) < 1e-8);
    CHECK(std::stod(j.at("productDefect").get<std::string>()) < 1e-8);
    CHECK(j.at("generators").size() == 4);
  }

  SECTION("curve subgroup") {
    json j = run_json("monodromy --ell 1/4 --B 0 --g2 0 --g3 4 --curve", 0);
    CHECK(j.at("group") == "A4");
    CHECK(j.at("closureSize") == 12);
    CHECK(j.at("baseGroup") == "S4");
  }

  SECTION("infinite monodromy is a negative verdict") {
    json j = run_json("monodromy --ell 1/3 --B 0 --g2 4 --g3 0", 1);
    CHECK(j.at("group") == "infinite-or-undetermined");
  }

  SECTION("exit codes") {
    CHECK(run("monodromy --ell 1/6").exitCode == 2);
    CHECK(run("monodromy --ell 1/6 --B 0 --g2 0 --g3 0").exitCode == 3);
  }
}

TEST_CASE("solve subcommand") {
  SECTION("quintic case at the reference point") {
    json j = run_json("solve --case 3 --x0 3 --branch 0", 0);
    CHECK(j.at("case") == "3");
    CHECK(j.at("branchCount") == 60);
    for (const auto& r : j.at("residuals"))
      CHECK(std::stod(r.get<std::string>()) < 1e-8);
    CHECK(std::stod(j.at("definingDefect").get<std::string>()) < 1e-9);
  }

  SECTION("complex evaluation point") {
    json j = run_json("solve --case 2a --x0 2.2+0.25i --branch 5", 0);
    CHECK(j.at("branchCount") == 24);
  }

  SECTION("residual grid CSV") {
    RunResult r = run("solve --case 1 --grid 4");
    REQUIRE(r.exitCode == 0);
    std::istringstream in(r.out);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "re,im,tau_re,tau_im,residual_u1,residual_u2");
    int rows = 0;
    while (std::getline(in, line)) {
      ++rows;
      auto lastComma = line.find_last_of(',');
      CHECK(std::stod(line.substr(lastComma + 1)) < 1e-8);
    }
    // grid points whose tracking path crosses a branch point are skipped
    CHECK(rows >= 12);
    CHECK(rows <= 16);
  }

  SECTION("exit codes") {
    CHECK(run("solve --case 3 --x0 3 --branch 60").exitCode == 2);
    CHECK(run("solve --case 4 --x0 3 --branch 0").exitCode == 2);
    CHECK(run("solve --case 1 --x0 1 --branch 0").exitCode == 3);  // singular
    CHECK(run("solve --case 1 --grid 1").exitCode == 2);
    CHECK(run("solve --case 1").exitCode == 2);  // neither x0 nor grid
  }
}

TEST_CASE("schwarz subcommand") {
  SECTION("the table") {
    json j = run_json("schwarz", 0);
    REQUIRE(j.at("rows").size() == 14);
    CHECK(j["rows"][0].at("case") == "II");
    CHECK(j["rows"][0].at("group") == "A4");
    CHECK(j["rows"][0].at("order") == 12);
    CHECK(j["rows"][13].at("case") == "XV");
    CHECK(j["rows"][13].at("group") == "A5");
  }

  SECTION("lookup verdicts") {
    json j = run_json("schwarz --triple 1/2,1/3,6/5", 0);
    CHECK(j.at("algebraic") == true);
    CHECK(j.at("case") == "VI");

    json bad = run_json("schwarz --triple 1/2,1/3,1/7", 1);
    CHECK(bad.at("algebraic") == false);

    CHECK(run("schwarz --triple 1,1/2,1/3").exitCode == 3);  // logarithmic
    CHECK(run("schwarz --triple 1/2,1/3").exitCode == 2);
  }
}

TEST_CASE("instances subcommand") {
  json j = run_json("instances", 0);
  REQUIRE(j.at("instances").size() == 5);
  std::vector<std::string> labels, js;
  for (const auto& row : j["instances"]) {
    labels.push_back(row.at("case"));
    js.push_back(row.at("J"));
  }
  CHECK(labels == std::vector<std::string>{"1", "2a", "2b", "2c", "3"});
  CHECK(js == std::vector<std::string>{"1", "0", "0", "0", "-80"});
  CHECK(j["instances"][4].at("B") == "-1/9");
}

TEST_CASE("output contract") {
  SECTION("byte-identical across runs") {
    for (const char* cmd :
         {"classify --ell 1/6 --B 0 --g2 4 --g3 0",
          "monodromy --ell 1/10 --B 0 --g2 0 --g3 4",
          "solve --case 3 --x0 3 --branch 0"}) {
      RunResult a = run(cmd), b = run(cmd);
      CHECK(a.exitCode == b.exitCode);
      CHECK(a.out == b.out);
    }
  }

  SECTION("text format works before and after the subcommand") {
    RunResult pre = run("--format text instances");
    RunResult post = run("instances --format text");
    CHECK(pre.exitCode == 0);
    CHECK(post.exitCode == 0);
    CHECK(pre.out == post.out);
    CHECK(pre.out.find("schemaVersion") == std::string::npos);
  }

  SECTION("config file via the environment") {
    std::string path = "/tmp/lamemono_cli_test_config.json";
    {
      std::ofstream f(path);
      f << "{\"matchTol\": 1e-5, \"format\": \"json\"}\n";
    }
    RunResult ok = run("classify --ell 1/3", "LAMEMONO_CONFIG=" + path);
    CHECK(ok.exitCode == 0);
    {
      std::ofstream f(path);
      f << "{\"matchTol\": -1}\n";
    }
    RunResult bad = run("classify --ell 1/3", "LAMEMONO_CONFIG=" + path);
    CHECK(bad.exitCode == 2);
    std::remove(path.c_str());
  }
}
