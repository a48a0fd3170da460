#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

#ifndef XITOOL_PATH
#error "XITOOL_PATH must be defined"
#endif

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

RunResult run(const std::string& args) {
  RunResult r;
  std::string err_file = std::string(std::tmpnam(nullptr)) + "_err";
  std::string cmd = std::string(XITOOL_PATH) + " " + args + " 2>" + err_file;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream ef(err_file);
  std::stringstream ss;
  ss << ef.rdbuf();
  r.err = ss.str();
  std::remove(err_file.c_str());
  return r;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string temp_path(const std::string& suffix) {
  return std::string(std::tmpnam(nullptr)) + suffix;
}

}  // namespace

TEST_CASE("defaults, precedence and config errors") {
  SUBCASE("flag overrides file value") {
    std::string cfg = temp_path(".cfg");
    {
      std::ofstream f(cfg);
      f << "precision_digits = 40\n";
    }
    RunResult r = run("xi eval --z 0 --config " + cfg + " --digits 33");
    CHECK(r.exit_code == 0);
    auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(fields_of(rows[1])[4] == "33");
    std::remove(cfg.c_str());
  }

  SUBCASE("file value used when no flag") {
    std::string cfg = temp_path(".cfg");
    {
      std::ofstream f(cfg);
      f << "precision_digits = 41\n";
    }
    RunResult r = run("xi eval --z 0 --config " + cfg);
    CHECK(r.exit_code == 0);
    CHECK(fields_of(lines_of(r.out)[1])[4] == "41");
    std::remove(cfg.c_str());
  }

  SUBCASE("JSON config with nested keys") {
    std::string cfg = temp_path(".json");
    {
      std::ofstream f(cfg);
      f << "{\"precision_digits\": 35, \"zero_scan\": {\"T\": 20, \"step\": 0.05}}\n";
    }
    RunResult r = run("xi eval --z 0 --config " + cfg);
    CHECK(r.exit_code == 0);
    CHECK(fields_of(lines_of(r.out)[1])[4] == "35");
    std::remove(cfg.c_str());
  }

  SUBCASE("unknown key is a config error naming the key") {
    std::string cfg = temp_path(".cfg");
    {
      std::ofstream f(cfg);
      f << "diggits = 40\n";
    }
    RunResult r = run("xi eval --z 0 --config " + cfg);
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("diggits") != std::string::npos);
    std::remove(cfg.c_str());
  }

  SUBCASE("missing config file") {
    RunResult r = run("xi eval --z 0 --config /nonexistent/path.cfg");
    CHECK(r.exit_code == 2);
  }

  SUBCASE("digits below the floor is a config error") {
    RunResult r = run("xi eval --z 0 --digits 10");
    CHECK(r.exit_code == 2);
  }
}

TEST_CASE("xi commands") {
  SUBCASE("eval agrees across routes through the CLI") {
    RunResult a = run("xi eval --z 5 --route reference --digits 35");
    RunResult b = run("xi eval --z 5 --route fourier --digits 35");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    std::string va = fields_of(lines_of(a.out)[1])[2];
    std::string vb = fields_of(lines_of(b.out)[1])[2];
    CHECK(va.substr(0, 22) == vb.substr(0, 22));
  }

  SUBCASE("domain error exits 4") {
    RunResult r = run("xi eval --z 0,3 --route fourier --digits 30");
    CHECK(r.exit_code == 4);
    CHECK(r.err.find("RouteDomainError") != std::string::npos);
  }

  SUBCASE("grid minima sit at the zero finder's zeros") {
    RunResult g = run("xi grid --from 10 --to 30 --points 201 --digits 30");
    REQUIRE(g.exit_code == 0);
    auto rows = lines_of(g.out);
    REQUIRE(rows.size() == 202);
    // Interior minima below 1e-6 of the column max.
    std::vector<double> z, v;
    for (size_t i = 1; i < rows.size(); ++i) {
      auto f = fields_of(rows[i]);
      z.push_back(std::stod(f[0]));
      v.push_back(std::stod(f[1]));
    }
    std::vector<double> minima;
    for (size_t i = 1; i + 1 < v.size(); ++i)
      if (v[i] < v[i - 1] && v[i] < v[i + 1]) minima.push_back(z[i]);
    REQUIRE(minima.size() == 3);  // 14.13, 21.02, 25.01
    CHECK(std::abs(minima[0] - 14.134725) < 0.1);
    CHECK(std::abs(minima[1] - 21.022040) < 0.1);
    CHECK(std::abs(minima[2] - 25.010858) < 0.1);
  }

  SUBCASE("zeros command writes and reuses the cache") {
    std::string cache = temp_path("_cache.json");
    RunResult r1 = run("xi zeros --scan-T 16 --digits 30 --cache " + cache);
    REQUIRE(r1.exit_code == 0);
    auto rows = lines_of(r1.out);
    REQUIRE(rows.size() == 2);  // only 14.13 below 16
    CHECK(fields_of(rows[1])[1].substr(0, 9) == "14.134725");
    // Second run must reuse the cache (and be byte-identical).
    RunResult r2 = run("xi zeros --scan-T 16 --digits 30 --cache " + cache);
    CHECK(r2.exit_code == 0);
    CHECK(r2.out == r1.out);
    std::remove(cache.c_str());
  }

  SUBCASE("coeffs are positive and decreasing") {
    RunResult r = run("xi coeffs --n 3 --digits 30");
    REQUIRE(r.exit_code == 0);
    auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 5);
    double prev = 1e9;
    for (size_t i = 1; i < rows.size(); ++i) {
      double a = std::stod(fields_of(rows[i])[1]);
      CHECK(a > 0);
      CHECK(a < prev);
      prev = a;
    }
  }

  SUBCASE("product reconstruction error is small") {
    std::string cache = temp_path("_cache.json");
    RunResult r = run("xi product --z 2 --T 40 --digits 30 --scan-step 0.05 --cache " + cache);
    REQUIRE(r.exit_code == 0);
    // The product over zeros up to a finite height converges slowly; at this
    // cutoff the reconstruction is good to a few percent.
    CHECK(std::stod(fields_of(lines_of(r.out)[1])[3]) < 0.05);
    std::remove(cache.c_str());
  }
}

TEST_CASE("airy commands") {
  SUBCASE("grid magnitude profile has all zeros on the negative axis") {
    RunResult r = run("airy grid --from -15 --to 5 --points 401 --digits 30");
    REQUIRE(r.exit_code == 0);
    auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 402);
    double vmax = 0;
    std::vector<std::pair<double, double>> zv;
    for (size_t i = 1; i < rows.size(); ++i) {
      auto f = fields_of(rows[i]);
      zv.emplace_back(std::stod(f[0]), std::stod(f[1]));
      vmax = std::max(vmax, zv.back().second);
    }
    size_t deep_minima = 0;
    for (size_t i = 1; i + 1 < zv.size(); ++i)
      if (zv[i].second < zv[i - 1].second && zv[i].second < zv[i + 1].second &&
          zv[i].second < 5e-2 * vmax) {
        ++deep_minima;
        CHECK(zv[i].first < 0);
      }
    CHECK(deep_minima >= 6);
  }

  SUBCASE("zeros match the finder within one grid step") {
    RunResult z = run("airy zeros --count 3 --digits 30");
    REQUIRE(z.exit_code == 0);
    auto rows = lines_of(z.out);
    REQUIRE(rows.size() == 4);
    CHECK(fields_of(rows[1])[1].substr(0, 8) == "-2.33810");
  }
}

TEST_CASE("module one-liners run end to end") {
  CHECK(run("brane eval --kernel gaussian --z \"0;1\" --digits 30").exit_code == 0);
  RunResult pq = run("pq sk --p 3 --digits 30");
  REQUIRE(pq.exit_code == 0);
  CHECK(lines_of(pq.out).size() == 3);  // s_1 and the leading coefficient
  CHECK(run("pq xi-p --p 3 --z 1 --digits 30").exit_code == 0);
  CHECK(run("pq residual --p 3 --z 1 --digits 30").exit_code == 0);
  CHECK(run("pq orthpoly --p 7 --n 3 --digits 30").exit_code == 0);
  CHECK(run("primes euler --z 0,-2.5 --pmax 10000 --digits 30").exit_code == 0);
  CHECK(run("gamma recfact --z 3 --route product --terms 1000 --digits 30").exit_code == 0);

  // Inadmissible truncation order surfaces as a numeric-domain exit.
  CHECK(run("pq sk --p 5 --digits 30").exit_code == 4);
}

TEST_CASE("monte carlo commands and reproducibility") {
  RunResult a = run("mc expect --N 2 --obs det_shift --z 1 --samples 2000 --seed 99");
  RunResult b = run("mc expect --N 2 --obs det_shift --z 1 --samples 2000 --seed 99");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  auto f = fields_of(lines_of(a.out)[1]);
  double mean = std::stod(f[2]);
  double se = std::stod(f[4]);
  CHECK(std::abs(mean - 0.5) < 4 * se);

  RunResult v = run("mc variance --N-list 4,8,16,32 --samples 5000 --seed 7");
  REQUIRE(v.exit_code == 0);
  double slope = std::stod(fields_of(lines_of(v.out)[1])[2]);
  CHECK(slope > -2.4);
  CHECK(slope < -1.6);

  RunResult rr = run("mc resolvent --N 16 --from 2.5 --to 6 --points 8 --samples 5000");
  REQUIRE(rr.exit_code == 0);
  CHECK(std::stod(fields_of(lines_of(rr.out)[1])[2]) < 1e-2);

  CHECK(run("mc expect --N 2 --obs det_shift --z 1 --samples 10").exit_code == 3);
}

TEST_CASE("output artifacts: formats, quoting, atomic files, manifest") {
  SUBCASE("json format") {
    RunResult r = run("primes count --l 30 --format json --digits 30");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("\"average\"") != std::string::npos);
    CHECK(r.out.find("12.41666666") != std::string::npos);
  }

  SUBCASE("file output plus manifest with effective config") {
    std::string out = temp_path(".csv");
    RunResult r = run("primes count --l 10 --digits 31 --output " + out);
    REQUIRE(r.exit_code == 0);
    std::ifstream f(out);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str().find("5.3333") != std::string::npos);
    std::ifstream m(out + ".manifest.json");
    REQUIRE(m.good());
    std::stringstream ms;
    ms << m.rdbuf();
    CHECK(ms.str().find("\"precision_digits\": 31") != std::string::npos);
    CHECK(ms.str().find("wall_ms") != std::string::npos);
    std::remove(out.c_str());
    std::remove((out + ".manifest.json").c_str());
  }

  SUBCASE("quoted eigenvalue list survives the CSV round trip") {
    RunResult r = run("brane eval --kernel gaussian --z \"0;1\" --digits 30");
    REQUIRE(r.exit_code == 0);
    auto fields = fields_of(lines_of(r.out)[1]);
    CHECK(fields[1] == "0;1");
  }
}
