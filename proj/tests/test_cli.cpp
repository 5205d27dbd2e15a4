// SPDX-License-Identifier: Apache-2.0
//
// jacobi-mimo: truncated-unitary MIMO channel analysis library
// Copyright (C) 2026 The jacobi-mimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "jmimo/analytic.hpp"
#include "jmimo/errors.hpp"

using namespace jmimo;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string> &args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string &text)
{
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(text);
    for (std::string line; std::getline(ss, line);) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');)
            cells.push_back(c);
        if (!line.empty() && line.back() == ',')
            cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

double num(const std::string &s) { return std::stod(s); }

fs::path scratch(const std::string &name)
{
    const fs::path dir = fs::temp_directory_path() / "jmimo_test_cli";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path &p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("grid parsing")
{
    CHECK(cli::parse_grid("0:30:1").size() == 31);
    CHECK(cli::parse_grid("0:1:0.1").size() == 11);
    CHECK(cli::parse_grid("0:1:0.1").back() == Catch::Approx(1.0));
    CHECK(cli::parse_grid("0:10:3") == std::vector<double>{0, 3, 6, 9});
    CHECK(cli::parse_grid("1,2.5,-3") == std::vector<double>{1, 2.5, -3});
    CHECK(cli::parse_grid("7") == std::vector<double>{7});
    CHECK_THROWS_AS(cli::parse_grid(""), ContractViolation);
    CHECK_THROWS_AS(cli::parse_grid("1:2"), ContractViolation);
    CHECK_THROWS_AS(cli::parse_grid("2:1:1"), ContractViolation);
    CHECK_THROWS_AS(cli::parse_grid("0:1:0"), ContractViolation);
    CHECK_THROWS_AS(cli::parse_grid("a,b"), ContractViolation);
    CHECK_THROWS_AS(cli::parse_grid("nan"), ContractViolation);
}

TEST_CASE("number formatting and hashing")
{
    CHECK(cli::format_number(0.0) == "0");
    CHECK(cli::format_number(-0.0) == "0");
    CHECK(cli::format_number(0.5) == "0.5");
    CHECK(cli::format_number(2.362679742) == "2.362679742");
    CHECK(cli::format_number(1e-20) == "1e-20");
    CHECK(cli::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("ergodic subcommand")
{
    const Result r = run({"ergodic", "--mt", "2", "--mr", "2", "--m", "4", "--rho-db", "0:30:1", "--method", "analytic"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 32);
    CHECK(rows[0] == std::vector<std::string>{"rho_db", "capacity_bits", "capacity_normalized", "stderr"});
    const double last = num(rows.back()[2]);
    CHECK(last < 2.0);
    CHECK(last > 1.0);
    CHECK(rows[1][3].empty());

    const Result a = run({"ergodic", "--mt", "2", "--mr", "2", "--m", "4", "--rho-db", "0,10,20"});
    const Result mc = run({"ergodic", "--mt", "2", "--mr", "2", "--m", "4", "--rho-db", "0,10,20", "--method", "mc",
                           "--trials", "20000", "--seed", "3"});
    REQUIRE(mc.code == 0);
    const auto ra = parse_csv(a.out);
    const auto rm = parse_csv(mc.out);
    for (std::size_t i = 1; i < ra.size(); ++i)
        CHECK(std::abs(num(ra[i][1]) - num(rm[i][1])) < 3 * num(rm[i][3]));

    const auto pinned = parse_csv(run({"ergodic", "--mt", "3", "--mr", "3", "--m", "4", "--rho-db", "-10:30:5"}).out);
    for (std::size_t i = 1; i < pinned.size(); ++i)
        CHECK(num(pinned[i][2]) >= 2.0);
}

TEST_CASE("outage subcommand")
{
    const auto rows = parse_csv(
        run({"outage", "--mt", "2", "--mr", "2", "--m", "3", "--rho-db", "20", "--r", "0:0.95:0.05", "--trials", "2000"})
            .out);
    REQUIRE(rows.size() == 21);
    CHECK(rows[0] == std::vector<std::string>{"r", "outage", "stderr"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i][1] == "0");
        CHECK(rows[i][2] == "0");
    }

    double prev = -1.0;
    for (int m = 4; m <= 7; ++m) {
        const auto r = parse_csv(run({"outage", "--mt", "2", "--mr", "2", "--m", std::to_string(m), "--rho-db", "20",
                                      "--r", "0.5", "--trials", "20000", "--seed", "1"})
                                     .out);
        const double p = num(r[1][1]);
        CHECK(p >= prev - 3 * num(r[1][2]));
        prev = p;
    }

    const auto mc = parse_csv(run({"outage", "--mt", "1", "--mr", "2", "--m", "4", "--rho-db", "10", "--rate-bits",
                                   "0.5,1,2", "--trials", "50000"})
                                  .out);
    const auto an = parse_csv(
        run({"outage", "--mt", "1", "--mr", "2", "--m", "4", "--rho-db", "10", "--rate-bits", "0.5,1,2", "--method", "analytic"})
            .out);
    REQUIRE(mc[0][0] == "rate_bits");
    for (std::size_t i = 1; i < mc.size(); ++i) {
        CHECK(num(an[i][1]) == Catch::Approx(outage_single_mode(2, 4, num(an[i][0]), 10.0)).epsilon(1e-9));
        CHECK(std::abs(num(mc[i][1]) - num(an[i][1])) < 3 * num(mc[i][2]));
    }

    CHECK(run({"outage", "--mt", "2", "--mr", "2", "--m", "3", "--rho-db", "20"}).code == 2);
    CHECK(run({"outage", "--mt", "2", "--mr", "2", "--m", "4", "--rho-db", "20", "--r", "1", "--method", "analytic"})
              .code == 2);
}

TEST_CASE("rho-norm subcommand")
{
    const Result r = run({"rho-norm", "--m", "4,16,64", "--epsilon", "1e-3,1e-5"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(rows[0] == std::vector<std::string>{"m", "mr", "mr_over_m", "epsilon", "rho_norm_db"});
    REQUIRE(rows.size() == 1 + 2 * (4 + 16 + 64));
    std::map<std::tuple<int, int, double>, double> table;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const int m = std::stoi(rows[i][0]);
        const int mr = std::stoi(rows[i][1]);
        const double eps = num(rows[i][3]);
        table[{m, mr, eps}] = num(rows[i][4]);
        if (mr == m)
            CHECK(rows[i][4] == "0");
    }
    for (int m : {4, 16, 64})
        for (int mr = 1; mr < m; ++mr)
            CHECK(table[{m, mr, 1e-5}] > table[{m, mr, 1e-3}]);
    CHECK(table[{64, 16, 1e-3}] < table[{16, 4, 1e-3}]);
    CHECK(table[{64, 32, 1e-5}] < table[{16, 8, 1e-5}]);

    CHECK(run({"rho-norm", "--m", "4", "--mr", "5", "--epsilon", "0.1"}).code == 2);
}

TEST_CASE("dmt subcommand")
{
    const fs::path js = scratch("dmt.json");
    const Result r = run({"dmt", "--mt", "4", "--mr", "4", "--m", "8", "--json", js.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out == "r,d\n0,16\n1,9\n2,4\n3,1\n4,0\n");
    const std::string doc = slurp(js);
    CHECK(doc.find("\"infinite_below\"") != std::string::npos);

    const Result pinned = run({"dmt", "--mt", "3", "--mr", "3", "--m", "4"});
    REQUIRE(pinned.code == 0);
    CHECK(pinned.out.rfind("r,d\n2,", 0) == 0);
}

TEST_CASE("simulation subcommands")
{
    const Result rep = run({"repetition", "--mt", "1", "--mr", "1", "--m", "2", "--rho-db", "10,20", "--trials", "2000"});
    REQUIRE(rep.code == 0);
    CHECK(parse_csv(rep.out).size() == 3);

    const Result ala =
        run({"alamouti", "--m", "2,3,4", "--rho-db", "20", "--r", "0.5", "--trials", "2000", "--estimator", "conditional"});
    REQUIRE(ala.code == 0);
    const auto rows = parse_csv(ala.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[1][3] == "0");
    CHECK(rows[2][3] == "0");
    CHECK(num(rows[3][3]) > 0.0);

    const Result fb = run({"feedback", "--mt", "2", "--mr", "2", "--m", "3", "--n", "500", "--frames", "4"});
    REQUIRE(fb.code == 0);
    const auto f = parse_csv(fb.out);
    REQUIRE(f.size() == 2);
    CHECK(f[0][0] == "k");
    CHECK(num(f[1][8]) == Catch::Approx(10.0).epsilon(0.1));

    const Result bad = run({"feedback", "--mt", "2", "--mr", "2", "--m", "4"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("mt + mr > m") != std::string::npos);

    const Result ray = run({"rayleigh", "--mt", "2", "--mr", "2", "--m", "8,16", "--rho-bar-db", "20", "--trials", "2000"});
    REQUIRE(ray.code == 0);
    const auto rr = parse_csv(ray.out);
    REQUIRE(rr.size() == 3);
    CHECK(rr[0][2] == "capacity_jacobi_bits");
    CHECK(rr[0][3] == "capacity_rayleigh_bits");
}

TEST_CASE("usage errors")
{
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    const Result dims = run({"ergodic", "--mt", "3", "--mr", "2", "--m", "2", "--rho-db", "0"});
    CHECK(dims.code == 2);
    CHECK_FALSE(dims.err.empty());
    CHECK(run({"ergodic", "--mt", "2", "--mr", "2", "--m", "4", "--rho-db", "x"}).code == 2);
    CHECK(run({"ergodic", "--mt", "2", "--mr", "2", "--m", "4"}).code == 2);
}

TEST_CASE("help documents units")
{
    const std::vector<std::string> subs = {"ergodic", "outage", "rho-norm", "dmt", "repetition",
                                           "alamouti", "feedback", "rayleigh", "replay"};
    for (const std::string &s : subs) {
        const Result h = run({s, "--help"});
        CHECK(h.code == 0);
        if (s == "dmt" || s == "replay")
            continue;
        const bool has_units = h.out.find("dB") != std::string::npos || h.out.find("bits") != std::string::npos ||
                               h.out.find("linear") != std::string::npos;
        CHECK(has_units);
    }
}

TEST_CASE("determinism across runs and workers")
{
    const std::vector<std::vector<std::string>> cmds = {
        {"ergodic", "--mt", "2", "--mr", "2", "--m", "5", "--rho-db", "0,10", "--method", "mc", "--trials", "3000"},
        {"outage", "--mt", "2", "--mr", "2", "--m", "5", "--rho-db", "10", "--r", "0.5,1", "--trials", "3000"},
        {"repetition", "--mt", "1", "--mr", "2", "--m", "4", "--rho-db", "10", "--trials", "500"},
        {"alamouti", "--m", "4", "--rho-db", "10", "--trials", "3000"},
        {"rayleigh", "--mt", "2", "--mr", "2", "--m", "8", "--rho-bar-db", "10", "--trials", "1000"},
    };
    for (auto cmd : cmds) {
        cmd.insert(cmd.end(), {"--seed", "7"});
        const Result a = run(cmd);
        const Result b = run(cmd);
        REQUIRE(a.code == 0);
        CHECK(a.out == b.out);
        auto par = cmd;
        par.insert(par.end(), {"--workers", "8"});
        CHECK(run(par).out == a.out);
    }
    const std::vector<std::string> fb = {"feedback", "--mt", "2", "--mr", "2", "--m", "3", "--n", "200", "--seed", "7"};
    CHECK(run(fb).out == run(fb).out);
}

TEST_CASE("manifest and replay")
{
    const fs::path csv = scratch("ergodic.csv");
    const fs::path man = scratch("ergodic.json");
    const Result r = run({"ergodic", "--mt", "2", "--mr", "2", "--m", "5", "--rho-db", "0,10", "--method", "mc",
                          "--trials", "2000", "--seed", "7", "--out", csv.string(), "--manifest", man.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    const std::string original = slurp(csv);
    const std::string manifest = slurp(man);
    CHECK(manifest.find("\"output_sha256\"") != std::string::npos);
    CHECK(manifest.find("\"master_seed\": 7") != std::string::npos);
    CHECK(manifest.find(csv.string()) == std::string::npos);

    const Result rep = run({"replay", man.string()});
    CHECK(rep.code == 0);
    CHECK(rep.out == original);

    std::string tampered = manifest;
    const auto pos = tampered.find("\"output_sha256\": \"") + 18;
    tampered[pos] = tampered[pos] == '0' ? '1' : '0';
    const fs::path bad = scratch("tampered.json");
    std::ofstream(bad) << tampered;
    const Result mis = run({"replay", bad.string()});
    CHECK(mis.code == 1);
    CHECK(mis.err.find("mismatch") != std::string::npos);

    CHECK(run({"replay", scratch("missing.json").string()}).code == 2);
}
