// Copyright 2026 The qnksim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qnk/cli.hpp"

namespace qnk::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<nlohmann::json> lines_of(const std::string& text) {
    std::vector<nlohmann::json> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(nlohmann::json::parse(line));
    return out;
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("qnksim_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    fs::path dir_;
};

TEST(Wilson, KnownValues) {
    // [DERIVED] z = 1.96, 5/10: centre 0.5, half-width z sqrt(pq/n + z^2/4n^2) / (1 + z^2/n).
    const double z = 1.96, n = 10;
    const double half = z * std::sqrt(0.25 / n + z * z / (4 * n * n)) / (1 + z * z / n);
    const Interval i = wilson_interval(5, 10);
    EXPECT_NEAR(i.low, 0.5 - half, 1e-12);
    EXPECT_NEAR(i.high, 0.5 + half, 1e-12);
    const Interval all = wilson_interval(10, 10);
    EXPECT_NEAR(all.high, 1.0, 1e-12);
    EXPECT_LT(all.low, 1.0);
}

TEST(SizeList, RangesAndLists) {
    EXPECT_EQ(parse_size_list("1..3"), (std::vector<std::size_t>{1, 2, 3}));
    EXPECT_EQ(parse_size_list("2,4"), (std::vector<std::size_t>{2, 4}));
    EXPECT_EQ(parse_size_list("5"), (std::vector<std::size_t>{5}));
}

TEST_F(CliTest, RunPqcDeliversAll) {
    const Result r = call({"run", "pqc-qnk", "--scheme", "YH", "--n", "2", "--trials", "10", "--seed", "7"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("10"), std::string::npos);
}

TEST_F(CliTest, RunBooleanWritesOneRecordPerSession) {
    const fs::path out = dir_ / "b.jsonl";
    const Result r =
        call({"run", "boolean", "--k", "2", "--n", "2", "--seed", "1", "--trials", "3", "--out", out.string()});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    const auto recs = lines_of(slurp(out));
    ASSERT_EQ(recs.size(), 3u);
    for (const auto& j : recs) {
        EXPECT_EQ(j["status"], "delivered");
        EXPECT_LE(j["phase_distance"].get<double>(), 1e-9);
        for (const char* key : {"session_id", "seed", "protocol", "pass_events"}) EXPECT_TRUE(j.contains(key)) << key;
    }
}

TEST_F(CliTest, MissingSeedIsConfigError) {
    EXPECT_EQ(call({"run", "boolean", "--trials", "1"}).code, kExitConfigError);
}

TEST_F(CliTest, UnknownNamesAreConfigErrors) {
    EXPECT_EQ(call({"run", "nope", "--seed", "1"}).code, kExitConfigError);
    EXPECT_EQ(call({"verify", "nope"}).code, kExitConfigError);
    EXPECT_EQ(call({"attack", "nope"}).code, kExitConfigError);
    EXPECT_EQ(call({}).code, kExitConfigError);
}

TEST_F(CliTest, ResourceLimitExit) {
    EXPECT_EQ(call({"run", "commutative-basic", "--n", "20", "--seed", "1"}).code, kExitResourceLimit);
}

TEST_F(CliTest, VerifySuitesPass) {
    EXPECT_EQ(call({"verify", "pqc", "--pairs", "XY,YH,XZ", "--n", "1..3"}).code, kExitOk);
    EXPECT_EQ(call({"verify", "prop5", "--samples", "100"}).code, kExitOk);
    EXPECT_EQ(call({"verify", "lemma1"}).code, kExitOk);
    EXPECT_EQ(call({"verify", "theorem1"}).code, kExitOk);
    EXPECT_EQ(call({"verify", "theorem2"}).code, kExitOk);
    EXPECT_EQ(call({"verify", "prop1"}).code, kExitOk);
    EXPECT_EQ(call({"verify", "holding-condition"}).code, kExitOk);
    EXPECT_EQ(call({"verify", "identified-condition"}).code, kExitOk);
}

TEST_F(CliTest, CorruptedLemmaFails) {
    const Result r = call({"verify", "lemma1", "--corrupt"});
    EXPECT_EQ(r.code, kExitVerificationFailure);
    EXPECT_FALSE((r.out + r.err).empty());
}

TEST_F(CliTest, AttacksCompleteWithExitZero) {
    const Result a = call({"attack", "mim-reflect", "--protocol", "commutative-basic", "--trials", "20"});
    EXPECT_EQ(a.code, kExitOk) << a.err;
    const Result b = call({"attack", "pauli-cipher", "--scheme", "XZ", "--n", "4", "--trials", "20", "--format", "jsonl"});
    EXPECT_EQ(b.code, kExitOk) << b.err;
    const auto recs = lines_of(b.out);
    ASSERT_FALSE(recs.empty());
    EXPECT_EQ(recs.back()["success"], 20);
}

TEST_F(CliTest, IdenticalConfigsGiveIdenticalBytes) {
    const fs::path a = dir_ / "a.jsonl", b = dir_ / "b.jsonl", c = dir_ / "c.jsonl";
    const std::vector<std::string> base = {"run", "mutual-id", "--n", "2", "--m", "2", "--K", "4", "--trials", "6",
                                           "--seed", "3", "--out"};
    auto with = [&](const fs::path& p, std::vector<std::string> extra) {
        std::vector<std::string> args = base;
        args.push_back(p.string());
        args.insert(args.end(), extra.begin(), extra.end());
        return call(args).code;
    };
    ASSERT_EQ(with(a, {}), kExitOk);
    ASSERT_EQ(with(b, {}), kExitOk);
    ASSERT_EQ(with(c, {"--jobs", "3"}), kExitOk);
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(slurp(a), slurp(c));
    EXPECT_FALSE(slurp(a).empty());
}

TEST_F(CliTest, ConfigFileAndFlagOverride) {
    const fs::path cfg = dir_ / "cfg.json", out1 = dir_ / "1.jsonl", out2 = dir_ / "2.jsonl";
    std::ofstream(cfg) << R"({"seed": 5, "trials": 2, "n": 1})";
    ASSERT_EQ(call({"run", "commutative-basic", "--config", cfg.string(), "--out", out1.string()}).code, kExitOk);
    EXPECT_EQ(lines_of(slurp(out1)).size(), 2u);
    ASSERT_EQ(call({"run", "commutative-basic", "--config", cfg.string(), "--trials", "4", "--out", out2.string()}).code,
              kExitOk);
    const auto recs = lines_of(slurp(out2));
    ASSERT_EQ(recs.size(), 4u);
    EXPECT_EQ(recs[0]["seed"].get<std::uint64_t>(), lines_of(slurp(out1))[0]["seed"].get<std::uint64_t>());
}

TEST_F(CliTest, ReflectAdversaryOnUnprotectedProtocol) {
    const Result r = call({"run", "commutative-basic", "--n", "2", "--seed", "2", "--trials", "3", "--adversary",
                           "reflect", "--format", "jsonl"});
    EXPECT_NE(r.code, kExitConfigError) << r.err;
    const auto recs = lines_of(r.out);
    EXPECT_GE(recs.size(), 3u);
}

TEST_F(CliTest, ListNamesEverything) {
    const Result r = call({"list"});
    EXPECT_EQ(r.code, kExitOk);
    for (const char* name : {"pqc-qnk", "mutual-id", "uis", "pauli-cipher", "holding-condition"})
        EXPECT_NE(r.out.find(name), std::string::npos) << name;
}

}  // namespace
}  // namespace qnk::cli
