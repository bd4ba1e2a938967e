#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ssa/json.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = SSA_CLI_PATH;
const std::string kFixtures = SSA_FIXTURE_DIR;

int run_cli(const std::string& args, std::string* output = nullptr) {
    std::string out_file = (fs::temp_directory_path() / "ssa_cli_out.txt").string();
    std::string cmd = kCli + " " + args + " > " + out_file + " 2>&1";
    int status = std::system(cmd.c_str());
    if (output) {
        std::ifstream in(out_file);
        std::ostringstream ss;
        ss << in.rdbuf();
        *output = ss.str();
    }
#ifdef WIFEXITED
    if (WIFEXITED(status)) return WEXITSTATUS(status);
#endif
    return status;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string tmp_path(const std::string& name) {
    return (fs::temp_directory_path() / name).string();
}

}  // namespace

TEST(Cli, MainExamplePasses) {
    std::string out;
    EXPECT_EQ(run_cli("example --main", &out), 0);
    nlohmann::json j = nlohmann::json::parse(out);
    EXPECT_EQ(j.at("x_prime").at("degree"), 3);
    EXPECT_EQ(j.at("x_dprime").at("degree"), 4);
    EXPECT_TRUE(j.at("report").at("pass").get<bool>());
}

TEST(Cli, CertifyFixture) {
    std::string cert_path = tmp_path("cert_three_tori.json");
    std::string out;
    EXPECT_EQ(run_cli("certify " + kFixtures + "/three-genus1.json -o " + cert_path, &out), 0);
    EXPECT_NE(out.find("PASS"), std::string::npos);
    nlohmann::json j = nlohmann::json::parse(read_file(cert_path));
    EXPECT_EQ(j.at("x_prime").at("degree"), 9);
    EXPECT_EQ(j.at("x_dprime").at("degree"), 13);

    // re-verify the emitted certificate through the verify subcommand
    EXPECT_EQ(run_cli("verify " + cert_path, &out), 0);
    EXPECT_NE(out.find("PASS"), std::string::npos);
}

TEST(Cli, CertifyRealizedRoundTrip) {
    std::string cert_path = tmp_path("cert_realized.json");
    EXPECT_EQ(run_cli("certify " + kFixtures + "/three-genus1.json --realize --seed 3 -o " +
                      cert_path),
              0);
    nlohmann::json j = nlohmann::json::parse(read_file(cert_path));
    EXPECT_TRUE(j.at("x_dprime").contains("realizations"));
    EXPECT_EQ(run_cli("verify " + cert_path), 0);
}

TEST(Cli, DeterministicOutput) {
    std::string a = tmp_path("cert_a.json"), b = tmp_path("cert_b.json");
    ASSERT_EQ(run_cli("certify " + kFixtures + "/three-genus1.json --realize --seed 7 -o " + a), 0);
    ASSERT_EQ(run_cli("certify " + kFixtures + "/three-genus1.json --realize --seed 7 -o " + b), 0);
    EXPECT_EQ(read_file(a), read_file(b));
    ASSERT_FALSE(read_file(a).empty());
}

TEST(Cli, TamperedCertificateFails) {
    std::string cert_path = tmp_path("cert_tampered.json");
    ASSERT_EQ(run_cli("certify " + kFixtures + "/three-genus1.json -o " + cert_path), 0);
    nlohmann::json j = nlohmann::json::parse(read_file(cert_path));
    j["x_prime"]["degree"] = 10;
    std::ofstream(cert_path) << j.dump(2);
    std::string out;
    EXPECT_EQ(run_cli("verify " + cert_path, &out), 1);
    EXPECT_NE(out.find("FAIL"), std::string::npos);
}

TEST(Cli, RealizeAndLift) {
    std::string rep_path = tmp_path("rep.json");
    EXPECT_EQ(run_cli("realize --genus 1 --boundary 1 --degree 3 --partitions 3 --seed 1 -o " +
                      rep_path),
              0);
    std::string out;
    EXPECT_EQ(run_cli("lift --rep " + rep_path + " --word c1", &out), 0);
    nlohmann::json j = nlohmann::json::parse(out);
    EXPECT_EQ(j.at("preimage_degrees"), nlohmann::json::array({3}));
}

TEST(Cli, RealizeInfeasibleExitsOne) {
    // type {2} on a one-holed torus violates the parity criterion
    EXPECT_EQ(run_cli("realize --genus 1 --boundary 1 --degree 2 --partitions 2"), 1);
}

TEST(Cli, EnumerateTable) {
    std::string out;
    EXPECT_EQ(run_cli("enumerate --genus 1 --boundary 1 --degree 2", &out), 0);
    EXPECT_NE(out.find("tuples: 4"), std::string::npos);
    EXPECT_NE(out.find("1,1 | "), std::string::npos);
}

TEST(Cli, MalformedInputExitsTwo) {
    std::string bad_path = tmp_path("bad.json");
    std::ofstream(bad_path) << "{ not json";
    EXPECT_EQ(run_cli("certify " + bad_path), 2);
    EXPECT_EQ(run_cli("certify " + tmp_path("does_not_exist.json")), 2);
    EXPECT_EQ(run_cli("frobnicate"), 2);
    EXPECT_EQ(run_cli("example"), 2);  // no example selected

    std::string wrong_shape = tmp_path("wrong_shape.json");
    std::ofstream(wrong_shape) << "{\"circles\": [\"c\"]}";
    EXPECT_EQ(run_cli("certify " + wrong_shape), 2);
}

TEST(Cli, BudgetExceededExitsThree) {
    EXPECT_EQ(run_cli("--budget 5 enumerate --genus 1 --boundary 1 --degree 4"), 3);
    EXPECT_EQ(run_cli("--budget 1 realize --genus 1 --boundary 1 --degree 8 "
                      "--partitions 1,1,1,1,1,1,1,1"),
              3);
}

TEST(Cli, NoPartialOutputOnFailure) {
    std::string out_path = tmp_path("never_written.json");
    std::error_code ec;
    fs::remove(out_path, ec);
    EXPECT_EQ(run_cli("realize --genus 1 --boundary 1 --degree 2 --partitions 2 -o " + out_path),
              1);
    EXPECT_FALSE(fs::exists(out_path));
}

TEST(Cli, DotOutput) {
    std::string cert_path = tmp_path("cert_dot.json");
    ASSERT_EQ(run_cli("example --main -o " + cert_path), 0);
    std::string out;
    EXPECT_EQ(run_cli("dot " + cert_path, &out), 0);
    EXPECT_NE(out.find("graph certificate {"), std::string::npos);
    EXPECT_NE(out.find("cluster_x_prime"), std::string::npos);
}
