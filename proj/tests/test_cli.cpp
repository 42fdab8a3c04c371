#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args) {
    const std::string cmd = std::string(WPLAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WEXITSTATUS(status);
}

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    return dir;
}

} // namespace

TEST(Cli, HelpExitsCleanly) {
    EXPECT_EQ(run_cli("--help"), 0);
    EXPECT_EQ(run_cli("pendulum --help"), 0);
}

TEST(Cli, ValidationFailuresExitTwo) {
    EXPECT_EQ(run_cli(""), 2);                        // missing subcommand
    EXPECT_EQ(run_cli("no-such-subcommand"), 2);
    EXPECT_EQ(run_cli("pendulum --bogus-flag 1"), 2);
    EXPECT_EQ(run_cli("pendulum --n-mean -5"), 2);    // rejected by the library
    EXPECT_EQ(run_cli("pendulum --t-max 3bogus"), 2); // bad time suffix
    EXPECT_EQ(run_cli("vortex --axis diagonal"), 2);  // bad axis word
    EXPECT_EQ(run_cli("rydberg-autocorr --dt 0.2Tcl"), 2); // too coarse for peaks
}

TEST(Cli, IoFailuresExitThree) {
    EXPECT_EQ(run_cli("pendulum --n-mean 2 --t-max 0.125Tls --dt 0.0625Tls "
                      "--out-dir /proc/wplab-denied"),
              3);
}

TEST(Cli, PendulumRunWritesCsv) {
    const auto dir = fresh_dir("wplab_cli_pend");
    EXPECT_EQ(run_cli("pendulum --n-mean 3 --t-max 0.125Tls --dt 0.0625Tls --out-dir " +
                      dir.string()),
              0);
    std::ifstream csv(dir / "observables.csv");
    ASSERT_TRUE(csv.good());
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "t,sx,sy,sz,lx,ly,lz,purity,norm,P");
    int rows = 0;
    while (std::getline(csv, line)) ++rows;
    EXPECT_EQ(rows, 3); // tau = 0, pi/8, pi/4
    fs::remove_all(dir);
}

TEST(Cli, VortexRunWritesRasterAndMetrics) {
    const auto dir = fresh_dir("wplab_cli_vortex");
    EXPECT_EQ(run_cli("vortex --n-mean 1 --grid 12 --times 0,0.25Tls --out-dir " +
                      dir.string()),
              0);
    EXPECT_TRUE(fs::exists(dir / "density_000.raw"));
    EXPECT_TRUE(fs::exists(dir / "density_001.raw"));
    EXPECT_TRUE(fs::exists(dir / "metrics.csv"));
    fs::remove_all(dir);
}

TEST(Cli, AutocorrRunRowCount) {
    const auto dir = fresh_dir("wplab_cli_autocorr");
    EXPECT_EQ(run_cli("rydberg-autocorr --t-max 1Tcl --dt 0.01Tcl --out-dir " +
                      dir.string()),
              0);
    std::ifstream csv(dir / "autocorr.csv");
    ASSERT_TRUE(csv.good());
    std::string line;
    int rows = -1; // discount header
    while (std::getline(csv, line)) ++rows;
    EXPECT_EQ(rows, 101);
    EXPECT_TRUE(fs::exists(dir / "peaks.csv"));
    fs::remove_all(dir);
}

TEST(Cli, AngularRunWritesProfiles) {
    const auto dir = fresh_dir("wplab_cli_angular");
    EXPECT_EQ(run_cli("rydberg-angular --n-phi 128 --times 0,5.125Tcl --out-dir " +
                      dir.string()),
              0);
    EXPECT_TRUE(fs::exists(dir / "angular_000.csv"));
    EXPECT_TRUE(fs::exists(dir / "angular_001.csv"));
    EXPECT_TRUE(fs::exists(dir / "angular_times.csv"));
    fs::remove_all(dir);
}

TEST(Cli, ConfigFileDrivesRun) {
    const auto dir = fresh_dir("wplab_cli_config");
    fs::create_directories(dir);
    const auto ini = dir / "run.ini";
    {
        std::ofstream os(ini);
        os << "[pendulum]\n"
           << "n-mean=3\n"
           << "t-max=0.125Tls\n"
           << "dt=0.0625Tls\n"
           << "out-dir=" << (dir / "out").string() << "\n";
    }
    EXPECT_EQ(run_cli("--config " + ini.string() + " pendulum"), 0);
    EXPECT_TRUE(fs::exists(dir / "out" / "observables.csv"));
    fs::remove_all(dir);
}
