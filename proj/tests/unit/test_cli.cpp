#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "kicktop/config.hpp"

#ifdef KICKTOP_CLI_PATH

namespace fs = std::filesystem;

namespace {

const fs::path kTmp = KICKTOP_TEST_TMP;

int run(const std::string& args) {
    const std::string cmd = std::string(KICKTOP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Numeric rows of a tab-separated file, skipping the # header.
std::vector<std::vector<double>> table(const fs::path& p) {
    std::vector<std::vector<double>> rows;
    std::ifstream in(p);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, '\t')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::invalid_argument&) {
                row.push_back(NAN);
            }
        }
        rows.push_back(row);
    }
    return rows;
}

fs::path fresh(const std::string& name) {
    const auto dir = kTmp / name;
    fs::remove_all(dir);
    fs::create_directories(dir.parent_path());
    return dir;
}

} // namespace

TEST(Cli, EvolveWithoutCouplingStaysUnentangled) {
    const auto dir = fresh("evolve0");
    ASSERT_EQ(run("evolve --j 10 --eps 0 --steps 30 --out " + dir.string()), 0);
    const auto rows = table(dir / "entropy.tsv");
    ASSERT_EQ(rows.size(), 31u);
    for (const auto& r : rows) {
        ASSERT_EQ(r.size(), 5u);
        EXPECT_NEAR(r[1], 0.0, 1e-10);
        EXPECT_NEAR(r[2], 0.0, 1e-10);
        for (double x : r) EXPECT_TRUE(std::isfinite(x));
    }
    EXPECT_TRUE(fs::exists(dir / "manifest.cfg"));
    EXPECT_EQ(slurp(dir / "entropy.tsv").substr(0, 30), "# n\tS_V\tS_R\tdelta_n_eff\tgamma\n");
}

TEST(Cli, ConfigFileFlagsWinAndManifestReparses) {
    const auto dir = fresh("manifest");
    fs::create_directories(kTmp);
    const auto cfg = kTmp / "run.cfg";
    {
        std::ofstream out(cfg);
        out << "# test run\nj = 3\nk = 2\neps = 0.5\nsteps = 4\n";
    }
    ASSERT_EQ(run("evolve --config " + cfg.string() + " --steps 6 --out " + dir.string()), 0);
    const auto manifest = slurp(dir / "manifest.cfg");
    const auto parsed = kicktop::parse_config(manifest);
    EXPECT_EQ(parsed.steps, 6u);
    EXPECT_EQ(parsed.epsilon, 0.5);
    EXPECT_EQ(parsed.spin.two_j(), 6);
    EXPECT_NE(manifest.find("# output: entropy.tsv rows=7"), std::string::npos);

    // Feeding the manifest back reproduces the parameters and the data.
    const auto dir2 = fresh("manifest2");
    ASSERT_EQ(run("evolve --config " + (dir / "manifest.cfg").string() + " --out " + dir2.string()), 0);
    EXPECT_EQ(slurp(dir / "entropy.tsv"), slurp(dir2 / "entropy.tsv"));
    auto strip = [](const std::string& text) {
        std::string out;
        std::stringstream ss(text);
        std::string line;
        while (std::getline(ss, line))
            if (!line.starts_with('#') && !line.starts_with("out =")) out += line + "\n";
        return out;
    };
    EXPECT_EQ(strip(slurp(dir2 / "manifest.cfg")), strip(manifest));
}

TEST(Cli, StatsAreDeterministic) {
    const auto a = fresh("stats_a"), b = fresh("stats_b");
    const std::string args = "stats --j 20 --steps 40 --seed 5 --set snapshots=0,20,40 --set stats_mode=rdm";
    ASSERT_EQ(run(args + " --out " + a.string()), 0);
    ASSERT_EQ(run(args + " --out " + b.string()), 0);
    EXPECT_EQ(slurp(a / "stats_summary.tsv"), slurp(b / "stats_summary.tsv"));
    EXPECT_EQ(slurp(a / "stats_hist.tsv"), slurp(b / "stats_hist.tsv"));
    const auto c = fresh("stats_c");
    ASSERT_EQ(run("stats --j 20 --steps 40 --seed 6 --set snapshots=0,20,40 --set stats_mode=rdm --out " + c.string()), 0);
    EXPECT_NE(slurp(a / "stats_summary.tsv"), slurp(c / "stats_summary.tsv"));
}

TEST(Cli, CoherentSnapshotIsLocalised) {
    const auto dir = fresh("stats0");
    ASSERT_EQ(run("stats --j 80 --steps 10 --set snapshots=0 --out " + dir.string()), 0);
    const auto rows = table(dir / "stats_summary.tsv");
    ASSERT_GE(rows.size(), 1u);
    EXPECT_GT(rows[0][7], 0.7);
}

TEST(Cli, PortraitFixedPoint) {
    const auto dir = fresh("portrait");
    ASSERT_EQ(run("portrait --k 1 --theta0 1.5707963267948966 --phi0 1.5707963267948966 --set portrait_grid=2 "
                  "--set portrait_iter=25 --out " + dir.string()),
              0);
    const auto rows = table(dir / "portrait.tsv");
    ASSERT_EQ(rows.size(), 5u * 25u);
    for (std::size_t i = 0; i < 25; ++i) {
        EXPECT_EQ(rows[i][0], 0.0);
        // Elliptic at k = 1, so it stays put; the table has 12 significant digits.
        EXPECT_NEAR(rows[i][2], std::numbers::pi / 2, 1e-11);
        EXPECT_NEAR(rows[i][3], 0.0, 1e-11);
    }
}

TEST(Cli, RmtCompareAtZeroCoupling) {
    const auto dir = fresh("rmt0");
    ASSERT_EQ(run("rmt-compare --j 6 --steps 10 --set eps_list=0 --set ic_grid=2 --out " + dir.string()), 0);
    const auto rows = table(dir / "rmt_compare.tsv");
    ASSERT_EQ(rows.size(), 10u);
    for (const auto& r : rows) {
        EXPECT_NEAR(r[2], 0.0, 1e-12);
        EXPECT_EQ(r[3], 0.0);
        EXPECT_EQ(r[4], 0.0);
    }
    EXPECT_NE(slurp(dir / "manifest.cfg").find("2x2 lattice"), std::string::npos);
}

TEST(Cli, HusimiInitialSnapshotPeaksAtStart) {
    const auto dir = fresh("husimi");
    ASSERT_EQ(run("husimi --j 20 --steps 5 --set snapshots=0,5 --set grid_theta=60 --set grid_phi=120 --out " +
                  dir.string()),
              0);
    const auto rows = table(dir / "husimi_n0.tsv");
    ASSERT_EQ(rows.size(), 60u * 120u);
    const auto peak = *std::max_element(rows.begin(), rows.end(), [](auto& a, auto& b) { return a[4] < b[4]; });
    EXPECT_NEAR(peak[2], 0.89, 0.06);
    EXPECT_NEAR(peak[3], 0.63, 0.06);
    EXPECT_TRUE(fs::exists(dir / "husimi_n5.tsv"));
    const auto header = slurp(dir / "husimi_n0.tsv").substr(0, 80);
    EXPECT_NE(header.find("n_theta=60 n_phi=120"), std::string::npos);
}

TEST(Cli, ExitCodes) {
    const auto dir = fresh("codes");
    EXPECT_EQ(run("evolve --j 0.3 --out " + dir.string()), 1);
    EXPECT_EQ(run("evolve --steps abc --out " + dir.string()), 1);
    EXPECT_EQ(run("evolve --set colour=red --out " + dir.string()), 1);
    EXPECT_EQ(run("teleport"), 1);
    EXPECT_EQ(run("husimi --steps 5 --set snapshots=9 --j 2 --out " + dir.string()), 1);

    fs::create_directories(kTmp);
    const auto blocker = kTmp / "a_file";
    std::ofstream(blocker) << "x";
    EXPECT_EQ(run("evolve --j 2 --steps 2 --out " + (blocker / "sub").string()), 2);
    EXPECT_EQ(run("evolve --config " + (kTmp / "missing.cfg").string()), 2);
}

#endif
