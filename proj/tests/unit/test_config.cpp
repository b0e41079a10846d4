#include <gtest/gtest.h>

#include "kicktop/config.hpp"
#include "kicktop/experiments.hpp"

using namespace kicktop;

TEST(Config, DefaultsMatchTheStandardSetup) {
    const RunConfig c;
    EXPECT_EQ(c.spin.two_j(), 160);
    EXPECT_EQ(c.resolved_k1(), 6.0);
    EXPECT_EQ(c.resolved_k2(), 6.0);
    EXPECT_EQ(c.steps, 1000u);
    EXPECT_EQ(c.theta0, 0.89);
    EXPECT_EQ(c.phi0, 0.63);
    RunConfig r;
    r.experiment = ExperimentKind::RmtCompare;
    EXPECT_EQ(r.resolved_k2(), 6.1);
    EXPECT_EQ(r.resolved_snapshots(), (std::vector<std::size_t>{0, 1000}));
}

TEST(Config, ParsesKeyValueText) {
    const auto c = parse_config(R"(
# comment line
experiment = stats   # trailing comment
j = 40.5
k = 2
k2 = 3.5
eps = 1e-3
eps_list = 0.1, 0.2
steps = 12
snapshots = 10, 2, 10
stats_mode = rdm
seed = 99
)");
    EXPECT_EQ(c.experiment, ExperimentKind::Stats);
    EXPECT_EQ(c.spin.two_j(), 81);
    EXPECT_EQ(c.resolved_k1(), 2.0);
    EXPECT_EQ(c.resolved_k2(), 3.5);
    EXPECT_EQ(c.epsilon, 1e-3);
    EXPECT_EQ(c.eps_list, (std::vector<double>{0.1, 0.2}));
    EXPECT_EQ(c.steps, 12u);
    EXPECT_EQ(c.snapshots, (std::vector<std::size_t>{2, 10}));
    EXPECT_EQ(c.stats_mode, StatsMode::RdmEigenvectors);
    EXPECT_EQ(c.seed, 99u);
}

TEST(Config, RejectsBadInput) {
    EXPECT_THROW(parse_config("nonsense"), ConfigError);
    EXPECT_THROW(parse_config("colour = red"), ConfigError);
    EXPECT_THROW(parse_config("j = 0.3"), ConfigError);
    EXPECT_THROW(parse_config("j = 0"), ConfigError);
    EXPECT_THROW(parse_config("steps = 0"), ConfigError);
    EXPECT_THROW(parse_config("steps = -3"), ConfigError);
    EXPECT_THROW(parse_config("eps = abc"), ConfigError);
    EXPECT_THROW(parse_config("eps = 1e-2x"), ConfigError);
    EXPECT_THROW(parse_config("theta0 = 4"), ConfigError);
    EXPECT_THROW(parse_config("experiment = fly"), ConfigError);
    EXPECT_THROW(parse_config("stats_mode = both"), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/dir/kicktop.cfg"), IoError);
}

TEST(Config, ManifestRoundTrip) {
    RunConfig c = parse_config("experiment = rmt-compare\nj = 7.5\neps = 0.0123456789012345\nk1 = 6\n");
    RunSummary summary{c, {{"rmt_compare.tsv", 10}}, 1.5};
    const std::string text = manifest_text(summary);
    const RunConfig back = parse_config(text);
    EXPECT_EQ(back.to_text(), c.to_text());
    EXPECT_EQ(manifest_text({back, summary.files, 1.5}), text);
    EXPECT_EQ(back.epsilon, 0.0123456789012345);
    EXPECT_EQ(back.resolved_k2(), 6.1);
}

TEST(Config, FormatExactRoundTrips) {
    for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 0.89}) {
        EXPECT_EQ(std::stod(format_exact(x)), x);
    }
    EXPECT_EQ(format_value(0.1), "0.1");
    EXPECT_EQ(format_value(1.0 / 3.0), "0.333333333333");
}
