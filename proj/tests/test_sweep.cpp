#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "holomon/sweep.hpp"

using namespace holomon;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "holomon_sweep_test";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST(Sweep, DefaultConfigRows) {
    const SweepConfig cfg = normalize_config(SweepConfig{});
    const auto rows = run_sweep(cfg);
    ASSERT_EQ(rows.size(), 183u);
    const auto& last_mon = rows[180];
    EXPECT_EQ(last_mon.scheme, SchemeKind::Monitored);
    EXPECT_DOUBLE_EQ(last_mon.eps, 0.3);
    EXPECT_NEAR(*last_mon.fidelity_closed, 0.9679129184, 1e-9);
    EXPECT_NEAR(*last_mon.fidelity_pipeline, 0.9679129184, 1e-9);
    const auto csv = lines(format_csv(rows));
    ASSERT_EQ(csv.size(), 184u);
    EXPECT_EQ(csv[0], kCsvHeader);
    EXPECT_EQ(split(csv[1]).size(), 9u);
    EXPECT_EQ(split(csv[1])[1], "monitored");
    EXPECT_EQ(split(csv[2])[1], "reference");
    EXPECT_EQ(split(csv[3])[1], "composite");
}

TEST(Sweep, DegenerateRange) {
    SweepConfig cfg;
    cfg.eps_min = cfg.eps_max = 0.0;
    cfg.eps_steps = 2;
    for (const auto& r : run_sweep(normalize_config(cfg))) {
        EXPECT_NEAR(*r.fidelity_closed, 1.0, 1e-15);
        EXPECT_NEAR(*r.fidelity_pipeline, 1.0, 1e-15);
    }
}

TEST(Sweep, NumericLeavesClosedColumnsEmpty) {
    SweepConfig cfg;
    cfg.method = MethodChoice::Numeric;
    cfg.eps_steps = 3;
    cfg.steps_per_segment = 256;
    const auto rows = run_sweep(normalize_config(cfg));
    for (const auto& r : rows) {
        EXPECT_FALSE(r.fidelity_closed);
        EXPECT_FALSE(r.closed_pipeline_gap);
        EXPECT_TRUE(r.fidelity_pipeline);
        EXPECT_TRUE(r.success_probability);
    }
    const auto cells = split(lines(format_csv(rows))[1]);
    ASSERT_EQ(cells.size(), 9u);
    EXPECT_TRUE(cells[5].empty());
    EXPECT_FALSE(cells[6].empty());
    EXPECT_TRUE(cells[8].empty());
}

TEST(Sweep, BothMethodsReportSmallGap) {
    SweepConfig cfg;
    cfg.method = MethodChoice::Both;
    cfg.eps_steps = 4;
    cfg.steps_per_segment = 1024;
    cfg.schemes = {SchemeKind::Monitored, SchemeKind::SingleLoop, SchemeKind::DFS, SchemeKind::Composite};
    cfg.phi_loop = kPi / 2;
    for (const auto& r : run_sweep(normalize_config(cfg))) EXPECT_LT(*r.closed_pipeline_gap, 1e-9);
}

TEST(Sweep, DeterministicAcrossPoolWidths) {
    SweepConfig cfg = figure2_config();
    cfg.jobs = 1;
    const std::string one = format_csv(run_sweep(normalize_config(cfg)));
    cfg.jobs = 7;
    const std::string seven = format_csv(run_sweep(normalize_config(cfg)));
    EXPECT_EQ(one, seven);
}

TEST(Config, Validation) {
    SweepConfig cfg;
    cfg.eps_min = 0.3;
    cfg.eps_max = 0.1;
    EXPECT_THROW(normalize_config(cfg), InvalidParams);
    cfg = {};
    cfg.eps_steps = 1;
    EXPECT_THROW(normalize_config(cfg), InvalidParams);
    cfg = {};
    cfg.schemes.clear();
    EXPECT_THROW(normalize_config(cfg), InvalidParams);
    cfg = {};
    cfg.c1 = 1.0;
    cfg.c2 = 0.1;
    EXPECT_THROW(normalize_config(cfg), InvalidParams);
    cfg = {};
    cfg.theta = 4.0;
    EXPECT_THROW(normalize_config(cfg), InvalidParams);
}

TEST(Config, SlightlyOffAmplitudesAreRenormalizedWithWarning) {
    SweepConfig cfg;
    cfg.c1 = 0.6 * (1 + 2e-7);
    cfg.c2 = 0.8 * (1 + 2e-7);
    std::ostringstream warn;
    const SweepConfig out = normalize_config(cfg, &warn);
    EXPECT_NEAR(std::norm(out.c1) + std::norm(out.c2), 1.0, 1e-15);
    EXPECT_NE(warn.str().find("renormalized"), std::string::npos);
}

TEST(Csv, NumberFormatting) {
    EXPECT_EQ(format_number(-0.0), "0");
    EXPECT_EQ(format_number(0.3), "0.3");
    EXPECT_EQ(format_number(0.96791291844), "0.96791291844");
    EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
}

TEST(Csv, EpsilonGridEndpointsExact) {
    const auto g = epsilon_grid(0.0, 0.3, 61);
    EXPECT_EQ(g.front(), 0.0);
    EXPECT_EQ(g.back(), 0.3);
    EXPECT_NEAR(g[30], 0.15, 1e-16);
}

TEST(Io, AtomicWriteReplacesFile) {
    const fs::path p = scratch("out.csv");
    write_file_atomic(p.string(), "first\n");
    write_file_atomic(p.string(), "second\n");
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    EXPECT_EQ(ss.str(), "second\n");
    EXPECT_FALSE(fs::exists(p.string() + ".tmp"));
}

TEST(Io, UnwritableDirectoryThrows) {
    EXPECT_THROW(write_file_atomic("/nonexistent_dir_holomon/x.csv", "x"), IoError);
}
