#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"

namespace {

namespace fs = std::filesystem;
using namespace ustokes;
using cli::Command;
using cli::ConfigError;
using cli::parse_config;
using cli::RunConfig;
using cli::VariantChoice;

RunConfig parse(const std::vector<std::string>& args, std::string* warnings = nullptr) {
    std::ostringstream diag;
    const RunConfig config = parse_config(args, diag);
    if (warnings != nullptr) *warnings = diag.str();
    return config;
}

TEST(ParseConfig, DefaultsAndFullFlagSet) {
    const RunConfig def = parse({});
    EXPECT_EQ(def.command, Command::convergence);
    EXPECT_EQ(def.level_min, 0);
    EXPECT_EQ(def.level_max, 3);
    EXPECT_EQ(def.variant, VariantChoice::both);
    EXPECT_DOUBLE_EQ(def.solver_tolerance, 1e-10);
    EXPECT_EQ(def.output_path, "-");
    EXPECT_EQ(def.format, OutputFormat::csv);
    EXPECT_EQ(def.time_quad_points, 5);
    EXPECT_EQ(def.error_quad_points, 5);
    EXPECT_EQ(def.seed, 42u);
    EXPECT_FALSE(def.inject_fault);

    const RunConfig full = parse({"convergence", "--levels", "1..2", "--variant",
                                  "interpolation", "--solver-tol", "1e-9", "--output",
                                  "out.csv", "--format", "markdown", "--time-quad", "6",
                                  "--error-quad", "6", "--seed", "7"});
    EXPECT_EQ(full.command, Command::convergence);
    EXPECT_EQ(full.level_min, 1);
    EXPECT_EQ(full.level_max, 2);
    EXPECT_EQ(full.variant, VariantChoice::interpolation);
    EXPECT_DOUBLE_EQ(full.solver_tolerance, 1e-9);
    EXPECT_EQ(full.output_path, "out.csv");
    EXPECT_EQ(full.format, OutputFormat::markdown);
    EXPECT_EQ(full.time_quad_points, 6);
    EXPECT_EQ(full.error_quad_points, 6);
    EXPECT_EQ(full.seed, 7u);

    // Attached values and a single-level range.
    const RunConfig attached = parse({"run", "--levels=2", "--variant=collocation"});
    EXPECT_EQ(attached.command, Command::run);
    EXPECT_EQ(attached.level_min, 2);
    EXPECT_EQ(attached.level_max, 2);
    EXPECT_EQ(attached.variant, VariantChoice::collocation);

    const RunConfig verify = parse({"verify", "--inject-fault", "--seed", "9"});
    EXPECT_EQ(verify.command, Command::verify);
    EXPECT_TRUE(verify.inject_fault);
    EXPECT_EQ(verify.seed, 9u);
}

TEST(ParseConfig, RejectsBadInput) {
    EXPECT_THROW(parse({"frobnicate"}), ConfigError);
    EXPECT_THROW(parse({"--no-such-flag", "1"}), ConfigError);
    EXPECT_THROW(parse({"--levels"}), ConfigError);               // missing value
    EXPECT_THROW(parse({"--levels", "x"}), ConfigError);          // not an integer
    EXPECT_THROW(parse({"--levels", "2..1"}), ConfigError);       // empty range
    EXPECT_THROW(parse({"--levels", "-1..2"}), ConfigError);      // negative level
    EXPECT_THROW(parse({"--variant", "fancy"}), ConfigError);
    EXPECT_THROW(parse({"--solver-tol", "1e-3"}), ConfigError);   // above cap
    EXPECT_THROW(parse({"--solver-tol", "0"}), ConfigError);
    EXPECT_THROW(parse({"--format", "xml"}), ConfigError);
    EXPECT_THROW(parse({"--time-quad", "4"}), ConfigError);
    EXPECT_THROW(parse({"--error-quad", "7"}), ConfigError);
    EXPECT_THROW(parse({"--output="}), ConfigError);              // empty path
    EXPECT_THROW(parse({"run", "--levels", "0..1"}), ConfigError);
    EXPECT_THROW(parse({"--config", "/no/such/file.conf"}), ConfigError);
}

TEST(ParseConfig, ConfigFileAndFlagOverrides) {
    const fs::path dir = fs::temp_directory_path() /
                         ("ustokes_cli_cfg_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const fs::path file = dir / "study.conf";
    {
        std::ofstream out(file);
        out << "# reference study setup\n"
            << "levels = 0..1\n"
            << "variant = collocation\n"
            << "solver_tol = 1e-8   # direct solver residual cap\n"
            << "time-quad = 6\n";
    }

    std::string warnings;
    const RunConfig fromFile = parse({"--config", file.string()}, &warnings);
    EXPECT_EQ(fromFile.level_min, 0);
    EXPECT_EQ(fromFile.level_max, 1);
    EXPECT_EQ(fromFile.variant, VariantChoice::collocation);
    EXPECT_DOUBLE_EQ(fromFile.solver_tolerance, 1e-8);
    EXPECT_EQ(fromFile.time_quad_points, 6);
    EXPECT_TRUE(warnings.empty());

    const RunConfig overridden =
        parse({"--config", file.string(), "--variant", "both"}, &warnings);
    EXPECT_EQ(overridden.variant, VariantChoice::both);
    EXPECT_EQ(overridden.level_max, 1);  // untouched file value still applies
    EXPECT_NE(warnings.find("warning: --variant overrides config file value"),
              std::string::npos);

    const fs::path bad = dir / "bad.conf";
    {
        std::ofstream out(bad);
        out << "levels 0..1\n";  // missing '='
    }
    EXPECT_THROW(parse({"--config", bad.string()}), ConfigError);

    fs::remove_all(dir);
}

TEST(OutputPaths, VariantAndFamilyTags) {
    EXPECT_EQ(cli::variant_tagged_path("out.csv", Variant::collocation),
              "out_collocation.csv");
    EXPECT_EQ(cli::variant_tagged_path("report", Variant::interpolation),
              "report_interpolation");
    EXPECT_EQ(cli::variant_tagged_path("dir.v/out", Variant::collocation),
              "dir.v/out_collocation");

    const auto files = family_output_paths("out.csv");
    EXPECT_EQ(files[0], "out_L2.csv");
    EXPECT_EQ(files[1], "out_lbar2.csv");
    EXPECT_EQ(files[2], "out_l2plus.csv");
    const auto bare = family_output_paths("report");
    EXPECT_EQ(bare[0], "report_L2");
    EXPECT_EQ(bare[2], "report_l2plus");
}

FamilyTable synthetic_table() {
    FamilyTable table;
    table.family = NormFamily::L2;
    ConvergenceRow r0;
    r0.level = 0;
    r0.tau = 1.0;
    r0.h = 0.5;
    r0.err_u_h1 = 4e-2;
    r0.err_dtu_l2 = 8e-2;
    r0.err_p_l2 = 1.6e-1;
    ConvergenceRow r1;
    r1.level = 1;
    r1.tau = 0.5;
    r1.h = 0.25;
    r1.err_u_h1 = 1e-2;
    r1.err_dtu_l2 = 2e-2;
    r1.err_p_l2 = 4e-2;
    r1.eoc_u_h1 = eoc(r0.err_u_h1, r1.err_u_h1);
    r1.eoc_dtu_l2 = eoc(r0.err_dtu_l2, r1.err_dtu_l2);
    r1.eoc_p_l2 = eoc(r0.err_p_l2, r1.err_p_l2);
    table.rows = {r0, r1};
    return table;
}

TEST(Reports, CsvFormatIsStableAndRoundTrips) {
    const std::string csv = render_csv(synthetic_table());
    std::istringstream lines(csv);
    std::string header, row0, row1, rest;
    ASSERT_TRUE(std::getline(lines, header));
    ASSERT_TRUE(std::getline(lines, row0));
    ASSERT_TRUE(std::getline(lines, row1));
    EXPECT_FALSE(std::getline(lines, rest));

    EXPECT_EQ(header,
              "level,tau,h,err_u_H1,eoc_u_H1,err_dtu_L2,eoc_dtu_L2,err_p_L2,eoc_p_L2");
    EXPECT_EQ(row0,
              "0,1.000000000e+00,5.000000000e-01,4.000000000e-02,,8.000000000e-02,,"
              "1.600000000e-01,");
    EXPECT_EQ(row1,
              "1,5.000000000e-01,2.500000000e-01,1.000000000e-02,2.00,2.000000000e-02,"
              "2.00,4.000000000e-02,2.00");

    // Round trip: the printed errors carry enough digits to recompute the
    // printed order of convergence.
    auto field = [](const std::string& line, int index) {
        std::istringstream ss(line);
        std::string cell;
        for (int i = 0; i <= index; ++i) std::getline(ss, cell, ',');
        return std::stod(cell);
    };
    for (int col : {3, 5, 7}) {
        const double coarse = field(row0, col);
        const double fine = field(row1, col);
        EXPECT_NEAR(std::log2(coarse / fine), 2.0, 0.005);
    }
}

TEST(Reports, MarkdownNamesVariantAndFamilies) {
    ConvergenceReport report;
    report.variant = Variant::interpolation;
    report.families[0] = synthetic_table();
    report.families[1].family = NormFamily::lbar2;
    report.families[2].family = NormFamily::l2plus;
    const std::string doc = render_markdown(report);
    EXPECT_NE(doc.find("# Convergence errors (interpolation variant)"), std::string::npos);
    EXPECT_NE(doc.find("## L2-in-time norms"), std::string::npos);
    EXPECT_NE(doc.find("## interval-midpoint norms (lbar2)"), std::string::npos);
    EXPECT_NE(doc.find("## right-limit norms (l2plus)"), std::string::npos);
    EXPECT_NE(doc.find("| level |"), std::string::npos);
    EXPECT_NE(doc.find("2.00"), std::string::npos);
}

/// Runs the installed CLI binary (path from the build system via the
/// USTOKES_CLI_BINARY environment variable) and captures exit code + streams.
struct ProcessResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

class CliProcess : public ::testing::Test {
protected:
    static std::string binary() {
        const char* path = std::getenv("USTOKES_CLI_BINARY");
        EXPECT_NE(path, nullptr) << "USTOKES_CLI_BINARY must point at the CLI binary";
        return path == nullptr ? "" : path;
    }

    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("ustokes_cli_run_" + std::to_string(::getpid()));
        fs::create_directories(dir_);
    }
    void TearDown() override {
        std::error_code ec;
        fs::remove_all(dir_, ec);
    }

    ProcessResult run(const std::string& args) const {
        const fs::path out_file = dir_ / "stdout.txt";
        const fs::path err_file = dir_ / "stderr.txt";
        const std::string cmd = "\"" + binary() + "\" " + args + " > \"" +
                                out_file.string() + "\" 2> \"" + err_file.string() + "\"";
        const int status = std::system(cmd.c_str());
        ProcessResult result;
        result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        result.out = slurp(out_file);
        result.err = slurp(err_file);
        return result;
    }

    static std::string slurp(const fs::path& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path dir_;
};

TEST_F(CliProcess, VerifyPassesAndFaultInjectionIsCaught) {
    const ProcessResult ok = run("verify");
    EXPECT_EQ(ok.exit_code, 0) << ok.err;
    EXPECT_NE(ok.out.find("PASS dense-saddle-oracle"), std::string::npos) << ok.out;
    EXPECT_NE(ok.out.find("PASS divergence-free-midpoints"), std::string::npos);
    EXPECT_EQ(ok.out.find("FAIL"), std::string::npos) << ok.out;

    const ProcessResult bad = run("verify --inject-fault");
    EXPECT_EQ(bad.exit_code, 1);
    EXPECT_NE(bad.out.find("FAIL divergence-free-midpoints"), std::string::npos)
        << bad.out;
    EXPECT_NE(bad.err.find("verification failed"), std::string::npos);
}

TEST_F(CliProcess, ExitCodesForConfigAndSolverFailures) {
    const ProcessResult unknown = run("--frobnicate 1");
    EXPECT_EQ(unknown.exit_code, 2);
    EXPECT_NE(unknown.err.find("config error"), std::string::npos) << unknown.err;

    const ProcessResult range = run("run --levels 0..1");
    EXPECT_EQ(range.exit_code, 2);

    const fs::path out = dir_ / "never.csv";
    const ProcessResult solver = run(
        "convergence --levels 0 --variant interpolation --solver-tol 1e-30 --output \"" +
        out.string() + "\"");
    EXPECT_EQ(solver.exit_code, 3);
    EXPECT_NE(solver.err.find("solver error"), std::string::npos) << solver.err;
}

TEST_F(CliProcess, StdoutCsvTagsVariantsAndFamilies) {
    const ProcessResult res = run("convergence --levels 0");
    EXPECT_EQ(res.exit_code, 0) << res.err;
    EXPECT_NE(res.out.find("# variant: collocation"), std::string::npos);
    EXPECT_NE(res.out.find("# variant: interpolation"), std::string::npos);
    EXPECT_NE(res.out.find("# norm_family: L2"), std::string::npos);
    EXPECT_NE(res.out.find("# norm_family: lbar2"), std::string::npos);
    EXPECT_NE(res.out.find("# norm_family: l2plus"), std::string::npos);
    EXPECT_NE(res.out.find("level,tau,h,err_u_H1"), std::string::npos);
}

TEST_F(CliProcess, MarkdownWritesOneFilePerVariant) {
    const fs::path out = dir_ / "report.md";
    const ProcessResult res = run("convergence --levels 0 --variant collocation "
                                  "--format markdown --output \"" +
                                  out.string() + "\"");
    EXPECT_EQ(res.exit_code, 0) << res.err;
    ASSERT_TRUE(fs::exists(out));
    const std::string doc = slurp(out);
    EXPECT_NE(doc.find("# Convergence errors (collocation variant)"), std::string::npos);
}

TEST_F(CliProcess, RepeatedRunsProduceIdenticalReports) {
    const fs::path first = dir_ / "a.csv";
    const fs::path second = dir_ / "b.csv";
    const std::string flags = "convergence --levels 0..1 --output ";
    const ProcessResult ra = run(flags + "\"" + first.string() + "\"");
    ASSERT_EQ(ra.exit_code, 0) << ra.err;
    const ProcessResult rb = run(flags + "\"" + second.string() + "\"");
    ASSERT_EQ(rb.exit_code, 0) << rb.err;

    for (Variant variant : {Variant::collocation, Variant::interpolation}) {
        const auto files_a =
            family_output_paths(cli::variant_tagged_path(first.string(), variant));
        const auto files_b =
            family_output_paths(cli::variant_tagged_path(second.string(), variant));
        for (std::size_t i = 0; i < 3; ++i) {
            ASSERT_TRUE(fs::exists(files_a[i])) << files_a[i];
            const std::string a = slurp(files_a[i]);
            const std::string b = slurp(files_b[i]);
            EXPECT_FALSE(a.empty());
            EXPECT_EQ(a, b) << files_a[i] << " vs " << files_b[i];
            EXPECT_NE(a.find("level,tau,h,err_u_H1"), std::string::npos);
        }
    }
}

}  // namespace
