#pragma once

#include <array>
#include <string>

#include "ustokes/convergence.hpp"

namespace ustokes {

enum class OutputFormat { csv, markdown };

/// Derives the per-family CSV paths from a base path by inserting the family
/// tag before the extension: "out.csv" -> {"out_L2.csv", "out_lbar2.csv",
/// "out_l2plus.csv"}.  A path without extension gets the tag appended.
std::array<std::string, 3> family_output_paths(const std::string& base_path);

/// One norm family as CSV: header
///   level,tau,h,err_u_H1,eoc_u_H1,err_dtu_L2,eoc_dtu_L2,err_p_L2,eoc_p_L2
/// then one row per level.  Errors in scientific notation with 10 significant
/// digits, EOC with 2 decimals (empty on the first row), LF line endings.
std::string render_csv(const FamilyTable& table);

/// The full report as one Markdown document: three stacked, aligned tables
/// (one per norm family) under a heading naming the variant.
std::string render_markdown(const ConvergenceReport& report);

/// Writes the report.  Path "-" streams to stdout; otherwise CSV writes one
/// file per norm family (family_output_paths) and Markdown writes a single
/// file.  Throws std::runtime_error on I/O failure.
void emit_report(const ConvergenceReport& report, OutputFormat format,
                 const std::string& path);

}  // namespace ustokes
