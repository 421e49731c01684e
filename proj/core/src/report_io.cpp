#include "ustokes/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace ustokes {

namespace {

std::string sci(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9e", value);
    return buf;
}

std::string eoc_cell(const std::optional<double>& value) {
    if (!value) return "";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", *value);
    return buf;
}

/// Pads every cell of a column to a common width (right-aligned) and joins
/// rows with " | " so the output is simultaneously aligned text and Markdown.
std::string markdown_table(const std::vector<std::vector<std::string>>& cells) {
    if (cells.empty()) return "";
    const std::size_t cols = cells.front().size();
    std::vector<std::size_t> width(cols, 0);
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < cols; ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::ostringstream out;
    for (std::size_t r = 0; r < cells.size(); ++r) {
        out << "|";
        for (std::size_t c = 0; c < cols; ++c) {
            out << " " << std::string(width[c] - cells[r][c].size(), ' ') << cells[r][c]
                << " |";
        }
        out << "\n";
        if (r == 0) {
            out << "|";
            for (std::size_t c = 0; c < cols; ++c) {
                out << std::string(width[c] + 1, '-') << ":|";
            }
            out << "\n";
        }
    }
    return out.str();
}

std::vector<std::vector<std::string>> table_cells(const FamilyTable& table) {
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"level", "tau", "h", "err_u_H1", "eoc_u_H1", "err_dtu_L2",
                     "eoc_dtu_L2", "err_p_L2", "eoc_p_L2"});
    for (const auto& row : table.rows) {
        cells.push_back({std::to_string(row.level), sci(row.tau), sci(row.h),
                         sci(row.err_u_h1), eoc_cell(row.eoc_u_h1), sci(row.err_dtu_l2),
                         eoc_cell(row.eoc_dtu_l2), sci(row.err_p_l2),
                         eoc_cell(row.eoc_p_l2)});
    }
    return cells;
}

std::string family_heading(NormFamily family) {
    switch (family) {
        case NormFamily::L2: return "L2-in-time norms";
        case NormFamily::lbar2: return "interval-midpoint norms (lbar2)";
        case NormFamily::l2plus: return "right-limit norms (l2plus)";
    }
    return "";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("report: cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("report: write to '" + path + "' failed");
}

}  // namespace

std::array<std::string, 3> family_output_paths(const std::string& base_path) {
    const std::size_t slash = base_path.find_last_of('/');
    const std::size_t dot = base_path.find_last_of('.');
    std::string stem = base_path;
    std::string ext;
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) {
        stem = base_path.substr(0, dot);
        ext = base_path.substr(dot);
    }
    std::array<std::string, 3> paths;
    const std::array<NormFamily, 3> order = {NormFamily::L2, NormFamily::lbar2,
                                             NormFamily::l2plus};
    for (std::size_t i = 0; i < 3; ++i) {
        paths[i] = stem + "_" + to_string(order[i]) + ext;
    }
    return paths;
}

std::string render_csv(const FamilyTable& table) {
    std::ostringstream out;
    const auto cells = table_cells(table);
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out << ",";
            out << row[c];
        }
        out << "\n";
    }
    return out.str();
}

std::string render_markdown(const ConvergenceReport& report) {
    std::ostringstream out;
    out << "# Convergence errors (" << to_string(report.variant) << " variant)\n";
    for (const auto& table : report.families) {
        out << "\n## " << family_heading(table.family) << "\n\n";
        out << markdown_table(table_cells(table));
    }
    return out.str();
}

void emit_report(const ConvergenceReport& report, OutputFormat format,
                 const std::string& path) {
    if (format == OutputFormat::markdown) {
        const std::string doc = render_markdown(report);
        if (path == "-") {
            std::cout << doc;
            std::cout.flush();
        } else {
            write_file(path, doc);
        }
        return;
    }
    if (path == "-") {
        for (const auto& table : report.families) {
            std::cout << "# norm_family: " << to_string(table.family) << "\n"
                      << render_csv(table);
        }
        std::cout.flush();
        return;
    }
    const auto paths = family_output_paths(path);
    for (std::size_t i = 0; i < 3; ++i) {
        write_file(paths[i], render_csv(report.families[i]));
    }
}

}  // namespace ustokes
