#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ustokes/error_norms.hpp"
#include "ustokes/manufactured.hpp"
#include "ustokes/postprocess.hpp"

namespace ustokes {

/// Which post-processed trajectory a study reports on:
///  - collocation: lifted velocity utilde, its derivative, nodal pressure ptilde
///  - interpolation: raw velocity/slope, midpoint-interpolated pressure
enum class Variant { collocation, interpolation };

/// The three norm families of the error tables: continuous-in-time L2(I;B),
/// the interval-midpoint norm lbar2, and the right-limit norm l2plus.
enum class NormFamily { L2, lbar2, l2plus };

std::string to_string(Variant variant);
std::string to_string(NormFamily family);

/// One refinement level in one norm family.  The three error columns are the
/// velocity error in H1, the velocity-derivative error in L2, and the
/// pressure error in L2.  EOC entries are empty on the first level of a run.
struct ConvergenceRow {
    int level = 0;
    double tau = 0.0;
    double h = 0.0;
    double err_u_h1 = 0.0;
    double err_dtu_l2 = 0.0;
    double err_p_l2 = 0.0;
    std::optional<double> eoc_u_h1;
    std::optional<double> eoc_dtu_l2;
    std::optional<double> eoc_p_l2;
};

struct FamilyTable {
    NormFamily family = NormFamily::L2;
    std::vector<ConvergenceRow> rows;
};

/// A full study: the three stacked tables of one variant.
struct ConvergenceReport {
    Variant variant = Variant::interpolation;
    std::array<FamilyTable, 3> families;  ///< order: L2, lbar2, l2plus
};

/// Knobs of a convergence run.  The forcing override replaces the
/// manufactured right-hand side (errors are still measured against the
/// manufactured solution); it is used by the zero-data checks.
///
/// load_quad_points sets the Gauss rule for the per-interval time integral
/// of the load in the interval solves; with the default 5 the smooth
/// reference forcing is integrated to machine precision, so the march is the
/// exact-in-time Galerkin scheme.  The study pairs it with the interval-local
/// collocation lifting, which keeps each interval's lifted momentum equation
/// collocated at its left node.  time_quad_points only controls the accuracy
/// of the reported L2-in-time error integrals, not the solution itself.
struct StudyConfig {
    double solver_tolerance = 1e-10;
    int time_quad_points = 5;
    int error_quad_points = 5;
    int load_quad_points = 5;
    std::optional<TimeDependentField> forcing_override;
};

/// The nine norms of one level for one variant, grouped by family
/// (order: L2, lbar2, l2plus).
struct LevelErrors {
    double tau = 0.0;
    double h = 0.0;
    struct Triple {
        double u_h1 = 0.0;
        double dtu_l2 = 0.0;
        double p_l2 = 0.0;
    };
    std::array<Triple, 3> by_family;
};

/// Solves one refinement level of the reference problem (mesh 4*2^level per
/// side, tau = 2^-level, T = 2) and evaluates the nine norms for one variant.
/// Solver failures are rethrown with the level in the message.
LevelErrors compute_level_errors(int level, Variant variant,
                                 const StudyConfig& config = {});

/// Runs levels level_min..level_max and assembles the three tables with EOC
/// columns (log2 error ratio between consecutive levels).
ConvergenceReport run_convergence_study(int level_min, int level_max, Variant variant,
                                        const StudyConfig& config = {});

/// Both variants from a single time march per level (the march is shared;
/// only post-processing and norm evaluation differ).  Order: collocation,
/// interpolation.
std::array<ConvergenceReport, 2> run_convergence_study_both(
    int level_min, int level_max, const StudyConfig& config = {});

}  // namespace ustokes
