#pragma once

#include <array>
#include <vector>

namespace ustokes {

/// Uniform axis-aligned quadrilateral mesh of the unit square (0,1)^2.
///
/// Vertices are numbered lexicographically (x fastest), cells likewise;
/// each cell lists its vertices counterclockwise starting at the lower-left
/// corner. `h` is the cell diameter (the diagonal of a square cell).
struct StructuredQuadMesh {
    int n_cells_per_side = 0;
    double h = 0.0;
    std::vector<std::array<double, 2>> vertices;    ///< (n+1)^2 points in [0,1]^2
    std::vector<std::array<int, 4>> cells;          ///< n^2 quads, CCW vertex indices
    std::vector<bool> boundary_vertex_flags;        ///< true iff a coordinate is 0 or 1

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_cells() const { return static_cast<int>(cells.size()); }

    /// Lower-left corner of cell (cx, cy); cells are squares of side 1/n.
    std::array<double, 2> cell_origin(int cell) const;
    double cell_side() const { return 1.0 / n_cells_per_side; }
};

/// Builds the uniform n-by-n quadrilateral mesh of the unit square.
/// Throws std::invalid_argument for n < 1.
StructuredQuadMesh build_unit_square(int n);

/// One uniform refinement step: doubles n, halves h exactly.
StructuredQuadMesh refine(const StructuredQuadMesh& mesh);

}  // namespace ustokes
