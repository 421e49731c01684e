#include "ustokes/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace ustokes {

std::array<double, 2> StructuredQuadMesh::cell_origin(int cell) const {
    const int n = n_cells_per_side;
    const int cx = cell % n;
    const int cy = cell / n;
    const double s = cell_side();
    return {cx * s, cy * s};
}

StructuredQuadMesh build_unit_square(int n) {
    if (n < 1) {
        throw std::invalid_argument("build_unit_square: n must be >= 1");
    }

    StructuredQuadMesh mesh;
    mesh.n_cells_per_side = n;
    mesh.h = std::sqrt(2.0) / n;

    const int nv = n + 1;
    mesh.vertices.reserve(static_cast<std::size_t>(nv) * nv);
    mesh.boundary_vertex_flags.reserve(static_cast<std::size_t>(nv) * nv);
    for (int j = 0; j < nv; ++j) {
        for (int i = 0; i < nv; ++i) {
            const double x = static_cast<double>(i) / n;
            const double y = static_cast<double>(j) / n;
            mesh.vertices.push_back({x, y});
            mesh.boundary_vertex_flags.push_back(i == 0 || i == n || j == 0 || j == n);
        }
    }

    mesh.cells.reserve(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int v00 = j * nv + i;
            const int v10 = j * nv + (i + 1);
            const int v11 = (j + 1) * nv + (i + 1);
            const int v01 = (j + 1) * nv + i;
            mesh.cells.push_back({v00, v10, v11, v01});
        }
    }
    return mesh;
}

StructuredQuadMesh refine(const StructuredQuadMesh& mesh) {
    return build_unit_square(2 * mesh.n_cells_per_side);
}

}  // namespace ustokes
