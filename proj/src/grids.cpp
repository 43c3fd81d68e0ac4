#include "diracred/grids.hpp"

namespace diracred {

void Grid1D::validate() const {
    if (n < 2) throw ParameterError("Grid1D needs at least 2 nodes");
    if (!(x_max > x_min)) throw ParameterError("Grid1D needs x_max > x_min");
}

void Grid2D::validate() const {
    if (nx < 2 || ny < 2) throw ParameterError("Grid2D needs at least 2 nodes per axis");
    if (!(x_max > x_min) || !(y_max > y_min))
        throw ParameterError("Grid2D needs increasing axis ranges");
}

void GridTX::validate() const {
    if (nt < 2 || nx < 2) throw ParameterError("GridTX needs at least 2 nodes per axis");
    if (!(t_max > t_min) || !(x_max > x_min))
        throw ParameterError("GridTX needs increasing axis ranges");
}

}  // namespace diracred
