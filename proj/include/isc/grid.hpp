#pragma once

#include <array>
#include <span>
#include <vector>

#include "isc/dual.hpp"

namespace isc {

struct GridSpec {
    int nx = 1, ny = 1, nz = 1;
    std::vector<double> dx, dy, dz;  // per column/row/layer, ft
    double top = 0.0;                // depth of the top face of layer 0, ft
    bool operator==(const GridSpec&) const = default;
};

struct Connection {
    int a = 0;  // lower cell index
    int b = 0;
    double trans = 0.0;    // harmonic (A k / h), md·ft
    double thermal = 0.0;  // harmonic (A / h), ft
    int axis = 0;          // 0=x, 1=y, 2=z
};

inline double harmonic_mean(double a, double b)
{
    return (a > 0.0 && b > 0.0) ? 2.0 * a * b / (a + b) : 0.0;
}

template <class S>
S harmonic_mean(const S& a, const S& b)
{
    if (!(value(a) > 0.0) || !(value(b) > 0.0)) return S(0.0);
    return 2.0 * a * b / (a + b);
}

// Structured Cartesian grid; depth increases downward, cell index is
// i + nx*(j + ny*k).
class Grid {
public:
    Grid() = default;
    Grid(const GridSpec& spec, std::vector<double> permx, std::vector<double> permy,
         std::vector<double> permz, std::vector<double> phi_ref);

    int nx() const { return spec_.nx; }
    int ny() const { return spec_.ny; }
    int nz() const { return spec_.nz; }
    int ncell() const { return spec_.nx * spec_.ny * spec_.nz; }
    int index(int i, int j, int k) const { return i + spec_.nx * (j + spec_.ny * k); }
    std::array<int, 3> ijk(int cell) const;

    double dx(int c) const { return spec_.dx[ijk(c)[0]]; }
    double dy(int c) const { return spec_.dy[ijk(c)[1]]; }
    double dz(int c) const { return spec_.dz[ijk(c)[2]]; }
    double volume(int c) const { return volume_[c]; }
    double depth(int c) const { return depth_[c]; }
    double permx(int c) const { return permx_[c]; }
    double permy(int c) const { return permy_[c]; }
    double permz(int c) const { return permz_[c]; }
    double phi_ref(int c) const { return phi_ref_[c]; }

    const std::vector<Connection>& connections() const { return conns_; }
    // connection ids touching a cell, ascending
    std::span<const int> cell_connections(int c) const
    {
        return {cell_conn_.data() + cell_conn_ptr_[c],
                static_cast<std::size_t>(cell_conn_ptr_[c + 1] - cell_conn_ptr_[c])};
    }

private:
    GridSpec spec_;
    std::vector<double> permx_, permy_, permz_, phi_ref_;
    std::vector<double> volume_, depth_;
    std::vector<Connection> conns_;
    std::vector<int> cell_conn_ptr_, cell_conn_;
};

std::vector<Connection> build_connections(const Grid& grid);

// Slab decomposition along the axis with the most cells.
struct Partition {
    int axis = 0;
    std::vector<int> owner;                // cell -> subdomain
    std::vector<std::vector<int>> cells;   // subdomain -> owned cells, ascending
    std::vector<std::vector<int>> halo;    // subdomain -> neighbour cells owned elsewhere
    int size() const { return static_cast<int>(cells.size()); }
};

Partition partition(const Grid& grid, int nparts);

// Linear overburden/underburden loss, Btu/(ft³·day). Off by default.
struct HeatLossConfig {
    bool enabled = false;
    double k_ob = 0.0;  // Btu/(ft·day·°F)
    double d = 1.0;     // ft
    double rho = 0.0;   // °F/ft offset
    bool operator==(const HeatLossConfig&) const = default;
};

// exposed area of a cell toward over/underburden, ft²
double heat_loss_area(const Grid& grid, int cell);

template <class S>
S heat_loss(const Grid& grid, int cell, const S& t, double t_ini, const HeatLossConfig& cfg)
{
    if (!cfg.enabled) return S(0.0);
    const double area = heat_loss_area(grid, cell);
    if (area == 0.0) return S(0.0);
    return (area * cfg.k_ob / grid.volume(cell)) * ((t - t_ini) / cfg.d - cfg.rho);
}

}  // namespace isc
