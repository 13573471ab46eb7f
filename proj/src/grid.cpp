#include "isc/grid.hpp"

#include <algorithm>

#include "isc/error.hpp"

namespace isc {

Grid::Grid(const GridSpec& spec, std::vector<double> permx, std::vector<double> permy,
           std::vector<double> permz, std::vector<double> phi_ref)
    : spec_(spec),
      permx_(std::move(permx)),
      permy_(std::move(permy)),
      permz_(std::move(permz)),
      phi_ref_(std::move(phi_ref))
{
    if (spec_.nx < 1 || spec_.ny < 1 || spec_.nz < 1)
        throw Error(ErrorCode::non_physical_value, "grid dimensions must be >= 1");
    if (static_cast<int>(spec_.dx.size()) != spec_.nx ||
        static_cast<int>(spec_.dy.size()) != spec_.ny ||
        static_cast<int>(spec_.dz.size()) != spec_.nz)
        throw Error(ErrorCode::dimension_mismatch, "cell size arrays do not match dimensions");
    const int n = ncell();
    for (const auto* v : {&permx_, &permy_, &permz_, &phi_ref_})
        if (static_cast<int>(v->size()) != n)
            throw Error(ErrorCode::dimension_mismatch, "cell property array length != cell count");

    volume_.resize(n);
    depth_.resize(n);
    std::vector<double> layer_top(spec_.nz);
    double z = spec_.top;
    for (int k = 0; k < spec_.nz; ++k) {
        layer_top[k] = z;
        z += spec_.dz[k];
    }
    for (int c = 0; c < n; ++c) {
        const auto [i, j, k] = ijk(c);
        volume_[c] = spec_.dx[i] * spec_.dy[j] * spec_.dz[k];
        depth_[c] = layer_top[k] + 0.5 * spec_.dz[k];
    }

    conns_ = build_connections(*this);

    std::vector<int> count(n + 1, 0);
    for (const Connection& cn : conns_) {
        ++count[cn.a + 1];
        ++count[cn.b + 1];
    }
    for (int c = 0; c < n; ++c) count[c + 1] += count[c];
    cell_conn_ptr_ = count;
    cell_conn_.resize(count[n]);
    std::vector<int> fill(count.begin(), count.end() - 1);
    for (int id = 0; id < static_cast<int>(conns_.size()); ++id) {
        cell_conn_[fill[conns_[id].a]++] = id;
        cell_conn_[fill[conns_[id].b]++] = id;
    }
}

std::array<int, 3> Grid::ijk(int cell) const
{
    const int i = cell % spec_.nx;
    const int r = cell / spec_.nx;
    return {i, r % spec_.ny, r / spec_.ny};
}

std::vector<Connection> build_connections(const Grid& g)
{
    std::vector<Connection> out;
    auto add = [&](int a, int b, int axis) {
        double ta, tb, area_a, area_b, ha, hb;
        switch (axis) {
        case 0:
            area_a = g.dy(a) * g.dz(a); area_b = g.dy(b) * g.dz(b);
            ha = g.dx(a); hb = g.dx(b);
            ta = area_a * g.permx(a) / ha; tb = area_b * g.permx(b) / hb;
            break;
        case 1:
            area_a = g.dx(a) * g.dz(a); area_b = g.dx(b) * g.dz(b);
            ha = g.dy(a); hb = g.dy(b);
            ta = area_a * g.permy(a) / ha; tb = area_b * g.permy(b) / hb;
            break;
        default:
            area_a = g.dx(a) * g.dy(a); area_b = g.dx(b) * g.dy(b);
            ha = g.dz(a); hb = g.dz(b);
            ta = area_a * g.permz(a) / ha; tb = area_b * g.permz(b) / hb;
            break;
        }
        Connection cn;
        cn.a = a;
        cn.b = b;
        cn.axis = axis;
        cn.trans = harmonic_mean(ta, tb);
        cn.thermal = harmonic_mean(area_a / ha, area_b / hb);
        out.push_back(cn);
    };
    // ordered by lower cell, then by axis: keeps per-cell connection lists sorted
    for (int c = 0; c < g.ncell(); ++c) {
        const auto [i, j, k] = g.ijk(c);
        if (i + 1 < g.nx()) add(c, g.index(i + 1, j, k), 0);
        if (j + 1 < g.ny()) add(c, g.index(i, j + 1, k), 1);
        if (k + 1 < g.nz()) add(c, g.index(i, j, k + 1), 2);
    }
    return out;
}

Partition partition(const Grid& grid, int nparts)
{
    Partition part;
    const int dims[3] = {grid.nx(), grid.ny(), grid.nz()};
    part.axis = 0;
    for (int a = 1; a < 3; ++a)
        if (dims[a] > dims[part.axis]) part.axis = a;
    const int nslab = dims[part.axis];
    const int np = std::max(1, std::min(nparts, nslab));

    // slab -> part, first (nslab % np) parts get one extra slab
    std::vector<int> slab_owner(nslab);
    const int base = nslab / np, extra = nslab % np;
    int s = 0;
    for (int p = 0; p < np; ++p) {
        const int len = base + (p < extra ? 1 : 0);
        for (int q = 0; q < len; ++q) slab_owner[s++] = p;
    }

    part.owner.resize(grid.ncell());
    part.cells.assign(np, {});
    for (int c = 0; c < grid.ncell(); ++c) {
        const int p = slab_owner[grid.ijk(c)[part.axis]];
        part.owner[c] = p;
        part.cells[p].push_back(c);
    }
    part.halo.assign(np, {});
    for (const Connection& cn : grid.connections()) {
        const int pa = part.owner[cn.a], pb = part.owner[cn.b];
        if (pa != pb) {
            part.halo[pa].push_back(cn.b);
            part.halo[pb].push_back(cn.a);
        }
    }
    for (auto& h : part.halo) {
        std::sort(h.begin(), h.end());
        h.erase(std::unique(h.begin(), h.end()), h.end());
    }
    return part;
}

double heat_loss_area(const Grid& grid, int cell)
{
    const int k = grid.ijk(cell)[2];
    const double face = grid.dx(cell) * grid.dy(cell);
    double area = 0.0;
    if (k == 0) area += face;
    if (k == grid.nz() - 1) area += face;
    return area;
}

}  // namespace isc
