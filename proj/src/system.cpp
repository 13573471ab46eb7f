#include "isc/system.hpp"

#include <algorithm>

namespace isc {

int BlockPattern::find(int r, int c) const
{
    const auto first = col.begin() + rowptr[r];
    const auto last = col.begin() + rowptr[r + 1];
    const auto it = std::lower_bound(first, last, c);
    return (it != last && *it == c) ? static_cast<int>(it - col.begin()) : -1;
}

BlockPattern make_pattern(const Model& m)
{
    const int n = m.ncell();
    std::vector<std::vector<int>> cols(n);
    for (int c = 0; c < n; ++c) cols[c].push_back(c);
    for (const Connection& cn : m.grid.connections()) {
        cols[cn.a].push_back(cn.b);
        cols[cn.b].push_back(cn.a);
    }
    for (const Well& w : m.wells)
        for (int a : w.cells)
            for (int b : w.cells) cols[a].push_back(b);

    BlockPattern p;
    p.nrow = n;
    p.nb = m.nequ();
    p.rowptr.assign(n + 1, 0);
    for (int c = 0; c < n; ++c) {
        auto& v = cols[c];
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        p.rowptr[c + 1] = p.rowptr[c] + static_cast<int>(v.size());
    }
    p.col.reserve(p.rowptr[n]);
    for (int c = 0; c < n; ++c) p.col.insert(p.col.end(), cols[c].begin(), cols[c].end());
    p.diag.resize(n);
    for (int c = 0; c < n; ++c) p.diag[c] = p.find(c, c);
    const auto& conns = m.grid.connections();
    p.conn_ab.resize(conns.size());
    p.conn_ba.resize(conns.size());
    for (std::size_t k = 0; k < conns.size(); ++k) {
        p.conn_ab[k] = p.find(conns[k].a, conns[k].b);
        p.conn_ba[k] = p.find(conns[k].b, conns[k].a);
    }
    return p;
}

LinearSystem::LinearSystem(const BlockPattern& p, const Model& m)
    : pattern(&p), nb(p.nb)
{
    a.assign(static_cast<std::size_t>(p.nnzb()) * nb * nb, 0.0);
    f.assign(static_cast<std::size_t>(p.nrow) * nb, 0.0);
    wells.resize(m.wells.size());
    for (std::size_t w = 0; w < m.wells.size(); ++w) {
        wells[w].B.assign(m.wells[w].cells.size() * nb, 0.0);
        wells[w].C.assign(m.wells[w].cells.size() * nb, 0.0);
    }
}

}  // namespace isc
