#include "isc/report.hpp"

#include <filesystem>
#include <sstream>

#include "isc/cell.hpp"
#include "isc/error.hpp"
#include "isc/numfmt.hpp"

namespace isc {

std::vector<std::string> cell_columns(const Model& m)
{
    const FluidModel& f = m.fluid;
    std::vector<std::string> h = {"time", "cell", "i", "j", "k", "p", "T", "Sw", "So", "Sg"};
    for (int c : f.oil()) h.push_back("x_" + f.comp(c).name);
    for (int c : f.volatiles()) h.push_back("y_" + f.comp(c).name);
    h.push_back("Cc");
    return h;
}

std::vector<std::string> well_columns(const Model& m)
{
    std::vector<std::string> h = {"time", "well", "bhp", "q_water", "q_oil", "q_gas", "q_energy"};
    for (int c : m.fluid.volatiles()) h.push_back("q_" + m.fluid.comp(c).name);
    return h;
}

std::vector<std::vector<double>> cell_rows(const Model& m, const Frame& fr)
{
    const Layout& l = m.layout;
    const int N = l.nequ;
    std::vector<std::vector<double>> rows;
    rows.reserve(m.ncell());
    for (int c = 0; c < m.ncell(); ++c) {
        const double* u = fr.state->u.data() + static_cast<std::size_t>(c) * N;
        CellEval<double> e;
        evaluate_cell(m, c, u, e);
        const auto ijk = m.grid.ijk(c);
        std::vector<double> r = {fr.t, double(c), double(ijk[0] + 1), double(ijk[1] + 1),
                                 double(ijk[2] + 1), e.p, e.t, e.sw, e.so, e.sg};
        for (int i = 0; i < l.nco; ++i) r.push_back(e.x[i]);
        for (int k : m.fluid.volatiles()) r.push_back(e.y[k]);
        r.push_back(e.cc);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<std::vector<double>> well_rows(const Model& m, const Frame& fr)
{
    std::vector<std::vector<double>> rows;
    for (std::size_t w = 0; w < m.wells.size(); ++w) {
        const WellFlows& wf = fr.wells[w];
        std::vector<double> r = {fr.t, double(w), fr.state->bhp[w], wf.phase[0], wf.phase[1],
                                 wf.phase[2], wf.energy};
        for (int c : m.fluid.volatiles()) r.push_back(wf.comp[c]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string csv_line(const std::vector<double>& row, const std::string* name_at_1)
{
    std::string s;
    for (std::size_t k = 0; k < row.size(); ++k) {
        if (k) s += ',';
        if (k == 1 && name_at_1) s += *name_at_1;
        else if (k >= 1 && k <= 4 && !name_at_1) s += std::to_string(static_cast<long>(row[k]));
        else s += format_double(row[k]);
    }
    s += '\n';
    return s;
}

namespace {

std::string header_line(const std::vector<std::string>& h)
{
    std::string s;
    for (std::size_t k = 0; k < h.size(); ++k) {
        if (k) s += ',';
        s += h[k];
    }
    return s + '\n';
}

void check(const std::ofstream& os, const std::string& what)
{
    if (!os) throw Error(ErrorCode::sink_failure, "cannot write " + what);
}

}  // namespace

CsvReport::CsvReport(const Model& m, const std::string& dir) : m_(m), dir_(dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const std::string cp = (std::filesystem::path(dir) / "cells.csv").string();
    const std::string wp = (std::filesystem::path(dir) / "wells.csv").string();
    cells_.open(cp, std::ios::binary | std::ios::trunc);
    wells_.open(wp, std::ios::binary | std::ios::trunc);
    check(cells_, cp);
    check(wells_, wp);
    cells_ << header_line(cell_columns(m));
    wells_ << header_line(well_columns(m));
    check(cells_, cp);
    check(wells_, wp);
}

std::size_t CsvReport::write(const Frame& fr)
{
    std::size_t bytes = 0;
    for (const auto& r : cell_rows(m_, fr)) {
        const std::string s = csv_line(r);
        cells_ << s;
        bytes += s.size();
    }
    const auto wr = well_rows(m_, fr);
    for (std::size_t w = 0; w < wr.size(); ++w) {
        const std::string s = csv_line(wr[w], &m_.wells[w].name);
        wells_ << s;
        bytes += s.size();
    }
    cells_.flush();
    wells_.flush();
    check(cells_, dir_ + "/cells.csv");
    check(wells_, dir_ + "/wells.csv");
    return bytes;
}

void CsvReport::close()
{
    cells_.close();
    wells_.close();
    check(cells_, dir_ + "/cells.csv");
    check(wells_, dir_ + "/wells.csv");
}

int CsvTable::column(const std::string& name) const
{
    for (std::size_t k = 0; k < header.size(); ++k)
        if (header[k] == name) return static_cast<int>(k);
    return -1;
}

CsvTable read_csv(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::sink_failure, "cannot read " + path);
    CsvTable t;
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(tok);
        return out;
    };
    if (std::getline(in, line)) t.header = split(line);
    while (std::getline(in, line))
        if (!line.empty()) t.rows.push_back(split(line));
    return t;
}

}  // namespace isc
