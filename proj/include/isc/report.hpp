#pragma once

// cells.csv / wells.csv writers. Numbers use the shortest text that parses
// back to the same double.

#include <fstream>
#include <string>
#include <vector>

#include "isc/simulator.hpp"

namespace isc {

std::vector<std::string> cell_columns(const Model& m);
std::vector<std::string> well_columns(const Model& m);

// Numeric rows of one frame; the well column holds the well index.
std::vector<std::vector<double>> cell_rows(const Model& m, const Frame& fr);
std::vector<std::vector<double>> well_rows(const Model& m, const Frame& fr);

class CsvReport {
public:
    // Creates dir if needed and writes both headers. Throws SinkFailure.
    CsvReport(const Model& m, const std::string& dir);
    // returns bytes written
    std::size_t write(const Frame& fr);
    void close();

private:
    const Model& m_;
    std::string dir_;
    std::ofstream cells_, wells_;
};

// Joins values with commas. With a name it goes in column 1 (wells rows);
// without one, columns 1-4 are the integer cell, i, j, k.
std::string csv_line(const std::vector<double>& row, const std::string* name_at_1 = nullptr);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    int column(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(const std::string& path);

}  // namespace isc
