#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "isc/deck.hpp"
#include "isc/model.hpp"

namespace isc::test {

inline std::string data_path(const std::string& rel) { return std::string(ISC_SOURCE_DIR) + "/" + rel; }

inline std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Deck tube_deck() { return read_deck_file(data_path("data/decks/tube.deck")); }
inline Deck field_deck() { return read_deck_file(data_path("data/decks/field.deck")); }

// Tube fluid on an nx x 1 x 1 horizontal grid, no wells, 1 day schedule.
inline Deck lab_deck(int nx, bool keep_reactions = true)
{
    Deck d = tube_deck();
    d.grid.nx = nx;
    d.grid.ny = 1;
    d.grid.nz = 1;
    d.grid.dx.assign(nx, 1.0);
    d.grid.dy.assign(1, 1.0);
    d.grid.dz.assign(1, 1.0);
    d.rock.permx.assign(nx, 1000.0);
    d.rock.permy.assign(nx, 1000.0);
    d.rock.permz.assign(nx, 1000.0);
    d.rock.porosity.assign(nx, 0.3);
    d.wells.clear();
    if (!keep_reactions) d.reactions.reactions.clear();
    d.schedule.report_times.clear();
    d.schedule.end = 1.0;
    return d;
}

}  // namespace isc::test
