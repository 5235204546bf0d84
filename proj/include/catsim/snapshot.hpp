#pragma once

#include <iosfwd>
#include <string>

#include "catsim/grid.hpp"

namespace catsim {

// Snapshot format, pinned by golden-file tests:
//   "CATSNAP 1 <n> <f> <layout>\n"  (layout: rowmajor | fragment)
// followed by n^2 raw bytes (0x00/0x01), interior cells in row-major logical
// order. The halo is never serialized; a read-back grid has a stale halo.
void snapshot_write(const Grid& grid, std::ostream& out);
void snapshot_write(const Grid& grid, const std::string& path);

Grid snapshot_read(std::istream& in);
Grid snapshot_read(const std::string& path);

}  // namespace catsim
