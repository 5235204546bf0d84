#include "catsim/snapshot.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace catsim {

namespace {

[[noreturn]] void format_fail(const std::string& why) {
  throw std::runtime_error("snapshot format error: " + why);
}

}  // namespace

void snapshot_write(const Grid& grid, std::ostream& out) {
  const char* layout =
      grid.layout == Layout::RowMajor ? "rowmajor" : "fragment";
  out << "CATSNAP 1 " << grid.n << ' ' << grid.f << ' ' << layout << '\n';
  std::string row(static_cast<std::size_t>(grid.n), '\0');
  for (int y = 0; y < grid.n; ++y) {
    for (int x = 0; x < grid.n; ++x)
      row[static_cast<std::size_t>(x)] =
          static_cast<char>(grid.interior(y, x));
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
  if (!out) format_fail("write failed");
}

void snapshot_write(const Grid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) format_fail("cannot open '" + path + "' for writing");
  snapshot_write(grid, out);
}

Grid snapshot_read(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) format_fail("missing header line");
  std::istringstream hs(header);
  std::string magic, layout_token;
  int version = 0, n = -1, f = -1;
  if (!(hs >> magic >> version >> n >> f >> layout_token))
    format_fail("malformed header '" + header + "'");
  std::string trailing;
  if (hs >> trailing) format_fail("trailing tokens in header");
  if (magic != "CATSNAP") format_fail("bad magic '" + magic + "'");
  if (version != 1)
    format_fail("unsupported version " + std::to_string(version));
  Layout layout;
  if (layout_token == "rowmajor")
    layout = Layout::RowMajor;
  else if (layout_token == "fragment")
    layout = Layout::FragmentContiguous;
  else
    format_fail("unknown layout '" + layout_token + "'");
  if (n < 0 || f <= 0 || n % f != 0)
    format_fail("bad geometry n=" + std::to_string(n) +
                " f=" + std::to_string(f));

  Grid grid = make_grid(n, f, Layout::RowMajor);
  std::string row(static_cast<std::size_t>(n), '\0');
  for (int y = 0; y < n; ++y) {
    in.read(row.data(), static_cast<std::streamsize>(row.size()));
    if (in.gcount() != static_cast<std::streamsize>(row.size()))
      format_fail("truncated payload (expected " + std::to_string(n) + "x" +
                  std::to_string(n) + " cells)");
    for (int x = 0; x < n; ++x) {
      const auto v = static_cast<uint8_t>(row[static_cast<std::size_t>(x)]);
      if (v > 1) format_fail("cell byte out of {0,1}");
      grid.interior(y, x) = v;
    }
  }
  if (layout == Layout::FragmentContiguous) {
    // Re-shuffle into the declared in-memory order.
    Grid frag = make_grid(n, f, Layout::FragmentContiguous);
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) frag.interior(y, x) = grid.interior(y, x);
    return frag;
  }
  return grid;
}

Grid snapshot_read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) format_fail("cannot open '" + path + "' for reading");
  return snapshot_read(in);
}

}  // namespace catsim
