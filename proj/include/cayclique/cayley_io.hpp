#pragma once

// Text formats:
//   group order=<N>            then N rows of N product indices (0 = identity)
//   cayley kind=<zp|group> p=<p> n=<n> [groupfile=<path>]
//                              then one connection element per line

#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cayclique/cayley.hpp"
#include "cayclique/fplinalg.hpp"
#include "cayclique/graph_io.hpp"

namespace cayclique {

inline void write_group(std::ostream& out, const GroupTable& g) {
  out << "group order=" << g.order() << '\n';
  for (const auto& row : g.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << row[i];
    out << '\n';
  }
}

inline GroupTable read_group(std::istream& in) {
  std::string line;
  if (!detail::next_content_line(in, line)) throw ParseError("group: missing header");
  std::istringstream hs(line);
  std::string word, to;
  if (!(hs >> word >> to) || word != "group") throw ParseError("group: malformed header");
  const auto n = detail::header_field(to, "order");
  if (n == 0 || n > 4096) throw ParseError("group: order out of supported range");
  std::vector<std::vector<std::uint32_t>> rows;
  for (std::uint64_t r = 0; r < n; ++r) {
    if (!detail::next_content_line(in, line)) throw ParseError("group: too few rows");
    const auto row = detail::parse_row(line, n, n, "group");
    rows.emplace_back(row.begin(), row.end());
  }
  try {
    return GroupTable(std::move(rows));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("group: ") + e.what());
  }
}

inline GroupTable load_group(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open group file " + path.string());
  return read_group(in);
}

inline void write_spec(std::ostream& out, const CayleySpec& spec) {
  const auto& g = spec.group();
  if (g.is_elementary()) {
    out << "cayley kind=zp p=" << g.p() << " n=" << g.rank() << '\n';
  } else {
    out << "cayley kind=group p=" << g.p() << " n=" << g.rank();
    if (!g.source().empty()) out << " groupfile=" << g.source();
    out << '\n';
  }
  for (const auto& c : spec.connection()) {
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << c[i];
    out << '\n';
  }
}

// groupfile paths are resolved against base_dir when relative. A preloaded
// table may be supplied instead (for in-memory round trips).
inline CayleySpec read_spec(std::istream& in, const std::filesystem::path& base_dir = {},
                            std::shared_ptr<const GroupTable> table = nullptr) {
  std::string line;
  if (!detail::next_content_line(in, line)) throw ParseError("cayley: missing header");
  std::istringstream hs(line);
  std::string word, tkind, tp, tn, tfile;
  if (!(hs >> word >> tkind >> tp >> tn) || word != "cayley") throw ParseError("cayley: malformed header");
  const auto p = detail::header_field(tp, "p");
  const auto n = detail::header_field(tn, "n");
  std::string source;
  if (hs >> tfile) {
    if (tfile.rfind("groupfile=", 0) != 0) throw ParseError("cayley: unexpected header token '" + tfile + "'");
    source = tfile.substr(10);
  }
  Group group = Group::elementary(2, 0);
  if (tkind == "kind=zp") {
    if (!is_prime(p)) throw ParseError("cayley: p is not prime");
    group = Group::elementary(static_cast<Coeff>(p), n);
  } else if (tkind == "kind=group") {
    if (!table) {
      if (source.empty()) throw ParseError("cayley: kind=group needs groupfile=");
      std::filesystem::path path(source);
      if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
      table = std::make_shared<const GroupTable>(load_group(path));
    }
    group = Group::power(table, n, static_cast<Coeff>(p), source);
  } else {
    throw ParseError("cayley: unknown kind in '" + tkind + "'");
  }
  std::vector<Element> elements;
  while (detail::next_content_line(in, line)) {
    const auto row = detail::parse_row(line, n, group.base(), "cayley");
    elements.emplace_back(row.begin(), row.end());
  }
  try {
    return CayleySpec(group, std::move(elements));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("cayley: ") + e.what());
  }
}

inline CayleySpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open spec file " + path.string());
  return read_spec(in, path.parent_path());
}

inline std::string to_text(const CayleySpec& spec) {
  std::ostringstream out;
  write_spec(out, spec);
  return out.str();
}

inline std::string to_text(const GroupTable& g) {
  std::ostringstream out;
  write_group(out, g);
  return out.str();
}

}  // namespace cayclique
