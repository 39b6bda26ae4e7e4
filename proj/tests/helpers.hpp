#pragma once

#include "mdgm/graph.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace testing {

inline mdgm::Nug edges(std::size_t n, std::vector<std::pair<int, int>> list) {
  std::vector<mdgm::Edge> e;
  for (auto [a, b] : list) {
    e.push_back({static_cast<mdgm::Vertex>(a), static_cast<mdgm::Vertex>(b), 1});
  }
  return mdgm::Nug::from_edges(n, std::move(e));
}

inline mdgm::Nug cycle(std::size_t n) {
  std::vector<std::pair<int, int>> list;
  for (std::size_t i = 0; i < n; ++i) list.emplace_back(i, (i + 1) % n);
  return edges(n, list);
}

inline mdgm::Nug path(std::size_t n) {
  std::vector<std::pair<int, int>> list;
  for (std::size_t i = 0; i + 1 < n; ++i) list.emplace_back(i, i + 1);
  return edges(n, list);
}

inline mdgm::Nug lattice(std::size_t r, std::size_t c, bool second = false) {
  return mdgm::build_lattice_nug(
      {r, c, second ? mdgm::NeighborhoodOrder::Second : mdgm::NeighborhoodOrder::First});
}

inline mdgm::Nug parse(const std::string& text) {
  std::istringstream in(text);
  return mdgm::parse_nug(in);
}

}  // namespace testing
