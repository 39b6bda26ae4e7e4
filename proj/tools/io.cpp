#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace mdgm::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_index(const std::string& s, long long& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return !s.empty() && ec == std::errc{} && ptr == s.data() + s.size();
}

// Splits `a,b` into two trimmed fields; false when the line has another shape.
bool split_pair(const std::string& line, std::string& a, std::string& b) {
  const auto comma = line.find(',');
  if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) return false;
  a = trim(line.substr(0, comma));
  b = trim(line.substr(comma + 1));
  return !a.empty() && !b.empty();
}

std::string join_some(const std::vector<std::string>& items) {
  std::string s;
  const std::size_t shown = std::min<std::size_t>(items.size(), 10);
  for (std::size_t k = 0; k < shown; ++k) s += (k ? ", " : "") + items[k];
  if (items.size() > shown) s += ", ... (" + std::to_string(items.size()) + " in total)";
  return s;
}

}  // namespace

IdMap IdMap::identity(std::size_t n) {
  IdMap m;
  for (std::size_t i = 0; i < n; ++i) {
    m.ids_.push_back(std::to_string(i));
    m.index_.emplace(m.ids_.back(), i);
  }
  return m;
}

IdMap IdMap::parse(std::istream& in) {
  std::vector<std::pair<std::string, long long>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::string id, idx;
    long long k = 0;
    if (!split_pair(t, id, idx)) {
      throw std::runtime_error("id map line " + std::to_string(line_no) + ": expected unit_id,index");
    }
    if (!parse_index(idx, k)) {
      if (rows.empty() && line_no == 1) continue;  // header
      throw std::runtime_error("id map line " + std::to_string(line_no) + ": bad index '" + idx + "'");
    }
    rows.emplace_back(id, k);
  }
  IdMap m;
  m.ids_.resize(rows.size());
  std::vector<char> used(rows.size(), 0);
  for (const auto& [id, k] : rows) {
    if (k < 0 || static_cast<std::size_t>(k) >= rows.size()) {
      throw std::runtime_error("id map index " + std::to_string(k) + " for '" + id +
                               "' is outside [0," + std::to_string(rows.size()) + ")");
    }
    if (used[k]) throw std::runtime_error("id map index " + std::to_string(k) + " assigned twice");
    if (!m.index_.emplace(id, k).second) {
      throw std::runtime_error("id map lists unit '" + id + "' twice");
    }
    used[k] = 1;
    m.ids_[k] = id;
  }
  return m;
}

IdMap IdMap::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open id map '" + path.string() + "'");
  return parse(in);
}

long IdMap::find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

void IdMap::write(std::ostream& out) const {
  out << "unit_id,index\n";
  for (std::size_t i = 0; i < ids_.size(); ++i) out << ids_[i] << ',' << i << '\n';
}

Observations parse_observations(std::istream& in, std::size_t units, const IdMap* map) {
  Observations y(units);
  std::vector<std::string> unknown;
  std::string line;
  std::size_t line_no = 0;
  bool seen_row = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::string id, value;
    if (!split_pair(t, id, value)) {
      throw std::runtime_error("data line " + std::to_string(line_no) + ": expected unit_id,value");
    }
    if (value != "0" && value != "1") {
      if (!seen_row) {  // header
        seen_row = true;
        continue;
      }
      throw std::runtime_error("data line " + std::to_string(line_no) + ": value '" + value +
                               "' is not 0 or 1");
    }
    seen_row = true;
    long long index = -1;
    if (map) {
      index = map->find(id);
    } else if (!parse_index(id, index) || index < 0 || static_cast<std::size_t>(index) >= units) {
      index = -1;
    }
    if (index < 0) {
      unknown.push_back(id);
      continue;
    }
    y.add(static_cast<Vertex>(index), value == "1");
  }
  if (!unknown.empty()) {
    throw std::runtime_error("data refers to units not in the graph: " + join_some(unknown));
  }
  return y;
}

Observations load_observations(const std::filesystem::path& path, std::size_t units,
                               const IdMap* map) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open data file '" + path.string() + "'");
  return parse_observations(in, units, map);
}

}  // namespace mdgm::cli
