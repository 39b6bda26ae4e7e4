#pragma once

#include "mdgm/graph.hpp"
#include "mdgm/model.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mdgm::cli {

/// Bad flags or flag combinations; exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bijection between external unit IDs and dense indices 0..n-1.
class IdMap {
 public:
  IdMap() = default;
  static IdMap identity(std::size_t n);
  /// `unit_id,index` CSV, optional header. Throws on gaps or repeats.
  static IdMap parse(std::istream& in);
  static IdMap load(const std::filesystem::path& path);

  std::size_t size() const { return ids_.size(); }
  const std::string& id(std::size_t index) const { return ids_[index]; }
  /// Index for an ID, or -1.
  long find(const std::string& id) const;
  void write(std::ostream& out) const;

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// `unit_id,value` CSV with value in {0,1}. Without a map, IDs must be
/// integer indices below `units`. Unknown IDs are reported together.
Observations parse_observations(std::istream& in, std::size_t units, const IdMap* map);
Observations load_observations(const std::filesystem::path& path, std::size_t units,
                               const IdMap* map);

std::string version_string();

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mdgm::cli
