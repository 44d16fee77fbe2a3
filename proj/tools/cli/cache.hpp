#ifndef WALKLAB_CLI_CACHE_HPP_
#define WALKLAB_CLI_CACHE_HPP_

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace walklab::cli {

// On-disk result cache: one JSON record per config hash. Writers go through
// a temporary file and rename; readers and writers serialise on an advisory
// lock file in the cache directory.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  // $WALKLAB_CACHE_DIR, else $HOME/.cache/walklab, else ./.walklab-cache.
  static std::filesystem::path default_dir();

  const std::filesystem::path& dir() const noexcept { return dir_; }

  // The stored record for `hash`, provided its config_hash and version match.
  std::optional<nlohmann::json> load(const std::string& hash,
                                     const std::string& version) const;
  void store(const std::string& hash, const nlohmann::json& record) const;

 private:
  std::filesystem::path path_for(const std::string& hash) const;

  std::filesystem::path dir_;
};

}  // namespace walklab::cli

#endif  // WALKLAB_CLI_CACHE_HPP_
