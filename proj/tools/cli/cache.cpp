#include "cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <system_error>

namespace walklab::cli {

namespace {

class FileLock {
 public:
  FileLock(const std::filesystem::path& path, bool exclusive)
      : fd_(::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644)) {
    if (fd_ >= 0) {
      ::flock(fd_, exclusive ? LOCK_EX : LOCK_SH);
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;
  ~FileLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }

 private:
  int fd_;
};

}  // namespace

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ResultCache::default_dir() {
  if (const char* env = std::getenv("WALKLAB_CACHE_DIR"); env && *env) {
    return env;
  }
  if (const char* home = std::getenv("HOME"); home && *home) {
    return std::filesystem::path(home) / ".cache" / "walklab";
  }
  return ".walklab-cache";
}

std::filesystem::path ResultCache::path_for(const std::string& hash) const {
  return dir_ / (hash + ".json");
}

std::optional<nlohmann::json> ResultCache::load(
    const std::string& hash, const std::string& version) const {
  std::error_code ec;
  if (!std::filesystem::exists(path_for(hash), ec)) {
    return std::nullopt;
  }
  FileLock lock(dir_ / ".lock", false);
  std::ifstream in(path_for(hash));
  if (!in) {
    return std::nullopt;
  }
  auto record = nlohmann::json::parse(in, nullptr, false);
  if (record.is_discarded() || !record.is_object() ||
      record.value("config_hash", "") != hash ||
      record.value("version", "") != version) {
    return std::nullopt;
  }
  return record;
}

void ResultCache::store(const std::string& hash,
                        const nlohmann::json& record) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) {
    return;
  }
  FileLock lock(dir_ / ".lock", true);
  const auto target = path_for(hash);
  auto tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) {
      return;
    }
    out << record.dump() << '\n';
    if (!out) {
      std::filesystem::remove(tmp, ec);
      return;
    }
  }
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
  }
}

}  // namespace walklab::cli
