#ifndef DERANGE_CACHE_HPP
#define DERANGE_CACHE_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace derange {

// Bump when any cached payload layout changes; stale files are recomputed.
inline constexpr std::uint32_t kCacheFormatVersion = 1;

// Directory resolution order: explicit dir, DERANGE_CACHE_DIR, then a
// .derange-cache directory under the user cache root.
inline constexpr const char* kCacheDirEnvVar = "DERANGE_CACHE_DIR";

struct CacheOptions {
  bool enabled = true;
  std::string dir;  // empty = resolve from environment/defaults
};

std::filesystem::path cache_dir(const CacheOptions& opts);

// Returns the payload only when magic, version, key and checksum all match;
// any mismatch or corruption reads as a miss so callers recompute.
std::optional<std::vector<std::byte>> cache_load(const CacheOptions& opts,
                                                 std::string_view key);
void cache_store(const CacheOptions& opts, std::string_view key,
                 std::span<const std::byte> payload);

std::uint64_t fnv1a(std::span<const std::byte> data);

// Resumable progress for long searches: a completed prefix [0, done) of the
// work items plus an opaque accumulated state blob.
struct Checkpoint {
  std::uint64_t done = 0;
  std::vector<std::byte> state;
};

std::optional<Checkpoint> checkpoint_load(const CacheOptions& opts,
                                          std::string_view key);
void checkpoint_store(const CacheOptions& opts, std::string_view key,
                      const Checkpoint& ck);
void checkpoint_clear(const CacheOptions& opts, std::string_view key);

}  // namespace derange

#endif
