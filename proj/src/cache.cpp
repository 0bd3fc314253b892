#include "derange/cache.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>

namespace derange {

namespace {

constexpr char kMagic[4] = {'D', 'R', 'G', 'C'};
constexpr char kCheckpointMagic[4] = {'D', 'R', 'G', 'K'};

std::string sanitize_key(std::string_view key) {
  std::string out;
  out.reserve(key.size());
  for (char c : key) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '.';
    out += ok ? c : '_';
  }
  return out;
}

template <class T>
void put(std::string& buf, T v) {
  char raw[sizeof(T)];
  std::memcpy(raw, &v, sizeof(T));
  buf.append(raw, sizeof(T));
}

template <class T>
bool get(const std::vector<std::byte>& buf, size_t& pos, T& v) {
  if (pos + sizeof(T) > buf.size()) return false;
  std::memcpy(&v, buf.data() + pos, sizeof(T));
  pos += sizeof(T);
  return true;
}

std::optional<std::vector<std::byte>> read_file(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::vector<std::byte> data;
  in.seekg(0, std::ios::end);
  const auto len = in.tellg();
  if (len < 0) return std::nullopt;
  data.resize(static_cast<size_t>(len));
  in.seekg(0);
  in.read(reinterpret_cast<char*>(data.data()),
          static_cast<std::streamsize>(data.size()));
  if (!in) return std::nullopt;
  return data;
}

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view bytes) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;  // cache writes are best-effort
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) return;
  }
  std::filesystem::rename(tmp, path, ec);
}

// Shared framing: magic, version, key, checksum-protected payload.
std::string frame(const char magic[4], std::string_view key,
                  std::span<const std::byte> payload) {
  std::string buf;
  buf.append(magic, 4);
  put(buf, kCacheFormatVersion);
  put(buf, static_cast<std::uint32_t>(key.size()));
  buf.append(key.data(), key.size());
  put(buf, static_cast<std::uint64_t>(payload.size()));
  put(buf, fnv1a(payload));
  buf.append(reinterpret_cast<const char*>(payload.data()), payload.size());
  return buf;
}

std::optional<std::vector<std::byte>> unframe(const char magic[4],
                                              std::string_view key,
                                              const std::vector<std::byte>& buf) {
  size_t pos = 0;
  if (buf.size() < 4 || std::memcmp(buf.data(), magic, 4) != 0)
    return std::nullopt;
  pos = 4;
  std::uint32_t version = 0, key_len = 0;
  if (!get(buf, pos, version) || version != kCacheFormatVersion)
    return std::nullopt;
  if (!get(buf, pos, key_len) || pos + key_len > buf.size()) return std::nullopt;
  if (std::string_view(reinterpret_cast<const char*>(buf.data() + pos),
                       key_len) != key)
    return std::nullopt;
  pos += key_len;
  std::uint64_t payload_len = 0, checksum = 0;
  if (!get(buf, pos, payload_len) || !get(buf, pos, checksum))
    return std::nullopt;
  if (pos + payload_len != buf.size()) return std::nullopt;
  std::vector<std::byte> payload(buf.begin() + static_cast<std::ptrdiff_t>(pos),
                                 buf.end());
  if (fnv1a(payload) != checksum) return std::nullopt;
  return payload;
}

}  // namespace

std::uint64_t fnv1a(std::span<const std::byte> data) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::byte b : data) {
    h ^= static_cast<std::uint64_t>(b);
    h *= 1099511628211ull;
  }
  return h;
}

std::filesystem::path cache_dir(const CacheOptions& opts) {
  if (!opts.dir.empty()) return opts.dir;
  if (const char* env = std::getenv(kCacheDirEnvVar); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return std::filesystem::path(xdg) / "derange";
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".cache" / "derange";
  return std::filesystem::path(".derange-cache");
}

std::optional<std::vector<std::byte>> cache_load(const CacheOptions& opts,
                                                 std::string_view key) {
  if (!opts.enabled) return std::nullopt;
  const auto path = cache_dir(opts) / (sanitize_key(key) + ".bin");
  const auto raw = read_file(path);
  if (!raw) return std::nullopt;
  return unframe(kMagic, key, *raw);
}

void cache_store(const CacheOptions& opts, std::string_view key,
                 std::span<const std::byte> payload) {
  if (!opts.enabled) return;
  const auto path = cache_dir(opts) / (sanitize_key(key) + ".bin");
  write_file_atomic(path, frame(kMagic, key, payload));
}

std::optional<Checkpoint> checkpoint_load(const CacheOptions& opts,
                                          std::string_view key) {
  if (!opts.enabled) return std::nullopt;
  const auto path = cache_dir(opts) / (sanitize_key(key) + ".ckpt");
  const auto raw = read_file(path);
  if (!raw) return std::nullopt;
  const auto payload = unframe(kCheckpointMagic, key, *raw);
  if (!payload) return std::nullopt;
  size_t pos = 0;
  Checkpoint ck;
  if (!get(*payload, pos, ck.done)) return std::nullopt;
  ck.state.assign(payload->begin() + static_cast<std::ptrdiff_t>(pos),
                  payload->end());
  return ck;
}

void checkpoint_store(const CacheOptions& opts, std::string_view key,
                      const Checkpoint& ck) {
  if (!opts.enabled) return;
  std::string payload;
  put(payload, ck.done);
  payload.append(reinterpret_cast<const char*>(ck.state.data()),
                 ck.state.size());
  const auto path = cache_dir(opts) / (sanitize_key(key) + ".ckpt");
  write_file_atomic(
      path, frame(kCheckpointMagic, key,
                  std::span<const std::byte>(
                      reinterpret_cast<const std::byte*>(payload.data()),
                      payload.size())));
}

void checkpoint_clear(const CacheOptions& opts, std::string_view key) {
  std::error_code ec;
  std::filesystem::remove(cache_dir(opts) / (sanitize_key(key) + ".ckpt"), ec);
}

}  // namespace derange
