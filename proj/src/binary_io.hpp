#pragma once

// Sectioned little-endian container used for the db and index files:
//   magic[8] | u32 version | u32 section_count |
//   { u32 tag | u64 length | payload[length] | u32 crc32(payload) }*

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "wedsearch/types.hpp"

namespace wedsearch::detail {

class BinaryWriter {
 public:
  template <typename T>
    requires std::is_trivially_copyable_v<T>
  void put(const T& v) {
    const auto* p = reinterpret_cast<const char*>(&v);
    buf_.append(p, sizeof(T));
  }
  template <typename T>
    requires std::is_trivially_copyable_v<T>
  void put_vector(const std::vector<T>& v) {
    put<std::uint64_t>(v.size());
    if (!v.empty()) buf_.append(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(T));
  }
  const std::string& bytes() const { return buf_; }
  std::string take() { return std::move(buf_); }

 private:
  std::string buf_;
};

class BinaryReader {
 public:
  explicit BinaryReader(std::string_view data) : data_(data) {}

  template <typename T>
    requires std::is_trivially_copyable_v<T>
  T get() {
    need(sizeof(T));
    T v;
    std::memcpy(&v, data_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  template <typename T>
    requires std::is_trivially_copyable_v<T>
  std::vector<T> get_vector() {
    const auto n = get<std::uint64_t>();
    if (n > (data_.size() - pos_) / sizeof(T)) throw DataError("corrupt payload: vector length");
    std::vector<T> v(n);
    if (n) std::memcpy(v.data(), data_.data() + pos_, n * sizeof(T));
    pos_ += n * sizeof(T);
    return v;
  }
  bool done() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) throw DataError("corrupt payload: truncated");
  }
  std::string_view data_;
  std::size_t pos_ = 0;
};

struct Section {
  std::uint32_t tag = 0;
  std::string payload;
};

std::uint32_t crc32_of(std::string_view bytes);

std::string encode_container(std::string_view magic, std::uint32_t version,
                             const std::vector<Section>& sections);
/// Throws DataError on bad magic, version mismatch, truncation, or checksum
/// mismatch.
std::vector<Section> decode_container(std::string_view bytes, std::string_view magic,
                                      std::uint32_t version);

void write_file(const std::filesystem::path& path, std::string_view bytes);
std::string read_file(const std::filesystem::path& path);

}  // namespace wedsearch::detail
