#include "newscred/embedding_cache.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>

namespace newscred {

using nlohmann::json;

const char* channel_name(Channel c) {
  switch (c) {
    case Channel::Title: return "title";
    case Channel::Body: return "body";
    case Channel::Image: return "image";
  }
  return "?";
}

Channel channel_from_name(const std::string& name) {
  if (name == "title") return Channel::Title;
  if (name == "body") return Channel::Body;
  if (name == "image") return Channel::Image;
  fail(cat("unknown embedding channel: ", name));
}

const Matrix* EmbeddingCache::find(const std::string& id, Channel channel) const {
  auto it = entries.find({id, channel});
  return it == entries.end() ? nullptr : &it->second;
}

void EmbeddingCache::put(const std::string& id, Channel channel, Matrix rows) {
  entries[{id, channel}] = std::move(rows);
}

namespace {

void write_u32(std::ostream& out, uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<char*>(b), 4);
}

uint32_t read_u32(std::istream& in, const std::string& path) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) fail(cat(path, ": truncated cache record"));
  return static_cast<uint32_t>(b[0]) | static_cast<uint32_t>(b[1]) << 8 |
         static_cast<uint32_t>(b[2]) << 16 | static_cast<uint32_t>(b[3]) << 24;
}

void write_f64_row_major(std::ostream& out, const Matrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      double v = m(r, c);
      out.write(reinterpret_cast<const char*>(&v), sizeof(double));
    }
}

}  // namespace

void save_embedding_cache(const std::string& path, const EmbeddingCache& cache,
                          const std::string& extra_header_json) {
  json header = json::parse(extra_header_json);
  header["format"] = "newscred-embedding-cache";
  header["version"] = 1;
  header["encoding"] = "binary-f64";
  header["provider"] = cache.provider;
  header["d_enc"] = cache.d_enc;
  header["count"] = cache.entries.size();

  std::ofstream out(path, std::ios::binary);
  if (!out) fail(cat("cannot write embedding cache: ", path));
  out << header.dump() << "\n";
  for (const auto& [key, rows] : cache.entries) {
    if (rows.cols() != cache.d_enc)
      fail(cat("cache entry ", key.first, "/", channel_name(key.second), " has width ",
               rows.cols(), ", expected d_enc ", cache.d_enc));
    write_u32(out, static_cast<uint32_t>(key.first.size()));
    out.write(key.first.data(), static_cast<std::streamsize>(key.first.size()));
    out.put(static_cast<char>(static_cast<int>(key.second)));
    write_u32(out, static_cast<uint32_t>(rows.rows()));
    write_f64_row_major(out, rows);
  }
}

namespace {

EmbeddingCache load_json_cache(const json& doc, const std::string& path) {
  EmbeddingCache cache;
  cache.provider = doc.at("provider").get<std::string>();
  cache.d_enc = doc.at("d_enc").get<int>();
  for (const auto& rec : doc.at("records")) {
    std::string id = rec.at("id").get<std::string>();
    Channel ch = channel_from_name(rec.at("channel").get<std::string>());
    int m = rec.at("m").get<int>();
    const auto& values = rec.at("values");
    if (static_cast<int>(values.size()) != m * cache.d_enc)
      fail(cat(path, ": record ", id, "/", channel_name(ch), " has ", values.size(),
               " values, expected ", m * cache.d_enc));
    Matrix rows(m, cache.d_enc);
    size_t i = 0;
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < cache.d_enc; ++c) rows(r, c) = values[i++].get<double>();
    cache.put(id, ch, std::move(rows));
  }
  return cache;
}

}  // namespace

EmbeddingCache load_embedding_cache(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(cat("cannot open embedding cache: ", path));

  std::string first_line;
  std::getline(in, first_line);
  json header;
  bool line_is_json = true;
  try {
    header = json::parse(first_line);
  } catch (const json::exception&) {
    line_is_json = false;
  }

  if (!line_is_json || !header.is_object() || header.value("encoding", "") != "binary-f64") {
    // JSON fallback: the whole file is one document.
    std::ifstream whole(path, std::ios::binary);
    json doc;
    try {
      doc = json::parse(whole);
    } catch (const json::exception& e) {
      fail(cat(path, ": not a binary cache and not valid JSON: ", e.what()));
    }
    return load_json_cache(doc, path);
  }

  EmbeddingCache cache;
  cache.provider = header.at("provider").get<std::string>();
  cache.d_enc = header.at("d_enc").get<int>();
  size_t count = header.at("count").get<size_t>();
  for (size_t i = 0; i < count; ++i) {
    uint32_t id_len = read_u32(in, path);
    std::string id(id_len, '\0');
    if (!in.read(id.data(), id_len)) fail(cat(path, ": truncated cache record"));
    int ch_byte = in.get();
    if (ch_byte < 0 || ch_byte > 2) fail(cat(path, ": bad channel byte in record for ", id));
    uint32_t m = read_u32(in, path);
    Matrix rows(m, cache.d_enc);
    for (uint32_t r = 0; r < m; ++r)
      for (int c = 0; c < cache.d_enc; ++c) {
        double v;
        if (!in.read(reinterpret_cast<char*>(&v), sizeof(double)))
          fail(cat(path, ": truncated payload for ", id));
        rows(r, c) = v;
      }
    cache.put(id, static_cast<Channel>(ch_byte), std::move(rows));
  }
  return cache;
}

}  // namespace newscred
