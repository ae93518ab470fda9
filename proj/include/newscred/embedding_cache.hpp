#pragma once

#include <map>
#include <string>

#include "newscred/types.hpp"

namespace newscred {

enum class Channel { Title = 0, Body = 1, Image = 2 };

const char* channel_name(Channel c);
Channel channel_from_name(const std::string& name);

// Embeddings keyed by (article id, channel). Each entry is an m x d_enc matrix
// (m = 1 for images). The map keeps entries sorted, so cache writes are
// byte-stable across runs.
struct EmbeddingCache {
  std::string provider;
  int d_enc = 0;
  std::map<std::pair<std::string, Channel>, Matrix> entries;

  const Matrix* find(const std::string& id, Channel channel) const;
  void put(const std::string& id, Channel channel, Matrix rows);
};

// On-disk layout (documented here; see also README):
//   line 1       UTF-8 JSON header, one line:
//                {"format":"newscred-embedding-cache","version":1,
//                 "encoding":"binary-f64","provider":...,"d_enc":N,"count":K,...}
//                (extra fields such as config_hash/seeds are preserved)
//   then K records, each:
//                u32 LE  id length in bytes
//                ...     id bytes
//                u8      channel (0 = title, 1 = body, 2 = image)
//                u32 LE  m (row count)
//                m*d_enc float64 LE, row-major
// The JSON fallback is a whole-file JSON document with "encoding":"json" and
// "records": [{"id","channel","m","values":[...m*d_enc, row-major]}].
void save_embedding_cache(const std::string& path, const EmbeddingCache& cache,
                          const std::string& extra_header_json = "{}");
EmbeddingCache load_embedding_cache(const std::string& path);

}  // namespace newscred
