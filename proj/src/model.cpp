#include "newscred/model.hpp"

#include <cmath>

namespace newscred {

const char* attention_mode_name(AttentionMode m) {
  return m == AttentionMode::Sequence ? "sequence" : "scalar";
}

AttentionMode attention_mode_from_name(const std::string& name) {
  if (name == "sequence") return AttentionMode::Sequence;
  if (name == "scalar") return AttentionMode::Scalar;
  fail(cat("unknown attention mode: '", name, "' (want sequence or scalar)"));
}

int masked_fused_dim(const SegmentMask& active, const DimensionContract& contract) {
  int dim = 0;
  for (int i = 0; i < 5; ++i)
    if (active[i]) dim += segment_width(kSegmentOrder[i], contract);
  return dim;
}

namespace {

void fill_uniform(Matrix& m, double bound, SplitMix64& rng) {
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(-bound, bound);
}

void collect_projection(const char* name, ProjectionLayer& p, std::vector<NamedTensor>& out) {
  out.push_back({cat(name, ".weight"), &p.weight, nullptr});
  out.push_back({cat(name, ".bias"), nullptr, &p.bias});
}

void collect_attention(const char* name, AttentionBlock& b, std::vector<NamedTensor>& out) {
  out.push_back({cat(name, ".query_weight"), &b.query_weight, nullptr});
  out.push_back({cat(name, ".key_weight"), &b.key_weight, nullptr});
  out.push_back({cat(name, ".value_weight"), &b.value_weight, nullptr});
  out.push_back({cat(name, ".out_weight"), &b.out_weight, nullptr});
  out.push_back({cat(name, ".out_bias"), nullptr, &b.out_bias});
}

// Canonical tensor order for pack/unpack, init, and checkpoints.
template <typename ModelLike>
std::vector<NamedTensor> tensor_refs(const ModelParams& shape, ModelLike& m) {
  std::vector<NamedTensor> refs;
  collect_projection("text_proj", m.text_proj, refs);
  if (!shape.dims.tie_title_weights) collect_projection("title_proj", m.title_proj, refs);
  collect_projection("image_proj", m.image_proj, refs);
  collect_attention("attn_text_to_title", m.attn_text_to_title, refs);
  collect_attention("attn_title_to_text", m.attn_title_to_text, refs);
  refs.push_back({"head.weight", &m.head.weight, nullptr});
  refs.push_back({"head.bias", nullptr, &m.head.bias});
  return refs;
}

}  // namespace

std::vector<NamedTensor> named_tensors(ModelParams& params) {
  return tensor_refs(params, params);
}

std::vector<NamedTensor> named_tensors(ModelGrads& grads, const ModelParams& shape) {
  return tensor_refs(shape, grads);
}

ModelParams init_model(const ModelDims& dims, const SegmentMask& active, uint64_t seed) {
  if (dims.d_enc_text <= 0 || dims.d_enc_title <= 0 || dims.d_enc_image <= 0)
    fail("model init needs positive encoder dimensions");

  ModelParams m;
  m.dims = dims;
  m.active = active;
  m.init_seed = seed;

  const int text_dim = dims.contract.text_dim;
  const int image_dim = dims.contract.image_dim;
  SplitMix64 rng(seed);

  m.text_proj = make_projection(text_dim, dims.d_enc_text, rng);
  if (!dims.tie_title_weights) {
    m.title_proj = make_projection(text_dim, dims.d_enc_title, rng);
  } else if (dims.d_enc_title != dims.d_enc_text) {
    fail("tied title weights require matching title/text encoder dimensions");
  }
  m.image_proj = make_projection(image_dim, dims.d_enc_image, rng);
  m.attn_text_to_title = make_attention_block(text_dim, rng);
  m.attn_title_to_text = make_attention_block(text_dim, rng);

  const int fused = masked_fused_dim(active, dims.contract);
  m.head.weight.resize(2, fused);
  fill_uniform(m.head.weight, 1.0 / std::sqrt(static_cast<double>(fused)), rng);
  m.head.bias = Vector::Zero(2);
  return m;
}

ModelGrads zero_grads(const ModelParams& p) {
  ModelGrads g;
  auto zero_proj = [](const ProjectionLayer& src, ProjectionLayer& dst) {
    dst.weight = Matrix::Zero(src.weight.rows(), src.weight.cols());
    dst.bias = Vector::Zero(src.bias.size());
  };
  auto zero_attn = [](const AttentionBlock& src, AttentionBlock& dst) {
    int d = src.dim();
    dst.query_weight = Matrix::Zero(d, d);
    dst.key_weight = Matrix::Zero(d, d);
    dst.value_weight = Matrix::Zero(d, d);
    dst.out_weight = Matrix::Zero(d, d);
    dst.out_bias = Vector::Zero(d);
  };
  zero_proj(p.text_proj, g.text_proj);
  if (!p.dims.tie_title_weights) zero_proj(p.title_proj, g.title_proj);
  zero_proj(p.image_proj, g.image_proj);
  zero_attn(p.attn_text_to_title, g.attn_text_to_title);
  zero_attn(p.attn_title_to_text, g.attn_title_to_text);
  g.head.weight = Matrix::Zero(p.head.weight.rows(), p.head.weight.cols());
  g.head.bias = Vector::Zero(2);
  return g;
}

void scale_grads(ModelGrads& g, double factor) {
  for (ProjectionLayer* p : {&g.text_proj, &g.title_proj, &g.image_proj}) {
    p->weight *= factor;
    p->bias *= factor;
  }
  for (AttentionBlock* b : {&g.attn_text_to_title, &g.attn_title_to_text}) {
    b->query_weight *= factor;
    b->key_weight *= factor;
    b->value_weight *= factor;
    b->out_weight *= factor;
    b->out_bias *= factor;
  }
  g.head.weight *= factor;
  g.head.bias *= factor;
}

Eigen::Index param_count(const ModelParams& params) {
  Eigen::Index n = 0;
  for (const auto& ref : tensor_refs(params, const_cast<ModelParams&>(params))) n += ref.size();
  return n;
}

Vector pack(const ModelParams& params) {
  Vector flat(param_count(params));
  Eigen::Index off = 0;
  for (const auto& ref : tensor_refs(params, const_cast<ModelParams&>(params))) {
    std::copy(ref.data(), ref.data() + ref.size(), flat.data() + off);
    off += ref.size();
  }
  return flat;
}

void unpack(ModelParams& params, const Vector& flat) {
  if (flat.size() != param_count(params))
    fail(cat("unpack: expected ", param_count(params), " values, got ", flat.size()));
  Eigen::Index off = 0;
  for (const auto& ref : tensor_refs(params, params)) {
    std::copy(flat.data() + off, flat.data() + off + ref.size(), ref.data());
    off += ref.size();
  }
}

Vector pack_grads(const ModelParams& params, const ModelGrads& grads) {
  Vector flat(param_count(params));
  Eigen::Index off = 0;
  for (const auto& ref : tensor_refs(params, const_cast<ModelGrads&>(grads))) {
    std::copy(ref.data(), ref.data() + ref.size(), flat.data() + off);
    off += ref.size();
  }
  return flat;
}

std::vector<ParamGroup> param_groups(const ModelParams& params) {
  std::vector<ParamGroup> groups;
  Eigen::Index off = 0;
  for (const auto& ref : tensor_refs(params, const_cast<ModelParams&>(params))) {
    std::string group = ref.name.substr(0, ref.name.rfind('.'));
    if (!groups.empty() && groups.back().name == group) {
      groups.back().size += ref.size();
    } else {
      groups.push_back({group, off, ref.size()});
    }
    off += ref.size();
  }
  return groups;
}

namespace {

void check_features(const ModelParams& p, const ArticleFeatures& f) {
  if (f.body_emb.cols() != p.dims.d_enc_text)
    fail(cat("body embedding width ", f.body_emb.cols(), ", model expects ", p.dims.d_enc_text));
  if (f.title_emb.cols() != p.dims.d_enc_title)
    fail(cat("title embedding width ", f.title_emb.cols(), ", model expects ",
             p.dims.d_enc_title));
  if (f.image_emb.rows() != 1 || f.image_emb.cols() != p.dims.d_enc_image)
    fail(cat("image embedding is ", f.image_emb.rows(), "x", f.image_emb.cols(),
             ", model expects 1x", p.dims.d_enc_image));
  if (f.emotion.size() != p.dims.contract.emotion_dim)
    fail(cat("emotion vector has dimension ", f.emotion.size(), ", model expects ",
             p.dims.contract.emotion_dim));
}

}  // namespace

Vector model_forward(const ModelParams& params, const ArticleFeatures& features,
                     AttentionMode mode, ForwardTrace* trace) {
  check_features(params, features);

  ForwardTrace local;
  ForwardTrace& t = trace ? *trace : local;
  t.mode = mode;

  t.text = project(params.text_proj, features.body_emb);
  t.title = project(params.title_layer(), features.title_emb);
  t.image = project(params.image_proj, features.image_emb);

  Matrix text_in =
      (mode == AttentionMode::Sequence) ? t.text.seq : Matrix(t.text.pooled.transpose());
  Matrix title_in =
      (mode == AttentionMode::Sequence) ? t.title.seq : Matrix(t.title.pooled.transpose());
  t.text_to_title = attend(params.attn_text_to_title, text_in, title_in);
  t.title_to_text = attend(params.attn_title_to_text, title_in, text_in);

  const Vector* segments[5] = {&t.text.pooled, &t.image.pooled, &features.emotion,
                               &t.text_to_title.output, &t.title_to_text.output};
  t.fused.resize(masked_fused_dim(params.active, params.dims.contract));
  Eigen::Index off = 0;
  for (int i = 0; i < 5; ++i) {
    if (!params.active[i]) continue;
    t.fused.segment(off, segments[i]->size()) = *segments[i];
    off += segments[i]->size();
  }

  t.logits = params.head.weight * t.fused + params.head.bias;
  t.probs = softmax(t.logits);
  return t.probs;
}

namespace {

struct ProjGrad {
  Matrix d_seq;     // gradient w.r.t. the post-ReLU rows
  Vector d_pooled;  // gradient w.r.t. the pooled vector

  void init(const Projected& p) {
    d_seq = Matrix::Zero(p.seq.rows(), p.seq.cols());
    d_pooled = Vector::Zero(p.pooled.size());
  }
};

// Backward through one attention direction. Returns gradients w.r.t. the two
// input sequences via d_query_seq / d_kv_seq (accumulated).
void attention_backward(const AttentionBlock& block, const AttentionTrace& t,
                        const Matrix& query_seq, const Matrix& kv_seq, const Vector& d_output,
                        AttentionBlock& g, Matrix& d_query_seq, Matrix& d_kv_seq) {
  const double p_rows = static_cast<double>(t.mixed.rows());
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(block.dim()));

  g.out_weight.noalias() += d_output * t.pooled.transpose();
  g.out_bias += d_output;
  Vector d_pooled = block.out_weight.transpose() * d_output;

  // pooled is the row mean of `mixed`.
  Matrix d_mixed = (Vector::Ones(t.mixed.rows()) * d_pooled.transpose()) / p_rows;

  Matrix d_v = t.weights.transpose() * d_mixed;
  Matrix d_weights = d_mixed * t.v.transpose();

  // Softmax rows: dS_i = A_i .* (dA_i - <dA_i, A_i>).
  Matrix d_logits(t.weights.rows(), t.weights.cols());
  for (Eigen::Index i = 0; i < t.weights.rows(); ++i) {
    double dot = d_weights.row(i).cwiseProduct(t.weights.row(i)).sum();
    d_logits.row(i) = t.weights.row(i).array() * (d_weights.row(i).array() - dot);
  }
  d_logits *= inv_sqrt_d;

  Matrix d_q = d_logits * t.k;
  Matrix d_k = d_logits.transpose() * t.q;

  g.query_weight.noalias() += query_seq.transpose() * d_q;
  g.key_weight.noalias() += kv_seq.transpose() * d_k;
  g.value_weight.noalias() += kv_seq.transpose() * d_v;

  d_query_seq.noalias() += d_q * block.query_weight.transpose();
  d_kv_seq.noalias() += d_k * block.key_weight.transpose();
  d_kv_seq.noalias() += d_v * block.value_weight.transpose();
}

// Backward through relu(X W^T + b) and the row-mean pooling.
void projection_backward(const ProjectionLayer& layer, const Projected& p, const Matrix& input,
                         const ProjGrad& d, ProjectionLayer& g) {
  Matrix d_seq = d.d_seq;
  if (d.d_pooled.size() > 0)
    d_seq.noalias() +=
        (Vector::Ones(p.seq.rows()) * d.d_pooled.transpose()) / static_cast<double>(p.seq.rows());
  Matrix d_pre = ((p.pre.array() > 0.0).cast<double>() * d_seq.array()).matrix();
  g.weight.noalias() += d_pre.transpose() * input;
  g.bias += d_pre.colwise().sum().transpose();
}

}  // namespace

void accumulate_backward(const ModelParams& params, const ArticleFeatures& features,
                         const ForwardTrace& trace, int label, ModelGrads& grads) {
  if (label != 0 && label != 1) fail(cat("label must be 0 or 1, got ", label));
  if (trace.probs.size() != 2) fail("backward needs a forward trace from the same sample");

  Vector d_logits = trace.probs;
  d_logits(label) -= 1.0;

  grads.head.weight.noalias() += d_logits * trace.fused.transpose();
  grads.head.bias += d_logits;
  Vector d_fused = params.head.weight.transpose() * d_logits;

  // Split the fused gradient over the active segments.
  Vector d_text_pooled = Vector::Zero(trace.text.pooled.size());
  Vector d_image_pooled = Vector::Zero(trace.image.pooled.size());
  Vector d_t2ti = Vector::Zero(trace.text_to_title.output.size());
  Vector d_ti2t = Vector::Zero(trace.title_to_text.output.size());
  {
    Eigen::Index off = 0;
    Vector* targets[5] = {&d_text_pooled, &d_image_pooled, nullptr, &d_t2ti, &d_ti2t};
    const Eigen::Index widths[5] = {d_text_pooled.size(), d_image_pooled.size(),
                                    features.emotion.size(), d_t2ti.size(), d_ti2t.size()};
    for (int i = 0; i < 5; ++i) {
      if (!params.active[i]) continue;
      if (targets[i]) *targets[i] = d_fused.segment(off, widths[i]);
      off += widths[i];
    }
  }

  ProjGrad d_text, d_title, d_image;
  d_text.init(trace.text);
  d_title.init(trace.title);
  d_image.init(trace.image);
  d_text.d_pooled = d_text_pooled;
  d_image.d_pooled = d_image_pooled;

  const bool seq_mode = trace.mode == AttentionMode::Sequence;
  const bool attn_active = params.active[3] || params.active[4];
  if (attn_active) {
    Matrix text_in = seq_mode ? trace.text.seq : Matrix(trace.text.pooled.transpose());
    Matrix title_in = seq_mode ? trace.title.seq : Matrix(trace.title.pooled.transpose());
    Matrix d_text_in = Matrix::Zero(text_in.rows(), text_in.cols());
    Matrix d_title_in = Matrix::Zero(title_in.rows(), title_in.cols());

    if (params.active[3])
      attention_backward(params.attn_text_to_title, trace.text_to_title, text_in, title_in,
                         d_t2ti, grads.attn_text_to_title, d_text_in, d_title_in);
    if (params.active[4])
      attention_backward(params.attn_title_to_text, trace.title_to_text, title_in, text_in,
                         d_ti2t, grads.attn_title_to_text, d_title_in, d_text_in);

    if (seq_mode) {
      d_text.d_seq += d_text_in;
      d_title.d_seq += d_title_in;
    } else {
      d_text.d_pooled += d_text_in.row(0).transpose();
      d_title.d_pooled += d_title_in.row(0).transpose();
    }
  }

  projection_backward(params.text_proj, trace.text, features.body_emb, d_text, grads.text_proj);
  ProjectionLayer& title_grad =
      params.dims.tie_title_weights ? grads.text_proj : grads.title_proj;
  projection_backward(params.title_layer(), trace.title, features.title_emb, d_title,
                      title_grad);
  if (params.active[1])
    projection_backward(params.image_proj, trace.image, features.image_emb, d_image,
                        grads.image_proj);
}

}  // namespace newscred
