#include "xoos/apprentice/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

namespace xoos::apprentice {
namespace {

constexpr char kMagic[8] = {'X', 'O', 'O', 'S', 'N', 'E', 'T', '1'};

void write_f32_array(std::ostream& out, const std::vector<double>& values) {
  std::vector<float> buf(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) buf[i] = static_cast<float>(values[i]);
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(float)));
}

std::vector<double> read_f32_array(std::istream& in, std::size_t count) {
  std::vector<float> buf(count);
  in.read(reinterpret_cast<char*>(buf.data()),
          static_cast<std::streamsize>(count * sizeof(float)));
  if (!in) throw std::runtime_error("checkpoint: truncated tensor data");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = static_cast<double>(buf[i]);
  return out;
}

void write_layer_shaped(std::ostream& out, const LayerParams& l) {
  write_f32_array(out, l.w);
  write_f32_array(out, l.b);
}

LayerParams read_layer_shaped(std::istream& in, int dim_in, int dim_out) {
  LayerParams l;
  l.in = dim_in;
  l.out = dim_out;
  l.w = read_f32_array(in, static_cast<std::size_t>(dim_in) * dim_out);
  l.b = read_f32_array(in, static_cast<std::size_t>(dim_out));
  return l;
}

}  // namespace

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  nlohmann::ordered_json header;
  header["format"] = 1;
  header["game"] = ckpt.game_id;
  header["config"] = {{"input", ckpt.params.config.input_dim},
                      {"hidden", ckpt.params.config.hidden},
                      {"output", ckpt.params.config.output_dim}};
  header["version"] = ckpt.params.version;
  if (ckpt.adam.has_value()) {
    header["adam"] = {{"t", ckpt.adam->t},
                      {"lr", ckpt.adam->cfg.lr},
                      {"beta1", ckpt.adam->cfg.beta1},
                      {"beta2", ckpt.adam->cfg.beta2},
                      {"eps", ckpt.adam->cfg.eps}};
  } else {
    header["adam"] = nullptr;
  }
  const std::string header_text = header.dump();
  if (header_text.size() > 0xffffffffu)
    throw std::runtime_error("checkpoint: header too large");

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("checkpoint: cannot open for writing: " + path);
  out.write(kMagic, sizeof(kMagic));
  const std::uint32_t len = static_cast<std::uint32_t>(header_text.size());
  unsigned char len_bytes[4] = {
      static_cast<unsigned char>(len & 0xff), static_cast<unsigned char>((len >> 8) & 0xff),
      static_cast<unsigned char>((len >> 16) & 0xff),
      static_cast<unsigned char>((len >> 24) & 0xff)};
  out.write(reinterpret_cast<const char*>(len_bytes), 4);
  out.write(header_text.data(), static_cast<std::streamsize>(header_text.size()));
  for (const LayerParams& l : ckpt.params.layers) write_layer_shaped(out, l);
  if (ckpt.adam.has_value()) {
    for (const LayerParams& m : ckpt.adam->m) write_layer_shaped(out, m);
    for (const LayerParams& v : ckpt.adam->v) write_layer_shaped(out, v);
  }
  out.flush();
  if (!out) throw std::runtime_error("checkpoint: write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("checkpoint: cannot open for reading: " + path);

  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("checkpoint: bad magic (not a network checkpoint): " + path);
  unsigned char len_bytes[4];
  in.read(reinterpret_cast<char*>(len_bytes), 4);
  if (!in) throw std::runtime_error("checkpoint: truncated header length");
  const std::uint32_t len = static_cast<std::uint32_t>(len_bytes[0]) |
                            (static_cast<std::uint32_t>(len_bytes[1]) << 8) |
                            (static_cast<std::uint32_t>(len_bytes[2]) << 16) |
                            (static_cast<std::uint32_t>(len_bytes[3]) << 24);
  std::string header_text(len, '\0');
  in.read(header_text.data(), static_cast<std::streamsize>(len));
  if (!in) throw std::runtime_error("checkpoint: truncated header");

  nlohmann::json header = nlohmann::json::parse(header_text, nullptr, /*allow_exceptions=*/false);
  if (header.is_discarded())
    throw std::runtime_error("checkpoint: header is not valid JSON");
  if (!header.contains("format") || header["format"].get<int>() != 1)
    throw std::runtime_error("checkpoint: unsupported format version");

  Checkpoint ckpt;
  ckpt.game_id = header.at("game").get<std::string>();
  const auto& cfg = header.at("config");
  ckpt.params.config.input_dim = cfg.at("input").get<int>();
  ckpt.params.config.hidden = cfg.at("hidden").get<std::vector<int>>();
  ckpt.params.config.output_dim = cfg.at("output").get<int>();
  ckpt.params.version = header.at("version").get<std::int64_t>();
  if (ckpt.params.config.input_dim <= 0 || ckpt.params.config.output_dim <= 0)
    throw std::runtime_error("checkpoint: invalid dimensions in header");

  std::vector<std::pair<int, int>> shapes;
  int dim_in = ckpt.params.config.input_dim;
  for (int h : ckpt.params.config.hidden) {
    if (h <= 0) throw std::runtime_error("checkpoint: invalid hidden width in header");
    shapes.emplace_back(dim_in, h);
    dim_in = h;
  }
  shapes.emplace_back(dim_in, ckpt.params.config.output_dim);

  for (auto [li, lo] : shapes) ckpt.params.layers.push_back(read_layer_shaped(in, li, lo));

  const auto& adam_json = header.at("adam");
  if (!adam_json.is_null()) {
    AdamState adam;
    adam.t = adam_json.at("t").get<std::int64_t>();
    adam.cfg.lr = adam_json.at("lr").get<double>();
    adam.cfg.beta1 = adam_json.at("beta1").get<double>();
    adam.cfg.beta2 = adam_json.at("beta2").get<double>();
    adam.cfg.eps = adam_json.at("eps").get<double>();
    for (auto [li, lo] : shapes) adam.m.push_back(read_layer_shaped(in, li, lo));
    for (auto [li, lo] : shapes) adam.v.push_back(read_layer_shaped(in, li, lo));
    ckpt.adam = std::move(adam);
  }
  return ckpt;
}

}  // namespace xoos::apprentice
