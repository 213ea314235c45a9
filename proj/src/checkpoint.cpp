#include "wocd/checkpoint.hpp"

#include <nlohmann/json.hpp>

#include "wocd/error.hpp"
#include "wocd/graphio.hpp"

namespace wocd {

using nlohmann::json;

std::string serialize_checkpoint(const Checkpoint& checkpoint) {
  const auto shape = checkpoint.params.shape();
  json doc;
  doc["format"] = "wocd-model";
  doc["version"] = kCheckpointVersion;
  doc["seed"] = checkpoint.seed;
  doc["shape"] = {{"in_dims", shape.in_dims}, {"hidden", shape.hidden}, {"communities", shape.communities}};
  doc["final_gcn_activation"] = checkpoint.params.final_gcn_activation;
  json tensors = json::object();
  checkpoint.params.for_each_tensor([&](const std::string& name, const Matrix& t) {
    tensors[name] = {{"rows", t.rows()},
                     {"cols", t.cols()},
                     {"data", std::vector<double>(t.data(), t.data() + t.size())}};
  });
  doc["tensors"] = std::move(tensors);
  return doc.dump(1) + "\n";
}

Checkpoint deserialize_checkpoint(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("checkpoint: ") + e.what());
  }
  try {
    if (doc.at("format") != "wocd-model") throw ParseError("checkpoint: unknown format tag");
    if (doc.at("version").get<int>() != kCheckpointVersion) {
      throw ParseError("checkpoint: unsupported version " + doc.at("version").dump());
    }
    ModelShape shape{doc.at("shape").at("in_dims").get<int>(), doc.at("shape").at("hidden").get<int>(),
                     doc.at("shape").at("communities").get<int>()};
    Checkpoint out;
    out.seed = doc.at("seed").get<std::uint64_t>();
    out.params = init_params(shape, 0);
    out.params.final_gcn_activation = doc.at("final_gcn_activation").get<bool>();
    const auto& tensors = doc.at("tensors");
    out.params.for_each_tensor([&](const std::string& name, Matrix& t) {
      const auto& entry = tensors.at(name);
      if (entry.at("rows").get<Eigen::Index>() != t.rows() || entry.at("cols").get<Eigen::Index>() != t.cols()) {
        throw ParseError("checkpoint: tensor " + name + " has the wrong shape");
      }
      const auto data = entry.at("data").get<std::vector<double>>();
      if (static_cast<Eigen::Index>(data.size()) != t.size()) {
        throw ParseError("checkpoint: tensor " + name + " has the wrong length");
      }
      std::copy(data.begin(), data.end(), t.data());
    });
    if (!out.params.all_finite()) throw ParseError("checkpoint: non-finite weights");
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("checkpoint: ") + e.what());
  }
}

void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path) {
  write_text_file(path, serialize_checkpoint(checkpoint));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  return deserialize_checkpoint(read_text_file(path));
}

}  // namespace wocd
