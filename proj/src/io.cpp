#include "relutest/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace relutest {

using nlohmann::json;

namespace {

json matrix_json(const std::vector<double>& flat, std::size_t rows,
                 std::size_t cols) {
  json rows_json = json::array();
  for (std::size_t r = 0; r < rows; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < cols; ++c) row.push_back(flat[r * cols + c]);
    rows_json.push_back(std::move(row));
  }
  return rows_json;
}

std::vector<double> matrix_from_json(const json& j, std::size_t rows,
                                     std::size_t cols, const char* name) {
  if (!j.is_array() || j.size() != rows) {
    throw std::invalid_argument(std::string(name) + " has wrong row count");
  }
  std::vector<double> flat;
  flat.reserve(rows * cols);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols) {
      throw std::invalid_argument(std::string(name) + " has wrong column count");
    }
    for (const auto& v : row) {
      if (!v.is_number()) {
        throw std::invalid_argument(std::string(name) + " entry is not a number");
      }
      flat.push_back(v.get<double>());
    }
  }
  return flat;
}

std::vector<double> vector_from_json(const json& j, std::size_t len,
                                     const char* name) {
  if (!j.is_array() || j.size() != len) {
    throw std::invalid_argument(std::string(name) + " has wrong length");
  }
  std::vector<double> out;
  out.reserve(len);
  for (const auto& v : j) {
    if (!v.is_number()) {
      throw std::invalid_argument(std::string(name) + " entry is not a number");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

std::size_t size_field(const json& j, const char* name) {
  if (!j.contains(name) || !j[name].is_number_unsigned()) {
    throw std::invalid_argument(std::string("missing or bad field: ") + name);
  }
  return j[name].get<std::size_t>();
}

}  // namespace

std::string to_json(const ShlNetwork& net) {
  json j;
  j["type"] = "shl";
  j["n"] = net.n;
  j["m"] = net.m;
  j["A"] = matrix_json(net.a, net.m, net.n);
  j["w"] = net.w;
  return j.dump();
}

std::string to_json(const MoNetwork& net) {
  json j;
  j["type"] = "mo";
  j["n"] = net.n;
  j["m"] = net.m;
  j["r"] = net.r;
  j["A"] = matrix_json(net.a, net.m, net.n);
  j["W"] = matrix_json(net.wmat, net.m, net.r);
  return j.dump();
}

std::string to_json(const DeepNetwork& net) {
  json j;
  j["type"] = "deep";
  j["dims"] = net.dims;
  json layers = json::array();
  for (std::size_t k = 0; k < net.layers.size(); ++k) {
    layers.push_back(matrix_json(net.layers[k], net.dims[k + 1], net.dims[k]));
  }
  j["layers"] = std::move(layers);
  return j.dump();
}

AnyNetwork network_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
  if (!j.contains("type") || !j["type"].is_string()) {
    throw std::invalid_argument("missing network type");
  }
  const std::string type = j["type"].get<std::string>();
  if (type == "shl") {
    const std::size_t n = size_field(j, "n");
    const std::size_t m = size_field(j, "m");
    return ShlNetwork(n, m, matrix_from_json(j.at("A"), m, n, "A"),
                      vector_from_json(j.at("w"), m, "w"));
  }
  if (type == "mo") {
    const std::size_t n = size_field(j, "n");
    const std::size_t m = size_field(j, "m");
    const std::size_t r = size_field(j, "r");
    return MoNetwork(n, m, r, matrix_from_json(j.at("A"), m, n, "A"),
                     matrix_from_json(j.at("W"), m, r, "W"));
  }
  if (type == "deep") {
    if (!j.contains("dims") || !j["dims"].is_array()) {
      throw std::invalid_argument("deep network needs dims");
    }
    std::vector<std::size_t> dims;
    for (const auto& d : j["dims"]) {
      if (!d.is_number_unsigned()) throw std::invalid_argument("bad dims entry");
      dims.push_back(d.get<std::size_t>());
    }
    if (dims.size() < 3) {
      throw std::invalid_argument("deep network needs at least one hidden layer");
    }
    if (!j.contains("layers") || !j["layers"].is_array() ||
        j["layers"].size() != dims.size() - 1) {
      throw std::invalid_argument("layer count does not match dims");
    }
    std::vector<std::vector<double>> layers;
    for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
      layers.push_back(
          matrix_from_json(j["layers"][k], dims[k + 1], dims[k], "layer"));
    }
    return DeepNetwork(std::move(dims), std::move(layers));
  }
  throw std::invalid_argument("unknown network type: " + type);
}

void save_network(const AnyNetwork& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  std::visit([&](const auto& n) { out << to_json(n) << "\n"; }, net);
}

AnyNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return network_from_json(ss.str());
}

}  // namespace relutest
