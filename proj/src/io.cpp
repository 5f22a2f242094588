#include "gfrank/io.hpp"

#include <fstream>
#include <string>

namespace gfrank {

nlohmann::ordered_json tensor_to_json(const Tensor& t) {
  nlohmann::ordered_json j;
  j["q"] = t.modulus().value();
  j["dims"] = std::vector<std::size_t>(t.shape().dims().begin(), t.shape().dims().end());
  j["entries"] = std::vector<std::uint32_t>(t.entries().begin(), t.entries().end());
  return j;
}

Tensor tensor_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw FormatError("tensor JSON must be an object");
  for (const char* field : {"q", "dims", "entries"}) {
    if (!j.contains(field)) throw FormatError(std::string("tensor JSON missing field '") + field + "'");
  }
  if (!j["q"].is_number_integer() || j["q"].get<std::int64_t>() < 2) {
    throw FormatError("'q' must be an integer >= 2");
  }
  if (!j["dims"].is_array() || !j["entries"].is_array()) {
    throw FormatError("'dims' and 'entries' must be arrays");
  }

  const auto q64 = j["q"].get<std::int64_t>();
  if (q64 > UINT32_MAX || !is_prime(static_cast<std::uint64_t>(q64))) {
    throw FormatError("'q' must be prime, got " + std::to_string(q64));
  }
  FieldModulus q(static_cast<std::uint32_t>(q64));

  std::vector<std::size_t> dims;
  for (const auto& n : j["dims"]) {
    if (!n.is_number_integer() || n.get<std::int64_t>() < 1) throw FormatError("dims must be positive integers");
    dims.push_back(n.get<std::size_t>());
  }
  if (dims.empty()) throw FormatError("dims must not be empty");
  Shape shape(std::move(dims));

  std::vector<std::uint32_t> entries;
  entries.reserve(j["entries"].size());
  for (const auto& v : j["entries"]) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0 || v.get<std::int64_t>() >= q64) {
      throw FormatError("entries must be integers in [0, q-1]");
    }
    entries.push_back(v.get<std::uint32_t>());
  }
  if (entries.size() != shape.size()) {
    throw FormatError("expected " + std::to_string(shape.size()) + " entries, got " +
                      std::to_string(entries.size()));
  }
  return {std::move(shape), q, std::move(entries)};
}

Tensor read_tensor(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("invalid tensor JSON: ") + e.what());
  }
  return tensor_from_json(j);
}

Tensor read_tensor_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_tensor(in);
}

void write_tensor(std::ostream& out, const Tensor& t) { out << tensor_to_json(t).dump() << '\n'; }

}  // namespace gfrank
