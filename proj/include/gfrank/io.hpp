#pragma once

#include <filesystem>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "gfrank/tensor.hpp"

namespace gfrank {

/// Raised for malformed tensor or cache files.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"q": int, "dims": [int,...], "entries": [int,...]}, entries row-major
/// with the last index fastest and every value in [0, q-1].
nlohmann::ordered_json tensor_to_json(const Tensor& t);
Tensor tensor_from_json(const nlohmann::json& j);

Tensor read_tensor(std::istream& in);
Tensor read_tensor_file(const std::filesystem::path& path);
void write_tensor(std::ostream& out, const Tensor& t);

}  // namespace gfrank
