// SPDX-License-Identifier: MIT
#include "tenx/tensor_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tenx {

bool is_zero_one(const DenseTensor& t) {
  for (double v : t.data()) {
    if (v != 0.0 && v != 1.0) return false;
  }
  return true;
}

Shape parse_shape(const std::string& text) {
  Shape shape;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = pos;
    while (next < text.size() && std::isdigit(static_cast<unsigned char>(text[next]))) ++next;
    if (next == pos) {
      throw std::invalid_argument("shape string: expected a dimension in '" + text + "'");
    }
    shape.push_back(std::stoull(text.substr(pos, next - pos)));
    pos = next;
    if (pos < text.size()) {
      const char sep = text[pos];
      if (sep != 'x' && sep != 'X') {
        throw std::invalid_argument("shape string: expected 'x' separator in '" + text + "'");
      }
      ++pos;
      if (pos == text.size()) {
        throw std::invalid_argument("shape string: trailing separator in '" + text + "'");
      }
    }
  }
  if (shape.empty()) {
    throw std::invalid_argument("shape string: empty");
  }
  (void)cell_count(shape);  // rejects zero dimensions
  return shape;
}

std::string format_shape(const Shape& shape) {
  std::string out;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (k > 0) out += 'x';
    out += std::to_string(shape[k]);
  }
  return out;
}

std::string format_real(double value, int significant_digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*g", significant_digits, value);
  return buffer;
}

void save_tensor_json(std::ostream& out, const DenseTensor& t) {
  nlohmann::json j;
  j["shape"] = t.shape();
  j["data"] = t.data();
  out << j.dump() << '\n';
}

DenseTensor load_tensor_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("tensor JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("shape") || !j.contains("data")) {
    throw std::invalid_argument("tensor JSON: need an object with 'shape' and 'data'");
  }
  Shape shape;
  std::vector<double> data;
  try {
    shape = j.at("shape").get<Shape>();
    data = j.at("data").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("tensor JSON: ") + e.what());
  }
  return DenseTensor(std::move(shape), std::move(data));
}

void save_tensor_ones(std::ostream& out, const DenseTensor& t) {
  if (!is_zero_one(t)) {
    throw std::invalid_argument("ones format: tensor must be zero-one");
  }
  for (std::size_t k = 0; k < t.order(); ++k) {
    if (k > 0) out << ' ';
    out << t.dim(k);
  }
  out << '\n';
  for_each_index(t.shape(), [&](std::size_t flat, const Index& index) {
    if (t[flat] != 1.0) return;
    for (std::size_t k = 0; k < index.size(); ++k) {
      if (k > 0) out << ' ';
      out << index[k] + 1;  // file indices are 1-based
    }
    out << '\n';
  });
}

DenseTensor load_tensor_ones(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("ones format: missing shape line");
  }
  Shape shape;
  {
    std::istringstream header(line);
    std::size_t dim = 0;
    while (header >> dim) shape.push_back(dim);
    if (!header.eof()) {
      throw std::invalid_argument("ones format: malformed shape line");
    }
  }
  DenseTensor t((shape));  // validates the shape
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream entry(line);
    Index index;
    std::size_t component = 0;
    while (entry >> component) {
      if (component == 0) {
        throw std::invalid_argument("ones format: indices are 1-based (line " +
                                    std::to_string(line_no) + ")");
      }
      index.push_back(component - 1);
    }
    if (!entry.eof()) {
      throw std::invalid_argument("ones format: malformed index line " + std::to_string(line_no));
    }
    if (index.empty()) continue;  // blank line
    if (index.size() != shape.size()) {
      throw std::invalid_argument("ones format: wrong index arity on line " +
                                  std::to_string(line_no));
    }
    t.at(index) = 1.0;  // at() validates the range
  }
  return t;
}

namespace {

bool has_json_extension(const std::string& path) {
  const std::string suffix = ".json";
  if (path.size() < suffix.size()) return false;
  for (std::size_t i = 0; i < suffix.size(); ++i) {
    const char a = static_cast<char>(
        std::tolower(static_cast<unsigned char>(path[path.size() - suffix.size() + i])));
    if (a != suffix[i]) return false;
  }
  return true;
}

}  // namespace

void save_tensor(const std::string& path, const DenseTensor& t) {
  std::ofstream out(path);
  if (!out) {
    throw std::invalid_argument("cannot open for writing: " + path);
  }
  if (has_json_extension(path)) {
    save_tensor_json(out, t);
  } else {
    save_tensor_ones(out, t);
  }
  if (!out) {
    throw std::invalid_argument("write failed: " + path);
  }
}

DenseTensor load_tensor(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open for reading: " + path);
  }
  return has_json_extension(path) ? load_tensor_json(in) : load_tensor_ones(in);
}

}  // namespace tenx
