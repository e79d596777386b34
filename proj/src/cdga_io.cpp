#include "ispace/cdga_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace ispace {

namespace {

using nlohmann::json;

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const json& rows, Index expect_rows, Index expect_cols,
                     const std::string& what) {
  if (!rows.is_array())
    throw std::invalid_argument("cdga json: " + what + " is not an array");
  Mat m(static_cast<Index>(rows.size()),
        rows.empty() ? expect_cols
                     : static_cast<Index>(rows.front().size()));
  for (Index r = 0; r < m.rows(); ++r) {
    const json& row = rows[static_cast<size_t>(r)];
    if (static_cast<Index>(row.size()) != m.cols())
      throw std::invalid_argument("cdga json: ragged matrix in " + what);
    for (Index c = 0; c < m.cols(); ++c) {
      m(r, c) = Rational(row[static_cast<size_t>(c)].get<std::string>());
    }
  }
  if (m.rows() != expect_rows || m.cols() != expect_cols)
    throw std::invalid_argument("cdga json: " + what + " has shape " +
                                std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + ", expected " +
                                std::to_string(expect_rows) + "x" +
                                std::to_string(expect_cols));
  return m;
}

}  // namespace

std::string cdga_to_json(const FiniteCDGA& a) {
  json out;
  json dims = json::object();
  for (const auto& [k, d] : a.space.dims) dims[std::to_string(k)] = d;
  out["dims"] = std::move(dims);
  if (!a.space.labels.empty()) {
    json labels = json::object();
    for (const auto& [k, names] : a.space.labels) {
      labels[std::to_string(k)] = names;
    }
    out["labels"] = std::move(labels);
  }
  json differential = json::object();
  for (const auto& [k, m] : a.diff) {
    if (!m.isZero()) differential[std::to_string(k)] = matrix_to_json(m);
  }
  out["differential"] = std::move(differential);
  json product = json::array();
  for (const auto& [key, v] : a.product) {
    const auto& [ka, kb, i, j] = key;
    json entry;
    entry["da"] = ka;
    entry["i"] = i;
    entry["db"] = kb;
    entry["j"] = j;
    json value = json::array();
    for (Index r = 0; r < v.size(); ++r) value.push_back(v(r).str());
    entry["value"] = std::move(value);
    product.push_back(std::move(entry));
  }
  out["product"] = std::move(product);
  out["unit"] = a.unit;
  return out.dump(2);
}

FiniteCDGA cdga_from_json(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("cdga json: parse error: ") +
                                e.what());
  }
  if (!in.is_object() || !in.contains("dims"))
    throw std::invalid_argument("cdga json: missing 'dims'");
  FiniteCDGA a;
  for (const auto& [key, value] : in["dims"].items()) {
    const int k = std::stoi(key);
    const Index d = value.get<Index>();
    if (d < 0) throw std::invalid_argument("cdga json: negative dimension");
    a.space.set_dim(k, d);
  }
  if (in.contains("labels")) {
    for (const auto& [key, value] : in["labels"].items()) {
      a.space.labels[std::stoi(key)] =
          value.get<std::vector<std::string>>();
    }
  }
  if (in.contains("differential")) {
    for (const auto& [key, value] : in["differential"].items()) {
      const int k = std::stoi(key);
      a.diff[k] = matrix_from_json(value, a.space.dim(k + 1), a.space.dim(k),
                                   "differential at degree " + key);
    }
  }
  if (in.contains("product")) {
    for (const auto& entry : in["product"]) {
      const int ka = entry.at("da").get<int>();
      const int kb = entry.at("db").get<int>();
      const Index i = entry.at("i").get<Index>();
      const Index j = entry.at("j").get<Index>();
      const auto strings = entry.at("value").get<std::vector<std::string>>();
      if (static_cast<Index>(strings.size()) != a.space.dim(ka + kb))
        throw std::invalid_argument("cdga json: product value length mismatch");
      Vec v(static_cast<Index>(strings.size()));
      for (Index r = 0; r < v.size(); ++r) {
        v(r) = Rational(strings[static_cast<size_t>(r)]);
      }
      a.set_product(ka, i, kb, j, v);
    }
  }
  a.unit = in.value("unit", Index{0});
  return a;
}

FiniteCDGA cdga_from_stream(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return cdga_from_json(buf.str());
}

FiniteCDGA cdga_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return cdga_from_stream(in);
}

}  // namespace ispace
