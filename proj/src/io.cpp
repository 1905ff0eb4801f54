#include "delayh2/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace delayh2 {

using nlohmann::json;

namespace {

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kParse, std::string("invalid JSON: ") + e.what());
  }
}

Matrix matrix_from_json(const json& doc, const char* key) {
  if (!doc.contains(key)) fail(ErrorCode::kParse, std::string("missing key \"") + key + "\"");
  const json& rows = doc.at(key);
  if (!rows.is_array()) {
    fail(ErrorCode::kParse, std::string("\"") + key + "\" must be an array of rows");
  }
  const auto r = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index c = r == 0 ? 0 : static_cast<Eigen::Index>(rows.front().size());
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const json& row = rows[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != c) {
      fail(ErrorCode::kParse, std::string("\"") + key + "\" rows must be arrays of equal length");
    }
    for (Eigen::Index j = 0; j < c; ++j) {
      const json& v = row[static_cast<size_t>(j)];
      if (!v.is_number()) {
        fail(ErrorCode::kParse, std::string("\"") + key + "\" entries must be numbers");
      }
      m(i, j) = v.get<double>();
    }
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<int> int_list(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_array()) {
    fail(ErrorCode::kParse, std::string("\"") + key + "\" must be an array of integers");
  }
  std::vector<int> out;
  for (const json& v : doc.at(key)) {
    if (!v.is_number_integer()) {
      fail(ErrorCode::kParse, std::string("\"") + key + "\" must contain integers");
    }
    out.push_back(v.get<int>());
  }
  return out;
}

std::vector<std::vector<int>> int_matrix(const json& v, const char* what) {
  if (!v.is_array()) fail(ErrorCode::kParse, std::string(what) + " must be an array of rows");
  std::vector<std::vector<int>> out;
  for (const json& row : v) {
    if (!row.is_array()) fail(ErrorCode::kParse, std::string(what) + " rows must be arrays");
    std::vector<int> r;
    for (const json& x : row) {
      if (!x.is_number_integer()) {
        fail(ErrorCode::kParse, std::string(what) + " entries must be integers");
      }
      r.push_back(x.get<int>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

PlantMatrices parse_plant_matrices(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) fail(ErrorCode::kParse, "plant document must be a JSON object");
  PlantMatrices m;
  m.A = matrix_from_json(doc, "A");
  m.B1 = matrix_from_json(doc, "B1");
  m.B2 = matrix_from_json(doc, "B2");
  m.C1 = matrix_from_json(doc, "C1");
  m.C2 = matrix_from_json(doc, "C2");
  m.D12 = matrix_from_json(doc, "D12");
  m.D21 = matrix_from_json(doc, "D21");
  return m;
}

Plant parse_plant(std::string_view text, const Tolerances& tol) {
  return Plant(parse_plant_matrices(text), tol);
}

std::string plant_to_json(const PlantMatrices& m) {
  json doc;
  doc["A"] = matrix_to_json(m.A);
  doc["B1"] = matrix_to_json(m.B1);
  doc["B2"] = matrix_to_json(m.B2);
  doc["C1"] = matrix_to_json(m.C1);
  doc["C2"] = matrix_to_json(m.C2);
  doc["D12"] = matrix_to_json(m.D12);
  doc["D21"] = matrix_to_json(m.D21);
  return doc.dump(2) + "\n";
}

InformationPattern parse_pattern(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) fail(ErrorCode::kParse, "pattern document must be a JSON object");
  if (!doc.contains("N") || !doc.at("N").is_number_integer()) {
    fail(ErrorCode::kParse, "pattern needs an integer \"N\"");
  }
  const int n = doc.at("N").get<int>();
  const BlockPartition u(int_list(doc, "u_blocks"));
  const BlockPartition y(int_list(doc, "y_blocks"));
  const bool has_masks = doc.contains("masks");
  const bool has_delays = doc.contains("delays");
  if (has_masks == has_delays) {
    fail(ErrorCode::kParse, "pattern needs exactly one of \"masks\" or \"delays\"");
  }
  if (has_delays) return from_delay_matrix(int_matrix(doc.at("delays"), "\"delays\""), u, y, n);

  const json& masks = doc.at("masks");
  if (!masks.is_array()) fail(ErrorCode::kParse, "\"masks\" must be an array");
  std::vector<BlockMask> out;
  for (const json& m : masks) out.push_back(BlockMask::from_rows(int_matrix(m, "mask")));
  return InformationPattern(n, u, y, std::move(out));
}

std::string pattern_to_json(const InformationPattern& pattern) {
  json doc;
  doc["N"] = pattern.horizon();
  doc["u_blocks"] = pattern.u_blocks().sizes();
  doc["y_blocks"] = pattern.y_blocks().sizes();
  json masks = json::array();
  for (const BlockMask& m : pattern.masks()) {
    json rows = json::array();
    for (int a = 0; a < m.rows(); ++a) {
      json row = json::array();
      for (int b = 0; b < m.cols(); ++b) row.push_back(m(a, b) ? 1 : 0);
      rows.push_back(std::move(row));
    }
    masks.push_back(std::move(rows));
  }
  doc["masks"] = std::move(masks);
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace delayh2
