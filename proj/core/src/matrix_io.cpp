#include "gammalab/matrix_io.hpp"

#include <istream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace gammalab {

namespace {

using nlohmann::json;

std::vector<std::vector<double>> read_grid(const json& j, const char* key,
                                           int n) {
  if (!j.contains(key)) {
    throw SchemaError(std::string("matrix JSON is missing \"") + key + "\"");
  }
  const json& rows = j.at(key);
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
    throw SchemaError(std::string("\"") + key + "\" must be an array of " +
                      std::to_string(n) + " rows");
  }
  std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    const json& row = rows.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw SchemaError(std::string("\"") + key + "\" row " +
                        std::to_string(i) + " must have " + std::to_string(n) +
                        " numbers");
    }
    for (int k = 0; k < n; ++k) {
      if (!row.at(k).is_number()) {
        throw SchemaError(std::string("\"") + key + "\" holds a non-number");
      }
      out[i][k] = row.at(k).get<double>();
    }
  }
  return out;
}

}  // namespace

HermitianMatrix parse_matrix_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("matrix JSON parse failed: ") + e.what());
  }
  if (!j.is_object()) throw SchemaError("matrix JSON must be an object");
  if (!j.contains("n") || !j.at("n").is_number_integer()) {
    throw SchemaError("matrix JSON needs an integer \"n\"");
  }
  const int n = j.at("n").get<int>();
  if (n < 2 || n > 8) {
    throw SchemaError("matrix dimension n must be in [2, 8]");
  }
  if (!j.contains("field") || !j.at("field").is_string()) {
    throw SchemaError("matrix JSON needs \"field\": \"real\"|\"complex\"");
  }
  const std::string field_str = j.at("field").get<std::string>();
  Field field;
  if (field_str == "real") {
    field = Field::real;
  } else if (field_str == "complex") {
    field = Field::complex;
  } else {
    throw SchemaError("\"field\" must be \"real\" or \"complex\"");
  }

  const auto re = read_grid(j, "re", n);
  std::vector<std::vector<double>> im(n, std::vector<double>(n, 0.0));
  if (field == Field::complex) {
    if (j.contains("im")) im = read_grid(j, "im", n);
  } else if (j.contains("im")) {
    throw SchemaError("\"im\" must be omitted when field is \"real\"");
  }

  std::vector<std::vector<Cplx>> rows(n, std::vector<Cplx>(n));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) rows[i][k] = Cplx(re[i][k], im[i][k]);
  }
  try {
    return HermitianMatrix::from_rows(rows, field);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
}

HermitianMatrix read_matrix_json(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix_json(buf.str());
}

std::string write_matrix_json(const HermitianMatrix& m) {
  json j;
  j["n"] = m.dim();
  j["field"] = field_name(m.field());
  json re = json::array();
  json im = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json re_row = json::array();
    json im_row = json::array();
    for (int k = 0; k < m.dim(); ++k) {
      re_row.push_back(m(i, k).real());
      im_row.push_back(m(i, k).imag());
    }
    re.push_back(re_row);
    im.push_back(im_row);
  }
  j["re"] = re;
  if (m.field() == Field::complex) j["im"] = im;
  return j.dump();
}

}  // namespace gammalab
