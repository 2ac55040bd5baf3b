#include "gdstar/io.hpp"

#include <cmath>
#include <fstream>

namespace gdstar {

Json matrix_to_json(const CMat& A) {
  Json data = Json::array();
  for (Index i = 0; i < A.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < A.cols(); ++j) row.push_back({A(i, j).real(), A(i, j).imag()});
    data.push_back(std::move(row));
  }
  return {{"rows", A.rows()}, {"cols", A.cols()}, {"data", std::move(data)}};
}

namespace {

Index positive_int(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() <= 0) {
    throw InputError(std::string("matrix file: '") + key + "' must be a positive integer");
  }
  return static_cast<Index>(j[key].get<long long>());
}

double finite_number(const Json& v, Index i, Index k) {
  if (!v.is_number()) {
    throw InputError("matrix file: entry (" + std::to_string(i) + "," + std::to_string(k) + ") is not a number pair");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InputError("matrix file: non-finite entry");
  return x;
}

}  // namespace

CMat matrix_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("matrix file: expected a JSON object");
  const Index rows = positive_int(j, "rows");
  const Index cols = positive_int(j, "cols");
  if (!j.contains("data") || !j["data"].is_array() || static_cast<Index>(j["data"].size()) != rows) {
    throw InputError("matrix file: 'data' must hold " + std::to_string(rows) + " rows");
  }
  CMat A(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = j["data"][static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw InputError("matrix file: row " + std::to_string(i) + " must hold " + std::to_string(cols) + " entries");
    }
    for (Index k = 0; k < cols; ++k) {
      const Json& e = row[static_cast<std::size_t>(k)];
      if (!e.is_array() || e.size() != 2) {
        throw InputError("matrix file: entry (" + std::to_string(i) + "," + std::to_string(k) +
                         ") must be an [re, im] pair");
      }
      A(i, k) = Complex(finite_number(e[0], i, k), finite_number(e[1], i, k));
    }
  }
  return A;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

CMat read_matrix(const std::string& path) {
  try {
    return matrix_from_json(read_json(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_matrix(const std::string& path, const CMat& A) { write_json(path, matrix_to_json(A)); }

CVec read_vector(const std::string& path) {
  const CMat M = read_matrix(path);
  if (M.cols() == 1) return M.col(0);
  if (M.rows() == 1) return M.row(0).transpose();
  throw ShapeError(path + ": expected a single row or column");
}

Json report_to_json(const CheckReport& rep) {
  Json items = Json::array();
  for (const auto& it : rep.items) {
    Json j = {{"name", it.name}, {"status", to_string(it.status)}, {"residual", it.residual}, {"scale", it.scale}};
    if (!it.note.empty()) j["note"] = it.note;
    items.push_back(std::move(j));
  }
  return {{"suite", rep.suite},
          {"pass", rep.overall()},
          {"inconsistency", rep.inconsistency},
          {"items", std::move(items)},
          {"findings", rep.findings}};
}

Json tolerance_to_json(const Tolerance& tol) {
  return {{"rank_rtol", tol.rank_rtol},
          {"residual_rtol", tol.residual_rtol},
          {"residual_atol", tol.residual_atol},
          {"eig_zero_rtol", tol.eig_zero_rtol}};
}

}  // namespace gdstar
