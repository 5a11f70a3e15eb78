#include "nadiv/cli/io.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace nadiv::cli {

using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AlgebraError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw AlgebraError("cannot write " + path);
  out << text;
}

json parse(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw AlgebraError(std::string(what) + ": invalid JSON: " + e.what());
  }
}

double real_at(const json& j, const char* what) {
  if (!j.is_number()) throw AlgebraError(std::string(what) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw AlgebraError(std::string(what) + ": non-finite entry");
  return v;
}

Mat matrix_from(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw AlgebraError(std::string(what) + ": expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array()) throw AlgebraError(std::string(what) + ": rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Mat M(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw AlgebraError(std::string(what) + ": ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) M(r, c) = real_at(row[static_cast<std::size_t>(c)], what);
  }
  return M;
}

Tensor3 tensor_from(const json& j, int n, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) throw AlgebraError(std::string(what) + ": table shape mismatch");
  Tensor3 t(n);
  for (int i = 0; i < n; ++i) {
    const json& ji = j[i];
    if (!ji.is_array() || static_cast<int>(ji.size()) != n) throw AlgebraError(std::string(what) + ": table shape mismatch");
    for (int k = 0; k < n; ++k) {
      const json& jk = ji[k];
      if (!jk.is_array() || static_cast<int>(jk.size()) != n)
        throw AlgebraError(std::string(what) + ": table shape mismatch");
      for (int l = 0; l < n; ++l) t(i, k, l) = real_at(jk[l], what);
    }
  }
  return t;
}

void append_row(std::string& out, const double* v, int n) {
  out += "[";
  for (int i = 0; i < n; ++i) {
    if (i) out += ", ";
    out += real17(v[i]);
  }
  out += "]";
}

}  // namespace

std::string real17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string algebra_to_json(const Algebra& A) {
  const int n = A.dim();
  std::string out = "{\n  \"dim\": " + std::to_string(n) + ",\n  \"basis\": " + json(A.labels()).dump() + ",\n";
  out += "  \"provenance\": " + json(A.provenance()).dump() + ",\n";
  out += "  \"tolerance\": " + real17(A.tol()) + ",\n  \"table\": [\n";
  std::vector<double> row(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out += "    [";
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) row[k] = A.c(i, j, k);
      out += j ? ",\n     " : "";
      append_row(out, row.data(), n);
    }
    out += i + 1 < n ? "],\n" : "]\n";
  }
  out += "  ]\n}\n";
  return out;
}

Algebra algebra_from_json(const std::string& text) {
  json j = parse(text, "algebra file");
  if (!j.is_object() || !j.contains("dim") || !j.contains("table"))
    throw AlgebraError("algebra file: fields dim and table are required");
  if (!j["dim"].is_number_integer() || j["dim"].get<int>() < 1) throw AlgebraError("algebra file: dim must be a positive integer");
  const int n = j["dim"].get<int>();
  Tensor3 t = tensor_from(j["table"], n, "algebra file");
  std::vector<std::string> labels;
  if (j.contains("basis")) labels = j["basis"].get<std::vector<std::string>>();
  const double tol = j.contains("tolerance") ? real_at(j["tolerance"], "algebra file") : kDefaultTolerance;
  std::string prov = j.contains("provenance") && j["provenance"].is_string() ? j["provenance"].get<std::string>() : "";
  return Algebra(std::move(t), std::move(labels), tol, std::move(prov));
}

void write_algebra_file(const std::string& path, const Algebra& A) { spill(path, algebra_to_json(A)); }

Algebra read_algebra_file(const std::string& path) { return algebra_from_json(slurp(path)); }

std::string matrix_to_json(const Mat& M) {
  std::string out = "{\n  \"matrix\": [\n";
  std::vector<double> row(static_cast<std::size_t>(M.cols()));
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    for (Eigen::Index c = 0; c < M.cols(); ++c) row[c] = M(r, c);
    out += "    ";
    append_row(out, row.data(), static_cast<int>(M.cols()));
    out += r + 1 < M.rows() ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

void write_matrix_file(const std::string& path, const Mat& M) { spill(path, matrix_to_json(M)); }

Mat read_matrix_file(const std::string& path) {
  json j = parse(slurp(path), "matrix file");
  if (!j.is_object() || !j.contains("matrix")) throw AlgebraError("matrix file: field matrix is required");
  return matrix_from(j["matrix"], "matrix file");
}

QuadraticStructure read_quadratic_file(const std::string& path) {
  json j = parse(slurp(path), "quadratic file");
  if (!j.is_object() || !j.contains("form") || !j.contains("wedge"))
    throw AlgebraError("quadratic file: fields form and wedge are required");
  QuadraticStructure q;
  q.form = matrix_from(j["form"], "quadratic file");
  if (q.form.rows() != q.form.cols()) throw AlgebraError("quadratic file: form must be square");
  q.vdim = static_cast<int>(q.form.rows());
  q.wedge = tensor_from(j["wedge"], q.vdim, "quadratic file");
  if (j.contains("labels")) q.vlabels = j["labels"].get<std::vector<std::string>>();
  q.embedding = Mat::Identity(q.vdim + 1, q.vdim + 1);
  return q;
}

}  // namespace nadiv::cli
