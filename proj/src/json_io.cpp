#include "thetamult/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace thetamult {

namespace {

using nlohmann::json;

void require_grid(const json& j, int rows, int cols, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw std::invalid_argument(std::string(what) + ": expected " +
                                std::to_string(rows) + " rows");
  for (const json& row : j)
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw std::invalid_argument(std::string(what) + ": expected rows of length " +
                                  std::to_string(cols));
}

int residue_entry(const json& e, const char* what) {
  if (!e.is_number_integer())
    throw std::invalid_argument(std::string(what) + ": entries must be integers");
  const int64_t v = e.get<int64_t>();
  return static_cast<int>(((v % 4) + 4) % 4);
}

}  // namespace

Z4Matrix z4_matrix_from_json(const json& j, int expected_size) {
  require_grid(j, expected_size, expected_size, "matrix");
  Z4Matrix m(expected_size);
  for (int i = 0; i < expected_size; ++i)
    for (int k = 0; k < expected_size; ++k)
      m.set(i, k, residue_entry(j[i][k], "matrix"));
  return m;
}

json z4_matrix_to_json(const Z4Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (int j2 = 0; j2 < m.size(); ++j2) row.push_back(m.at(i, j2));
    rows.push_back(std::move(row));
  }
  return rows;
}

Z4Vector z4_vector_from_json(const json& j, int expected_size) {
  if (!j.is_array() || static_cast<int>(j.size()) != expected_size)
    throw std::invalid_argument("vector: expected length " +
                                std::to_string(expected_size));
  Z4Vector v(expected_size);
  for (int i = 0; i < expected_size; ++i)
    v.set(i, residue_entry(j[i], "vector"));
  return v;
}

json z4_vector_to_json(const Z4Vector& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v.at(i));
  return out;
}

OrientedLagrangian lagrangian_from_json(const SymplecticSpace& space,
                                        const QuadraticForm& form,
                                        const json& j) {
  if (!j.is_object() || !j.contains("basis"))
    throw std::invalid_argument("lagrangian: expected an object with a basis field");
  const json& rows = j["basis"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != space.g)
    throw std::invalid_argument("lagrangian: basis must hold g vectors");
  std::vector<Z4Vector> basis;
  for (const json& row : rows)
    basis.push_back(z4_vector_from_json(row, space.dim()));
  return OrientedLagrangian(space, form, std::move(basis));
}

json lagrangian_to_json(const OrientedLagrangian& L) {
  json rows = json::array();
  for (const Z4Vector& v : L.basis) rows.push_back(z4_vector_to_json(v));
  return json{{"basis", std::move(rows)}};
}

SiegelPoint siegel_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    throw std::invalid_argument("tau: expected an object with re and im fields");
  const json& re = j["re"];
  if (!re.is_array() || re.empty())
    throw std::invalid_argument("tau: re must be a nonempty matrix");
  const int g = static_cast<int>(re.size());
  require_grid(re, g, g, "tau.re");
  require_grid(j["im"], g, g, "tau.im");
  ComplexMatrix tau(g, std::vector<Complex>(g));
  for (int i = 0; i < g; ++i)
    for (int k = 0; k < g; ++k) {
      if (!re[i][k].is_number() || !j["im"][i][k].is_number())
        throw std::invalid_argument("tau: entries must be numbers");
      tau[i][k] = Complex(re[i][k].get<double>(), j["im"][i][k].get<double>());
    }
  return SiegelPoint(g, std::move(tau));
}

json siegel_to_json(const SiegelPoint& tau) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < tau.g; ++i) {
    json rre = json::array(), rim = json::array();
    for (int j2 = 0; j2 < tau.g; ++j2) {
      rre.push_back(tau.tau[i][j2].real());
      rim.push_back(tau.tau[i][j2].imag());
    }
    re.push_back(std::move(rre));
    im.push_back(std::move(rim));
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

json int_symplectic_to_json(const IntSymplectic& m) {
  const int n = 2 * m.g;
  json rows = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    for (int j2 = 0; j2 < n; ++j2) {
      const int64_t e = (i < m.g)
                            ? (j2 < m.g ? m.A[i][j2] : m.B[i][j2 - m.g])
                            : (j2 < m.g ? m.C[i - m.g][j2] : m.D[i - m.g][j2 - m.g]);
      row.push_back(e);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json parse_json_or_file(const std::string& arg) {
  std::ifstream file(arg);
  if (file.good()) {
    std::ostringstream buf;
    buf << file.rdbuf();
    return json::parse(buf.str());
  }
  return json::parse(arg);
}

}  // namespace thetamult
