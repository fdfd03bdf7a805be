#include "qadapt/core/json_io.hpp"

#include <fstream>

#include "qadapt/core/error.hpp"

namespace qadapt::core {

Json shape_to_json(const RegisterShape& shape) {
  Json out = Json::array();
  for (const auto& s : shape.subsystems()) out.push_back(Json::array({s.label, s.dim}));
  return out;
}

RegisterShape shape_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("shape must be an array of [label, dim] pairs");
  std::vector<Subsystem> subs;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_number_unsigned()) {
      throw InputError("shape entries must be [label, positive dim]");
    }
    subs.push_back({e[0].get<std::string>(), e[1].get<std::size_t>()});
  }
  return RegisterShape(std::move(subs));
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json rr = Json::array();
    Json ir = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      rr.push_back(m(i, k).real());
      ir.push_back(m(i, k).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return Json{{"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.contains("re")) throw InputError("matrix payload needs a 're' field");
  const Json& re = j.at("re");
  const bool has_im = j.contains("im");
  if (!re.is_array() || re.empty()) throw InputError("'re' must be a non-empty 2-D array");
  const auto rows = static_cast<Eigen::Index>(re.size());
  const auto cols = static_cast<Eigen::Index>(re[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(re[i].size()) != cols) throw InputError("ragged 're' array");
    if (has_im && static_cast<Eigen::Index>(j["im"][i].size()) != cols) {
      throw InputError("'im' shape differs from 're'");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      const double im = has_im ? j["im"][i][k].get<double>() : 0.0;
      m(i, k) = Complex(re[i][k].get<double>(), im);
    }
  }
  return m;
}

Json state_to_json(const DensityOperator& rho) {
  Json out = matrix_to_json(rho.matrix());
  out["shape"] = shape_to_json(rho.shape());
  return out;
}

DensityOperator state_from_json(const Json& j) {
  if (!j.contains("shape")) throw InputError("state payload needs a 'shape' field");
  return DensityOperator(shape_from_json(j.at("shape")), matrix_from_json(j));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace qadapt::core
