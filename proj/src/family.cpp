#include "family.hpp"

#include <cmath>

namespace ncagm {

OperatorFamily::OperatorFamily(std::vector<HermitianMatrix> members) : members_(std::move(members)) {
  if (members_.empty()) throw_invalid("OperatorFamily: needs at least one member");
  const int m = members_[0].dim();
  for (const auto& x : members_)
    if (x.dim() != m) throw_invalid("OperatorFamily: members have mixed dimensions");
}

HermitianMatrix OperatorFamily::sum() const {
  Matrix acc(dim());
  for (const auto& x : members_) acc += x.mat();
  return HermitianMatrix(acc);
}

HermitianMatrix OperatorFamily::sum_of_squares() const {
  Matrix acc(dim());
  Matrix sq(dim());
  for (const auto& x : members_) {
    multiply_into(sq, x.mat(), x.mat());
    acc += sq;
  }
  return HermitianMatrix(acc);
}

nlohmann::json matrix_to_json(const Matrix& a) {
  const int m = a.dim();
  std::vector<double> re, im;
  re.reserve(static_cast<std::size_t>(m) * m);
  im.reserve(static_cast<std::size_t>(m) * m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      re.push_back(a(r, c).real());
      im.push_back(a(r, c).imag());
    }
  return nlohmann::json{{"m", m}, {"re", re}, {"im", im}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("re"))
    throw_parse("matrix: expected object with \"m\" and \"re\"");
  const int m = j.at("m").get<int>();
  if (m < 1) throw_parse("matrix: dimension must be >= 1");
  const auto re = j.at("re").get<std::vector<double>>();
  std::vector<double> im;
  if (j.contains("im")) im = j.at("im").get<std::vector<double>>();
  const std::size_t want = static_cast<std::size_t>(m) * static_cast<std::size_t>(m);
  if (re.size() != want || (!im.empty() && im.size() != want))
    throw_parse("matrix: entry arrays must have m*m values (row-major)");
  Matrix a(m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      const std::size_t k = static_cast<std::size_t>(r) * m + c;
      a(r, c) = cplx(re[k], im.empty() ? 0.0 : im[k]);
    }
  return a;
}

OperatorFamily OperatorFamily::from_json(const nlohmann::json& j) {
  const nlohmann::json* arr = nullptr;
  if (j.is_array()) {
    arr = &j;
  } else if (j.is_object() && j.contains("members")) {
    arr = &j.at("members");
  } else {
    throw_parse("family: expected {\"members\": [...]} or a bare array of matrices");
  }
  if (!arr->is_array() || arr->empty()) throw_parse("family: needs at least one matrix");
  std::vector<HermitianMatrix> members;
  members.reserve(arr->size());
  for (const auto& mj : *arr) members.emplace_back(matrix_from_json(mj));
  OperatorFamily fam(std::move(members));
  if (j.is_object()) {
    if (j.contains("n") && j.at("n").get<int>() != fam.size())
      throw_parse("family: declared n does not match member count");
    if (j.contains("m") && j.at("m").get<int>() != fam.dim())
      throw_parse("family: declared m does not match matrix dimension");
  }
  return fam;
}

nlohmann::json OperatorFamily::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& x : members_) arr.push_back(matrix_to_json(x.mat()));
  return nlohmann::json{{"n", size()}, {"m", dim()}, {"members", arr}};
}

double sq_sum_norm(const OperatorFamily& fam) {
  return std::sqrt(op_norm(fam.sum_of_squares()));
}

}  // namespace ncagm
