#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "matrix.hpp"

namespace ncagm {

/// An ordered list of n Hermitian matrices sharing one dimension; the tuple
/// x_1..x_n fed to the symmetric products and the inequality checkers.
class OperatorFamily {
 public:
  OperatorFamily() = default;
  explicit OperatorFamily(std::vector<HermitianMatrix> members);

  int size() const { return static_cast<int>(members_.size()); }
  int dim() const { return members_.empty() ? 0 : members_[0].dim(); }
  const HermitianMatrix& member(int i) const { return members_[static_cast<std::size_t>(i)]; }
  const std::vector<HermitianMatrix>& members() const { return members_; }

  HermitianMatrix sum() const;
  HermitianMatrix sum_of_squares() const;

  /// {"n":..,"m":..,"members":[{"m":..,"re":[..],"im":[..]},..]}; also accepts
  /// a bare array of matrix objects. "im" may be omitted for real input.
  static OperatorFamily from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

 private:
  std::vector<HermitianMatrix> members_;
};

nlohmann::json matrix_to_json(const Matrix& a);
Matrix matrix_from_json(const nlohmann::json& j);

/// ||(sum_i x_i^2)^{1/2}|| = ||sum_i x_i^2||^{1/2}.
double sq_sum_norm(const OperatorFamily& fam);

}  // namespace ncagm
