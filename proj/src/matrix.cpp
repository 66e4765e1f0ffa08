#include "protoselect/matrix.hpp"

#include <cmath>

#include "protoselect/errors.hpp"

namespace protoselect {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) {
    return {};
  }
  const std::size_t cols = rows.front().size();
  Matrix out(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw InvalidInputError("matrix rows have inconsistent lengths");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      out(i, j) = rows[i][j];
    }
  }
  return out;
}

bool Matrix::all_finite() const {
  for (const double v : data_) {
    if (!std::isfinite(v)) {
      return false;
    }
  }
  return true;
}

}  // namespace protoselect
