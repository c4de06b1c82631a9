#include "fakerev/matrix.hpp"

#include <algorithm>

namespace fakerev {

void FeatureMatrix::append_row(std::span<const double> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) throw std::invalid_argument("append_row: width mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> indices) const {
  FeatureMatrix out(indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i) std::ranges::copy(row(indices[i]), out.row(i).begin());
  return out;
}

FeatureMatrix FeatureMatrix::select_cols(std::span<const std::size_t> indices) const {
  FeatureMatrix out(rows_, indices.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < indices.size(); ++j) out(r, j) = (*this)(r, indices[j]);
  return out;
}

}  // namespace fakerev
