#include "dcoh/matrix.hpp"

namespace dcoh {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      if (!is_integral(m(i, j))) throw std::domain_error("non-integral matrix entry " + to_string(m(i, j)));
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

bool is_integral(const RatMatrix& m) {
  for (const auto& x : m.data())
    if (!is_integral(x)) return false;
  return true;
}

}  // namespace dcoh
