#include "ssi/normal.hpp"

#include <cmath>
#include <stdexcept>

namespace ssi {

double normal_cdf(double z) {
  if (std::isnan(z)) {
    throw std::invalid_argument("normal_cdf: z is NaN");
  }
  // Phi(z) = erfc(-z / sqrt(2)) / 2; erfc keeps full precision in the tails,
  // where 1 - erf(...) would cancel.
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double normal_pdf(double z) {
  static const double inv_sqrt_2pi = 0.3989422804014326779399460599343818684;
  return inv_sqrt_2pi * std::exp(-0.5 * z * z);
}

}  // namespace ssi
