#include "qneg/laguerre.hpp"

#include "qneg/error.hpp"

namespace qneg {

double laguerre(int n, double x) {
  if (n < 0) throw DomainError("laguerre: n must be >= 0");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace qneg
