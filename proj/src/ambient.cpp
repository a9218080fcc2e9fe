#include "kahler/ambient.hpp"

namespace kahler {

double det4(const AmbientVector& a, const AmbientVector& b, const AmbientVector& c,
            const AmbientVector& d) {
  // Laplace expansion along the first two rows via 2x2 minors.
  auto m = [](const AmbientVector& r, const AmbientVector& s, int i, int j) {
    return r[i] * s[j] - r[j] * s[i];
  };
  return m(a, b, 0, 1) * m(c, d, 2, 3) - m(a, b, 0, 2) * m(c, d, 1, 3) +
         m(a, b, 0, 3) * m(c, d, 1, 2) + m(a, b, 1, 2) * m(c, d, 0, 3) -
         m(a, b, 1, 3) * m(c, d, 0, 2) + m(a, b, 2, 3) * m(c, d, 0, 1);
}

} // namespace kahler
