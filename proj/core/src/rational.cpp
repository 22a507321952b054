#include "partlab/rational.hpp"

#include <cmath>

#include "partlab/errors.hpp"

namespace partlab {

std::string to_fraction_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw DomainError("cannot convert a non-finite double to a rational");
    Rational q(x);  // mpq_set_d is exact
    q.canonicalize();
    return q;
}

} // namespace partlab
