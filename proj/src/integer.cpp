#include "tgit/integer.hpp"

#include <boost/integer/common_factor.hpp>

#include <sstream>
#include <stdexcept>

namespace tgit {

Integer dot(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Integer gcd_of(const IntVector& v) {
    Integer g = 0;
    for (const auto& x : v) {
        if (x != 0) g = boost::multiprecision::gcd(g, Integer(abs(x)));
        if (g == 1) break;
    }
    return g;
}

bool is_zero(const IntVector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

bool is_primitive(const IntVector& v) { return gcd_of(v) == 1; }

IntVector primitive(const IntVector& v) {
    Integer g = gcd_of(v);
    if (g <= 1) return v;
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
    return out;
}

IntVector add(const IntVector& a, const IntVector& b) {
    IntVector out(a);
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

IntVector sub(const IntVector& a, const IntVector& b) {
    IntVector out(a);
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    return out;
}

IntVector scale(const Integer& s, const IntVector& v) {
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
    return out;
}

IntVector negate(const IntVector& v) { return scale(Integer(-1), v); }

std::string to_string(const IntVector& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    os << ')';
    return os.str();
}

}  // namespace tgit
