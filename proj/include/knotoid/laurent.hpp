#ifndef KNOTOID_LAURENT_HPP_
#define KNOTOID_LAURENT_HPP_

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <sstream>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

namespace knotoid {

using BigInt = boost::multiprecision::cpp_int;

/// Exact Laurent polynomial in one variable A with arbitrary-precision
/// integer coefficients. The zero polynomial is the empty map; nonzero
/// coefficients only.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;

  static LaurentPolynomial monomial(BigInt coeff, int exponent) {
    LaurentPolynomial p;
    if (coeff != 0) p.terms_[exponent] = std::move(coeff);
    return p;
  }

  static LaurentPolynomial one() { return monomial(1, 0); }

  /// (-A^3)^k for any integer k, including negative.
  static LaurentPolynomial minus_a_cubed_pow(long k) {
    return monomial((k % 2 == 0) ? 1 : -1, static_cast<int>(3 * k));
  }

  /// The loop value -A^2 - A^-2.
  static LaurentPolynomial loop_factor() {
    LaurentPolynomial p;
    p.terms_[2] = -1;
    p.terms_[-2] = -1;
    return p;
  }

  bool is_zero() const { return terms_.empty(); }

  const std::map<int, BigInt>& terms() const { return terms_; }

  void add_term(int exponent, const BigInt& coeff) {
    if (coeff == 0) return;
    auto it = terms_.find(exponent);
    if (it == terms_.end()) {
      terms_[exponent] = coeff;
    } else {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPolynomial& operator+=(const LaurentPolynomial& other) {
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
  }

  LaurentPolynomial& operator-=(const LaurentPolynomial& other) {
    for (const auto& [e, c] : other.terms_) add_term(e, -c);
    return *this;
  }

  friend LaurentPolynomial operator+(LaurentPolynomial a,
                                     const LaurentPolynomial& b) {
    a += b;
    return a;
  }

  friend LaurentPolynomial operator-(LaurentPolynomial a,
                                     const LaurentPolynomial& b) {
    a -= b;
    return a;
  }

  friend LaurentPolynomial operator*(const LaurentPolynomial& a,
                                     const LaurentPolynomial& b) {
    LaurentPolynomial out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
    return out;
  }

  LaurentPolynomial& operator*=(const LaurentPolynomial& other) {
    *this = *this * other;
    return *this;
  }

  /// A -> A^-1: negate every exponent.
  LaurentPolynomial substitute_inverse() const {
    LaurentPolynomial out;
    for (const auto& [e, c] : terms_) out.terms_[-e] = c;
    return out;
  }

  LaurentPolynomial pow(unsigned k) const {
    LaurentPolynomial out = one();
    for (unsigned i = 0; i < k; ++i) out *= *this;
    return out;
  }

  bool operator==(const LaurentPolynomial& other) const = default;

  /// Sparse text form "c*A^e + ...", exponents descending; constant terms
  /// printed bare, unit coefficients suppressed.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const int e = it->first;
      BigInt c = it->second;
      if (first) {
        if (c < 0) {
          os << "-";
          c = -c;
        }
      } else {
        os << (c < 0 ? " - " : " + ");
        if (c < 0) c = -c;
      }
      if (e == 0) {
        os << c.str();
      } else {
        if (c != 1) os << c.str() << "*";
        os << "A^" << e;
      }
      first = false;
    }
    return os.str();
  }

  nlohmann::json to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [e, c] : terms_) j[std::to_string(e)] = c.str();
    return j;
  }

  static LaurentPolynomial from_json(const nlohmann::json& j) {
    LaurentPolynomial p;
    for (auto it = j.begin(); it != j.end(); ++it) {
      p.add_term(std::stoi(it.key()), BigInt(it.value().get<std::string>()));
    }
    return p;
  }

 private:
  std::map<int, BigInt> terms_;
};

}  // namespace knotoid

#endif  // KNOTOID_LAURENT_HPP_
