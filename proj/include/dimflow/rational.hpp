#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace dimflow {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
// ~166 significant bits: enough to resolve e^{±40} cancellations on the slice.
using HighReal = boost::multiprecision::cpp_bin_float_50;

using QVec = std::vector<Rational>;
using IVec = std::vector<int>;
using QMatrix = std::vector<QVec>;

// Parses "3", "-2/5", "0.25" (decimal literals are converted exactly).
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);
double to_double(const Rational& q);
// Exact binary value of a finite double.
Rational from_double(double x);

Rational dot(const QVec& a, const QVec& b);
Rational dot(const IVec& a, const QVec& b);
QVec to_qvec(const IVec& v);
QVec operator+(const QVec& a, const QVec& b);
QVec operator-(const QVec& a, const QVec& b);
QVec operator*(const Rational& s, const QVec& a);
bool is_zero(const QVec& v);
std::string to_string(const QVec& v);

// A rational or +infinity; used for gamma(psi) and grassmannian exponents.
struct ExtRational {
    bool infinite = false;
    Rational value = 0;

    static ExtRational inf() { return {true, 0}; }
    static ExtRational of(const Rational& q) { return {false, q}; }
    std::string str() const { return infinite ? "inf" : to_string(value); }
};

QMatrix identity_q(int n);
QMatrix matmul(const QMatrix& a, const QMatrix& b);
Rational det(QMatrix m);
QMatrix inverse(const QMatrix& m);

}  // namespace dimflow
