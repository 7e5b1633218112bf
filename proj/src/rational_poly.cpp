#include "polyfock/rational_poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace polyfock {

mpz_class binomial(long n, long k)
{
    if (n < 0 || k < 0 || k > n) {
        return 0;
    }
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

mpz_class factorial(long n)
{
    if (n < 0) {
        throw std::invalid_argument("factorial of a negative integer");
    }
    mpz_class out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

std::string to_fraction_string(const Rational& q)
{
    Rational c(q);
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_fraction(const std::string& s)
{
    Rational q;
    if (q.set_str(s, 10) != 0) {
        throw std::invalid_argument("not a rational literal: '" + s + "'");
    }
    if (q.get_den() == 0) {
        throw std::invalid_argument("zero denominator: '" + s + "'");
    }
    q.canonicalize();
    return q;
}

RationalPoly::RationalPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs))
{
    for (auto& c : coeffs_) {
        c.canonicalize();
    }
    trim();
}

RationalPoly RationalPoly::constant(const Rational& c)
{
    return RationalPoly(std::vector<Rational>{c});
}

RationalPoly RationalPoly::monomial(const Rational& c, std::size_t degree)
{
    std::vector<Rational> v(degree + 1, Rational(0));
    v[degree] = c;
    return RationalPoly(std::move(v));
}

void RationalPoly::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0) {
        coeffs_.pop_back();
    }
}

Rational RationalPoly::coeff(std::size_t j) const
{
    return j < coeffs_.size() ? coeffs_[j] : Rational(0);
}

Rational RationalPoly::operator()(const Rational& x) const
{
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

double RationalPoly::eval_exact(double x) const
{
    return (*this)(Rational(x)).get_d();
}

double RationalPoly::eval(double x) const
{
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + it->get_d();
    }
    return acc;
}

std::complex<double> RationalPoly::eval(std::complex<double> z) const
{
    std::complex<double> acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * z + it->get_d();
    }
    return acc;
}

std::vector<double> RationalPoly::to_double() const
{
    std::vector<double> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) {
        out.push_back(c.get_d());
    }
    return out;
}

RationalPoly RationalPoly::derivative() const
{
    if (coeffs_.size() <= 1) {
        return {};
    }
    std::vector<Rational> v(coeffs_.size() - 1);
    for (std::size_t j = 1; j < coeffs_.size(); ++j) {
        v[j - 1] = coeffs_[j] * static_cast<long>(j);
    }
    return RationalPoly(std::move(v));
}

RationalPoly RationalPoly::truncated(std::size_t max_degree) const
{
    if (coeffs_.size() <= max_degree + 1) {
        return *this;
    }
    return RationalPoly(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + static_cast<long>(max_degree) + 1));
}

RationalPoly RationalPoly::scaled_argument(const Rational& c) const
{
    std::vector<Rational> v(coeffs_.size());
    Rational power = 1;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
        v[j] = coeffs_[j] * power;
        power *= c;
    }
    return RationalPoly(std::move(v));
}

RationalPoly& RationalPoly::operator+=(const RationalPoly& rhs)
{
    if (rhs.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(rhs.coeffs_.size(), Rational(0));
    }
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
        coeffs_[j] += rhs.coeffs_[j];
    }
    trim();
    return *this;
}

RationalPoly& RationalPoly::operator-=(const RationalPoly& rhs)
{
    if (rhs.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(rhs.coeffs_.size(), Rational(0));
    }
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
        coeffs_[j] -= rhs.coeffs_[j];
    }
    trim();
    return *this;
}

RationalPoly& RationalPoly::operator*=(const RationalPoly& rhs)
{
    if (is_zero() || rhs.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<Rational> v(coeffs_.size() + rhs.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            v[i + j] += coeffs_[i] * rhs.coeffs_[j];
        }
    }
    coeffs_ = std::move(v);
    trim();
    return *this;
}

RationalPoly& RationalPoly::operator*=(const Rational& c)
{
    for (auto& x : coeffs_) {
        x *= c;
    }
    trim();
    return *this;
}

bool operator==(const RationalPoly& a, const RationalPoly& b)
{
    return a.coeffs_ == b.coeffs_;
}

std::vector<std::string> RationalPoly::to_fraction_strings() const
{
    std::vector<std::string> out;
    if (coeffs_.empty()) {
        out.emplace_back("0/1");
        return out;
    }
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) {
        out.push_back(to_fraction_string(c));
    }
    return out;
}

}  // namespace polyfock
