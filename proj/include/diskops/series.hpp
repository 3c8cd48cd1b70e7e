#pragma once
//
// Truncated complex power series f(z) = sum_{n=0}^{N} f_n z^n.
//
// Every operation takes an explicit output order and silently drops
// coefficients above it.
//

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <json.hpp>

namespace diskops {

using cplx = std::complex<double>;

inline constexpr std::size_t default_order = 256;

class PowerSeries {
public:
    // zero series of order 0
    PowerSeries();

    // throws DomainError on NaN/Inf coefficients; an empty list is the zero series
    explicit PowerSeries(std::vector<cplx> coeffs);

    static PowerSeries zero(std::size_t order);
    static PowerSeries constant(cplx c, std::size_t order = 0);
    static PowerSeries monomial(std::size_t k, cplx c = 1.0);
    static PowerSeries generate(std::size_t order, const std::function<cplx(std::size_t)>& coeff);

    std::size_t order() const { return coeffs_.size() - 1; }

    // index of the highest nonzero coefficient, 0 for the zero series
    std::size_t degree() const;

    std::span<const cplx> coeffs() const { return coeffs_; }

    // coefficient n, or 0 past the stored order
    cplx operator[](std::size_t n) const { return n < coeffs_.size() ? coeffs_[n] : cplx{}; }

    // pad with zeros or drop high coefficients
    PowerSeries truncated(std::size_t order) const;

    PowerSeries& operator+=(const PowerSeries& rhs);
    PowerSeries& operator-=(const PowerSeries& rhs);
    PowerSeries& operator*=(cplx s);

    friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
    friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
    friend PowerSeries operator*(PowerSeries a, cplx s) { return a *= s; }
    friend PowerSeries operator*(cplx s, PowerSeries a) { return a *= s; }

    friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

private:
    std::vector<cplx> coeffs_;
};

// coefficient k = sum_{j<=k} a_j b_{k-j}, for k <= order
PowerSeries cauchy_product(const PowerSeries& a, const PowerSeries& b, std::size_t order);

// f^k truncated at order; f^0 = 1
PowerSeries power(const PowerSeries& f, unsigned k, std::size_t order);

// term-by-term derivative; order drops by one (order 0 maps to the zero series)
PowerSeries derivative(const PowerSeries& f);

// f(phi(z)) by Horner accumulation; requires |phi_0| < 1
PowerSeries compose(const PowerSeries& f, const PowerSeries& phi, std::size_t order);

// 1/f by the standard recurrence; requires f_0 != 0
PowerSeries reciprocal(const PowerSeries& f, std::size_t order);

// Horner evaluation of the stored partial sum
cplx evaluate(const PowerSeries& f, cplx z);

// JSON form: array of [re, im] pairs, index = degree
nlohmann::json to_json(const PowerSeries& f);
PowerSeries series_from_json(const nlohmann::json& j);

// JSON helpers shared with the other modules
nlohmann::json complex_to_json(cplx z);
cplx complex_from_json(const nlohmann::json& j);

} // namespace diskops
