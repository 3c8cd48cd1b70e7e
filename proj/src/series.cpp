#include "diskops/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "diskops/errors.hpp"

namespace diskops {

namespace {

bool finite(cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

} // namespace

PowerSeries::PowerSeries() : coeffs_(1, cplx{}) {}

PowerSeries::PowerSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs))
{
    if (coeffs_.empty())
        coeffs_.assign(1, cplx{});
    for (std::size_t n = 0; n < coeffs_.size(); ++n)
        if (!finite(coeffs_[n]))
            throw DomainError("non-finite coefficient at degree " + std::to_string(n));
}

PowerSeries PowerSeries::zero(std::size_t order) { return PowerSeries(std::vector<cplx>(order + 1)); }

PowerSeries PowerSeries::constant(cplx c, std::size_t order)
{
    std::vector<cplx> v(order + 1);
    v[0] = c;
    return PowerSeries(std::move(v));
}

PowerSeries PowerSeries::monomial(std::size_t k, cplx c)
{
    std::vector<cplx> v(k + 1);
    v[k] = c;
    return PowerSeries(std::move(v));
}

PowerSeries PowerSeries::generate(std::size_t order, const std::function<cplx(std::size_t)>& coeff)
{
    std::vector<cplx> v(order + 1);
    for (std::size_t n = 0; n <= order; ++n)
        v[n] = coeff(n);
    return PowerSeries(std::move(v));
}

std::size_t PowerSeries::degree() const
{
    for (std::size_t n = coeffs_.size(); n-- > 0;)
        if (coeffs_[n] != cplx{})
            return n;
    return 0;
}

PowerSeries PowerSeries::truncated(std::size_t order) const
{
    PowerSeries r = *this;
    r.coeffs_.resize(order + 1);
    return r;
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& rhs)
{
    if (rhs.coeffs_.size() > coeffs_.size())
        coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t n = 0; n < rhs.coeffs_.size(); ++n)
        coeffs_[n] += rhs.coeffs_[n];
    return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& rhs)
{
    if (rhs.coeffs_.size() > coeffs_.size())
        coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t n = 0; n < rhs.coeffs_.size(); ++n)
        coeffs_[n] -= rhs.coeffs_[n];
    return *this;
}

PowerSeries& PowerSeries::operator*=(cplx s)
{
    for (auto& c : coeffs_)
        c *= s;
    return *this;
}

PowerSeries cauchy_product(const PowerSeries& a, const PowerSeries& b, std::size_t order)
{
    std::vector<cplx> out(order + 1);
    const std::size_t da = std::min(a.degree(), order);
    const std::size_t db = std::min(b.degree(), order);
    const auto ac = a.coeffs();
    const auto bc = b.coeffs();
    for (std::size_t i = 0; i <= da; ++i) {
        const cplx ai = ac[i];
        if (ai == cplx{})
            continue;
        const std::size_t jmax = std::min(db, order - i);
        for (std::size_t j = 0; j <= jmax; ++j)
            out[i + j] += ai * bc[j];
    }
    return PowerSeries(std::move(out));
}

PowerSeries power(const PowerSeries& f, unsigned k, std::size_t order)
{
    PowerSeries result = PowerSeries::constant(1.0, order);
    for (unsigned i = 0; i < k; ++i)
        result = cauchy_product(result, f, order);
    return result;
}

PowerSeries derivative(const PowerSeries& f)
{
    if (f.order() == 0)
        return PowerSeries::zero(0);
    std::vector<cplx> out(f.order());
    for (std::size_t n = 0; n < out.size(); ++n)
        out[n] = static_cast<double>(n + 1) * f[n + 1];
    return PowerSeries(std::move(out));
}

PowerSeries compose(const PowerSeries& f, const PowerSeries& phi, std::size_t order)
{
    if (std::abs(phi[0]) >= 1.0)
        throw DomainError("compose: |phi(0)| >= 1, the symbol leaves the disk");

    const std::size_t d = f.degree();
    PowerSeries acc = PowerSeries::constant(f[d], order);
    for (std::size_t n = d; n-- > 0;) {
        acc = cauchy_product(acc, phi, order);
        std::vector<cplx> v(acc.coeffs().begin(), acc.coeffs().end());
        v[0] += f[n];
        acc = PowerSeries(std::move(v));
    }
    return acc;
}

PowerSeries reciprocal(const PowerSeries& f, std::size_t order)
{
    const cplx f0 = f[0];
    if (f0 == cplx{})
        throw DomainError("reciprocal: constant term is zero");

    const cplx inv0 = 1.0 / f0;
    const std::size_t df = f.degree();
    std::vector<cplx> g(order + 1);
    g[0] = inv0;
    for (std::size_t k = 1; k <= order; ++k) {
        cplx s{};
        const std::size_t jmax = std::min(k, df);
        for (std::size_t j = 1; j <= jmax; ++j)
            s += f[j] * g[k - j];
        g[k] = -inv0 * s;
    }
    return PowerSeries(std::move(g));
}

cplx evaluate(const PowerSeries& f, cplx z)
{
    const auto c = f.coeffs();
    cplx acc{};
    for (std::size_t n = c.size(); n-- > 0;)
        acc = acc * z + c[n];
    return acc;
}

nlohmann::json complex_to_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

cplx complex_from_json(const nlohmann::json& j)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("complex value must be a number or a [re, im] pair");
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

nlohmann::json to_json(const PowerSeries& f)
{
    auto out = nlohmann::json::array();
    for (cplx c : f.coeffs())
        out.push_back(complex_to_json(c));
    return out;
}

PowerSeries series_from_json(const nlohmann::json& j)
{
    if (!j.is_array())
        throw std::invalid_argument("series must be a JSON array of [re, im] pairs");
    std::vector<cplx> v;
    v.reserve(j.size());
    for (const auto& e : j)
        v.push_back(complex_from_json(e));
    return PowerSeries(std::move(v));
}

} // namespace diskops
