#include "helmscat/opuc.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "helmscat/errors.hpp"

namespace helmscat {

namespace {

void check_disk(std::span<const Complex> r, const char* who) {
    for (const Complex& rj : r) {
        if (!(std::abs(rj) < 1.0))
            throw ValidationError(std::string(who) + " needs coefficients in the open unit disk");
    }
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), Complex(0.0, 0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        out[i] += b[i];
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty())
        return {};
    Poly out(a.size() + b.size() - 1, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    return out;
}

} // namespace

Complex poly_eval(const Poly& p, Complex z) {
    Complex acc(0.0, 0.0);
    for (std::size_t i = p.size(); i-- > 0;)
        acc = acc * z + p[i];
    return acc;
}

Poly dual(const Poly& p) {
    Poly out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        out[i] = std::conj(p[p.size() - 1 - i]);
    return out;
}

SzegoPolynomials szego_polynomials(std::span<const Complex> r) {
    check_disk(r, "szego_polynomials");
    SzegoPolynomials out;
    out.phi.reserve(r.size() + 1);
    out.psi.reserve(r.size() + 1);
    out.phi.push_back({Complex(1.0, 0.0)});
    out.psi.push_back({Complex(1.0, 0.0)});
    for (std::size_t j = 0; j < r.size(); ++j) {
        auto advance = [](const Poly& p, Complex coeff) {
            // z * p(z) - coeff * p*(z); degree grows by exactly one and the
            // result stays monic because |coeff| < 1.
            const Poly ps = dual(p);
            Poly next(p.size() + 1, Complex(0.0, 0.0));
            for (std::size_t i = 0; i < p.size(); ++i) {
                next[i + 1] += p[i];
                next[i] -= coeff * ps[i];
            }
            return next;
        };
        out.phi.push_back(advance(out.phi.back(), std::conj(r[j])));
        out.psi.push_back(advance(out.psi.back(), std::conj(-r[j])));
    }
    return out;
}

PolyMat2 matrix_product_polys(std::span<const Complex> r) {
    check_disk(r, "matrix_product_polys");
    // Seed matrix [1 1; -1 1].
    PolyMat2 acc{{Complex(1.0, 0.0)}, {Complex(1.0, 0.0)},
                 {Complex(-1.0, 0.0)}, {Complex(1.0, 0.0)}};
    for (const Complex& rj : r) {
        const Poly z{Complex(0.0, 0.0), Complex(1.0, 0.0)};
        const Poly rz{Complex(0.0, 0.0), rj};
        const Poly rc{std::conj(rj)};
        const Poly one{Complex(1.0, 0.0)};
        PolyMat2 next;
        next.m11 = poly_add(poly_mul(acc.m11, z), poly_mul(acc.m12, rc));
        next.m12 = poly_add(poly_mul(acc.m11, rz), poly_mul(acc.m12, one));
        next.m21 = poly_add(poly_mul(acc.m21, z), poly_mul(acc.m22, rc));
        next.m22 = poly_add(poly_mul(acc.m21, rz), poly_mul(acc.m22, one));
        acc = std::move(next);
    }
    return acc;
}

Complex g_from_polys(std::span<const Complex> r, Complex z) {
    check_disk(r, "g_from_polys");
    const SzegoPolynomials sz = szego_polynomials(r);
    const Complex phis = poly_eval(dual(sz.phi.back()), z);
    const Complex psis = poly_eval(dual(sz.psi.back()), z);
    const Complex den = psis + phis;
    if (den == Complex(0.0, 0.0))
        throw ValidationError("g_from_polys: z is a pole (outside the closed unit disk)");
    return (psis - phis) / den;
}

Complex herglotz_F(std::span<const Complex> r, Complex z) {
    const Complex g = g_from_polys(r, z);
    const Complex den = 1.0 - g;
    if (den == Complex(0.0, 0.0))
        throw ValidationError("herglotz_F: pole at this z");
    return (1.0 + g) / den;
}

std::vector<Complex> alpha_to_moments(std::span<const Complex> alpha) {
    std::vector<Complex> m(alpha.size() + 1);
    m[0] = Complex(1.0, 0.0);
    for (std::size_t j = 1; j < m.size(); ++j) {
        Complex acc(0.0, 0.0);
        for (std::size_t i = 1; i <= j; ++i)
            acc += alpha[i - 1] * m[j - i];
        m[j] = acc;
    }
    return m;
}

Complex moment_inner_product(std::span<const Complex> m, const Poly& p, const Poly& q) {
    if (m.empty())
        throw ValidationError("moment_inner_product needs at least the zeroth moment");
    if (p.empty() || q.empty())
        return Complex(0.0, 0.0);
    const std::size_t need = std::max(p.size(), q.size()) - 1;
    if (need >= m.size())
        throw ValidationError("moment_inner_product: not enough moments for these degrees");
    // <z^a, z^b> = m_{b-a} with m_{-k} = conj(m_k).
    Complex acc(0.0, 0.0);
    for (std::size_t a = 0; a < p.size(); ++a) {
        for (std::size_t b = 0; b < q.size(); ++b) {
            const Complex mom = (b >= a) ? m[b - a] : std::conj(m[a - b]);
            acc += p[a] * std::conj(q[b]) * mom;
        }
    }
    return acc;
}

// --- bivariate polynomials with exact rational coefficients ---------------

BivariatePoly BivariatePoly::constant(const Rational& v) {
    return monomial(0, 0, v);
}

BivariatePoly BivariatePoly::monomial(std::size_t i, std::size_t j, const Rational& v) {
    BivariatePoly out;
    if (v == 0)
        return out;
    out.rows_.assign(i + 1, {});
    out.rows_[i].assign(j + 1, Rational(0));
    out.rows_[i][j] = v;
    return out;
}

Rational BivariatePoly::coefficient(std::size_t i, std::size_t j) const {
    if (i >= rows_.size() || j >= rows_[i].size())
        return Rational(0);
    return rows_[i][j];
}

std::size_t BivariatePoly::degree_zeta() const {
    return rows_.empty() ? 0 : rows_.size() - 1;
}

std::size_t BivariatePoly::degree_zetabar() const {
    std::size_t d = 0;
    for (const auto& row : rows_)
        if (!row.empty())
            d = std::max(d, row.size() - 1);
    return d;
}

bool BivariatePoly::is_zero() const { return rows_.empty(); }

void BivariatePoly::trim() {
    for (auto& row : rows_)
        while (!row.empty() && row.back() == 0)
            row.pop_back();
    while (!rows_.empty() && rows_.back().empty())
        rows_.pop_back();
}

BivariatePoly BivariatePoly::d_zeta() const {
    BivariatePoly out;
    if (rows_.size() <= 1)
        return out;
    out.rows_.resize(rows_.size() - 1);
    for (std::size_t i = 1; i < rows_.size(); ++i) {
        out.rows_[i - 1].resize(rows_[i].size(), Rational(0));
        for (std::size_t j = 0; j < rows_[i].size(); ++j)
            out.rows_[i - 1][j] = rows_[i][j] * static_cast<int>(i);
    }
    out.trim();
    return out;
}

BivariatePoly BivariatePoly::d_zetabar() const {
    BivariatePoly out;
    out.rows_.resize(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].size() <= 1)
            continue;
        out.rows_[i].resize(rows_[i].size() - 1, Rational(0));
        for (std::size_t j = 1; j < rows_[i].size(); ++j)
            out.rows_[i][j - 1] = rows_[i][j] * static_cast<int>(j);
    }
    out.trim();
    return out;
}

BivariatePoly BivariatePoly::operator+(const BivariatePoly& other) const {
    BivariatePoly out;
    out.rows_.resize(std::max(rows_.size(), other.rows_.size()));
    for (std::size_t i = 0; i < out.rows_.size(); ++i) {
        const std::size_t na = i < rows_.size() ? rows_[i].size() : 0;
        const std::size_t nb = i < other.rows_.size() ? other.rows_[i].size() : 0;
        out.rows_[i].assign(std::max(na, nb), Rational(0));
        for (std::size_t j = 0; j < na; ++j)
            out.rows_[i][j] += rows_[i][j];
        for (std::size_t j = 0; j < nb; ++j)
            out.rows_[i][j] += other.rows_[i][j];
    }
    out.trim();
    return out;
}

BivariatePoly BivariatePoly::operator*(const BivariatePoly& other) const {
    BivariatePoly out;
    if (is_zero() || other.is_zero())
        return out;
    out.rows_.assign(degree_zeta() + other.degree_zeta() + 1, {});
    const std::size_t cols = degree_zetabar() + other.degree_zetabar() + 1;
    for (auto& row : out.rows_)
        row.assign(cols, Rational(0));
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (std::size_t j = 0; j < rows_[i].size(); ++j) {
            if (rows_[i][j] == 0)
                continue;
            for (std::size_t k = 0; k < other.rows_.size(); ++k)
                for (std::size_t l = 0; l < other.rows_[k].size(); ++l)
                    out.rows_[i + k][j + l] += rows_[i][j] * other.rows_[k][l];
        }
    out.trim();
    return out;
}

BivariatePoly BivariatePoly::scaled(const Rational& v) const {
    BivariatePoly out;
    if (v == 0)
        return out;
    out.rows_ = rows_;
    for (auto& row : out.rows_)
        for (auto& c : row)
            c *= v;
    return out;
}

Complex BivariatePoly::eval(Complex zeta) const {
    const Complex zbar = std::conj(zeta);
    Complex acc(0.0, 0.0);
    Complex zpow(1.0, 0.0);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        Complex row_acc(0.0, 0.0);
        for (std::size_t j = rows_[i].size(); j-- > 0;)
            row_acc = row_acc * zbar + Complex(rows_[i][j].convert_to<double>(), 0.0);
        acc += zpow * row_acc;
        zpow *= zeta;
    }
    return acc;
}

BivariatePoly psi_polynomial(int p, int q) {
    if (p < 0 || q < 0)
        return BivariatePoly(); // zero by convention
    if (q == 0) // pure power: psi^(p,0) = zeta^p, psi^(0,0) = 1
        return BivariatePoly::monomial(static_cast<std::size_t>(p), 0, Rational(1));
    if (p == 0)
        return BivariatePoly(); // p = 0 < q vanishes

    // (1 - zeta*zetabar) and its (p+q-1)-st power.
    const BivariatePoly base =
        BivariatePoly::constant(Rational(1)) + BivariatePoly::monomial(1, 1, Rational(-1));
    BivariatePoly power = BivariatePoly::constant(Rational(1));
    for (int i = 0; i < p + q - 1; ++i)
        power = power * base;

    BivariatePoly deriv = power;
    for (int i = 0; i < q; ++i)
        deriv = deriv.d_zeta();
    for (int i = 0; i < p; ++i)
        deriv = deriv.d_zetabar();

    boost::multiprecision::cpp_int fact = 1;
    for (int i = 2; i <= p + q - 1; ++i)
        fact *= i;
    Rational scale = Rational(1) / (Rational(q) * Rational(fact));
    if (p % 2 != 0)
        scale = -scale;
    return (base * deriv).scaled(scale);
}

Complex psi_eval(int p, int q, Complex zeta) {
    // The polynomials are tiny but rebuilding them per call would dominate
    // tight loops; memoize per (p, q).
    static std::map<std::pair<int, int>, BivariatePoly> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({p, q});
    if (it == cache.end())
        it = cache.emplace(std::pair<int, int>{p, q}, psi_polynomial(p, q)).first;
    return it->second.eval(zeta);
}

Complex fourier_coefficient_product(std::span<const int> k, std::span<const Complex> r) {
    if (k.size() != r.size())
        throw ValidationError("fourier_coefficient_product needs one index per coefficient");
    if (k.empty())
        throw ValidationError("fourier_coefficient_product needs a nonempty multi-index");
    if (k[0] != 1)
        throw ValidationError("fourier_coefficient_product requires k_1 == 1");
    for (int kj : k) {
        if (kj < 0)
            throw ValidationError("fourier_coefficient_product requires k_j >= 0");
    }
    check_disk(r, "fourier_coefficient_product");
    Complex acc(1.0, 0.0);
    for (std::size_t j = 0; j < k.size(); ++j) {
        const int next = (j + 1 < k.size()) ? k[j + 1] : 0; // k_{n+1} = 0
        acc *= psi_eval(k[j], next, r[j]);
    }
    return acc;
}

} // namespace helmscat
