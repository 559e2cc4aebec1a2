#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "helmscat/medium.hpp"

namespace helmscat {

// Dense univariate polynomial, ascending coefficients; coeffs.back() is the
// leading coefficient.  The zero polynomial is the empty vector.
using Poly = std::vector<Complex>;

Complex poly_eval(const Poly& p, Complex z);

// Reversed-conjugated coefficients: for p of degree d, the dual has
// coefficients conj(p[d - k]).  Applying it twice gives p back.
Poly dual(const Poly& p);

// First- and second-kind monic orthogonal polynomials on the unit circle for
// recursion coefficients r = (r_1..r_n), |r_j| < 1:
//   Phi_{j+1}(z) = z * Phi_j(z) - conj(r_{j+1}) * Phi_j*(z),   Phi_0 = 1,
// and Psi likewise with coefficients -r_j.  phi[j] / psi[j] has degree j.
struct SzegoPolynomials {
    std::vector<Poly> phi;
    std::vector<Poly> psi;
};

SzegoPolynomials szego_polynomials(std::span<const Complex> r);

// 2x2 matrix with polynomial entries, row-major.
struct PolyMat2 {
    Poly m11, m12, m21, m22;
};

// Symbolic transfer-matrix product
//   [1 1; -1 1] * prod_j [z  r_j z; conj(r_j)  1]
// whose entries are exactly [ Psi_n  Psi_n* ; -Phi_n  Phi_n* ].
PolyMat2 matrix_product_polys(std::span<const Complex> r);

// Value of the one-variable reduction g(z) = (Psi_n*(z) - Phi_n*(z)) /
// (Psi_n*(z) + Phi_n*(z)); the denominator has no zeros on the closed disk.
// g equals the reflection fold eval_f evaluated on the diagonal (z,..,z).
Complex g_from_polys(std::span<const Complex> r, Complex z);

// Herglotz transform F(z) = (1 + g(z)) / (1 - g(z)): positive real part on
// the open disk, F(0) = 1.  Its Taylor coefficients are 1, 2*m_1, 2*m_2, ...
// with m_j the conjugate moments of the orthogonality measure.
Complex herglotz_F(std::span<const Complex> r, Complex z);

// Moments from the Taylor coefficients alpha = (alpha_1..alpha_n) of g:
//   m_0 = 1,   m_j = sum_{i=1..j} alpha_i * m_{j-i}.
// Returns (m_0..m_n).  All |m_j| <= 1 for coefficients of a Schur function.
std::vector<Complex> alpha_to_moments(std::span<const Complex> alpha);

// Sesquilinear moment inner product <p, q> = sum_{a,b} p_a conj(q_b) m_{b-a}
// with m_{-k} := conj(m_k); this is <p, q> in L^2(mu) when m are the
// conjugate moments of mu.  Requires moments up to max(deg p, deg q).
Complex moment_inner_product(std::span<const Complex> m, const Poly& p, const Poly& q);

using Rational = boost::multiprecision::cpp_rational;

// Polynomial in the two independent variables (zeta, zetabar) with exact
// rational coefficients; coefficient(i, j) multiplies zeta^i * zetabar^j.
class BivariatePoly {
public:
    BivariatePoly() = default; // zero polynomial

    static BivariatePoly constant(const Rational& v);
    static BivariatePoly monomial(std::size_t i, std::size_t j, const Rational& v);

    // Zero for indices beyond the stored degree.
    Rational coefficient(std::size_t i, std::size_t j) const;
    std::size_t degree_zeta() const;
    std::size_t degree_zetabar() const;
    bool is_zero() const;

    BivariatePoly d_zeta() const;    // formal derivative in zeta
    BivariatePoly d_zetabar() const; // formal derivative in zetabar

    BivariatePoly operator+(const BivariatePoly& other) const;
    BivariatePoly operator*(const BivariatePoly& other) const;
    BivariatePoly scaled(const Rational& v) const;

    // Evaluate with zetabar bound to conj(zeta).
    Complex eval(Complex zeta) const;

private:
    void trim();
    // rows_[i][j] multiplies zeta^i * zetabar^j; trailing zero rows/columns
    // are trimmed so degree queries are exact.
    std::vector<std::vector<Rational>> rows_;
};

// Weight polynomial psi^(p,q) built by exact symbolic differentiation:
//   psi^(p,q)(zeta) = (-1)^p / (q * (p+q-1)!) * (1 - zeta*zetabar)
//                     * d^p/d zetabar^p d^q/d zeta^q (1 - zeta*zetabar)^(p+q-1)
// for min(p,q) >= 1, with the degenerate cases
//   psi^(p,q) = 0 for min(p,q) < 0 or p = 0 < q,
//   psi^(p,0) = zeta^p for p >= 0  (so psi^(0,0) = 1).
BivariatePoly psi_polynomial(int p, int q);

// psi^(p,q) evaluated at zeta (zetabar = conj(zeta)).
Complex psi_eval(int p, int q, Complex zeta);

// Product formula for the Fourier coefficient of the multivariate fold
// eval_f at multi-index k = (k_1..k_n): prod_j psi^(k_j, k_{j+1})(r_j) with
// k_{n+1} = 0.  Requires k.size() == r.size(), k_1 == 1, k_j >= 0.
Complex fourier_coefficient_product(std::span<const int> k, std::span<const Complex> r);

} // namespace helmscat
