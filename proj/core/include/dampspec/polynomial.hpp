#pragma once

#include <complex>
#include <vector>

namespace dampspec {

using cplx = std::complex<double>;

/// Polynomial in one complex variable, coefficients in ascending degree.
class ComplexPolynomial {
public:
    ComplexPolynomial() = default;
    /// Trailing zero coefficients are trimmed; throws if all are zero.
    explicit ComplexPolynomial(std::vector<cplx> coefficients);

    const std::vector<cplx>& coefficients() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const cplx& leading() const noexcept { return coeffs_.back(); }
    bool has_real_coefficients() const noexcept;

    cplx operator()(cplx z) const noexcept;
    /// Value and first derivative by Horner.
    void evaluate(cplx z, cplx& value, cplx& derivative) const noexcept;
    /// Value, first and second derivative by Horner.
    void evaluate(cplx z, cplx& value, cplx& d1, cplx& d2) const noexcept;
    /// sum_i |c_i| |z|^i, the natural size of the rounding error of p(z).
    double magnitude_scale(cplx z) const noexcept;

    friend ComplexPolynomial operator+(const ComplexPolynomial& a, const ComplexPolynomial& b);
    friend ComplexPolynomial operator-(const ComplexPolynomial& a, const ComplexPolynomial& b);
    friend ComplexPolynomial operator*(const ComplexPolynomial& a, const ComplexPolynomial& b);

    ComplexPolynomial pow(int exponent) const;

private:
    std::vector<cplx> coeffs_{cplx{1.0}};
};

/// Roots with their normalised residuals |p(r)| / max(|lead| max(1,|r|)^deg, sum |c_i||r|^i).
struct RootSet {
    std::vector<cplx> roots;
    std::vector<double> residuals;
    /// True where the root sits within 1e-6 of another one and was polished
    /// with the multiplicity-2 Newton step.
    std::vector<bool> cluster;
};

double normalized_residual(const ComplexPolynomial& p, cplx root);

/// All roots by Aberth–Ehrlich simultaneous iteration, each finished with one
/// Newton step. Throws NumericalError ("roots_not_converged") if the
/// iteration budget is exhausted or a residual stays above 1e-10 (1e-6 for
/// clustered roots).
RootSet roots_all(const ComplexPolynomial& poly);

} // namespace dampspec
