#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "symdec/monomial.hpp"
#include "symdec/types.hpp"

namespace symdec {

/// Order-m symmetric tensor on C^{n+1}, stored by monomial power alpha in N^n_m
/// (grlex order). F_alpha equals F_{i1...im} whenever x_{i1}...x_{im} = x^alpha
/// after setting x_0 = 1.
class SymTensor {
 public:
  SymTensor() = default;
  SymTensor(std::size_t n, int m);
  SymTensor(std::size_t n, int m, std::vector<cplx> coeffs);

  std::size_t num_vars() const { return n_; }
  std::size_t dim() const { return n_ + 1; }
  int order() const { return m_; }
  std::size_t size() const { return coeffs_.size(); }

  const std::vector<cplx>& coeffs() const { return coeffs_; }
  const MonomialSpace& space() const { return *space_; }

  cplx operator[](std::size_t i) const { return coeffs_[i]; }
  cplx at(const MonomialPower& alpha) const { return coeffs_[space_->index(alpha)]; }

  /// Upper-triangular entries, i1 <= ... <= im, lexicographic in the tuple.
  std::vector<cplx> uptri() const;

  SymTensor operator+(const SymTensor& other) const;
  SymTensor operator-(const SymTensor& other) const;
  SymTensor operator*(cplx s) const;

 private:
  void check_same_shape(const SymTensor& other) const;

  std::size_t n_ = 0;
  int m_ = 0;
  std::shared_ptr<const MonomialSpace> space_;
  std::vector<cplx> coeffs_;
};

inline SymTensor operator*(cplx s, const SymTensor& t) { return t * s; }

/// Polynomial in x = (x_1..x_n) with complex coefficients; zero terms are never stored.
class Poly {
 public:
  explicit Poly(std::size_t n = 0) : n_(n) {}

  static Poly constant(std::size_t n, cplx c);
  static Poly monomial(const MonomialPower& alpha, cplx c = 1.0);
  /// Variable x_i, 1-based as in the dehomogenized ring.
  static Poly variable(std::size_t n, std::size_t i);

  std::size_t num_vars() const { return n_; }
  /// -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return terms_.empty(); }
  cplx coeff(const MonomialPower& alpha) const;
  const std::map<MonomialPower, cplx, GrlexLess>& terms() const { return terms_; }

  void add_term(const MonomialPower& alpha, cplx c);

  Poly operator+(const Poly& other) const;
  Poly operator-(const Poly& other) const;
  Poly operator*(const Poly& other) const;
  Poly operator*(cplx s) const;
  Poly times_monomial(const MonomialPower& beta) const;

  cplx evaluate(std::span<const cplx> x) const;

 private:
  std::size_t n_;
  std::map<MonomialPower, cplx, GrlexLess> terms_;
};

/// All nondecreasing index tuples 0 <= i1 <= ... <= im <= n in lexicographic order.
std::vector<std::vector<int>> uptri_tuples(std::size_t n, int m);

/// alpha_j counts occurrences of j >= 1 in the tuple; index 0 is the homogenizing slot.
MonomialPower tuple_to_power(std::span<const int> tuple, std::size_t n);

SymTensor from_uptri(std::size_t n, int m, std::span<const cplx> values);

cplx entry_by_tuple(const SymTensor& F, std::span<const int> tuple);

/// sum_i u_i^{(x)m}; every vector has length n+1.
SymTensor from_rank_one_sum(std::size_t n, int m, std::span<const CVector> vectors);

/// Tensor of the degree-m form whose coefficient of x_0^{m-|alpha|} x^alpha is
/// form.coeff(alpha): F_alpha = coeff / multinomial(m, alpha).
SymTensor from_form(std::size_t n, int m, const Poly& form);

/// Inverse of from_form.
Poly to_form(const SymTensor& F);

/// <p, F> = sum_alpha p_alpha F_alpha.
cplx pairing(const Poly& p, const SymTensor& F);

/// The order-(m-k) tensor ((m-k)!/m!) tensor(p~ o F), where p~ is p homogenized to
/// degree k (k defaults to deg p). Entry beta equals sum_alpha p_alpha F_{alpha+beta}.
SymTensor apolar_apply(const Poly& p, const SymTensor& F, std::optional<int> k = std::nullopt);

/// Frobenius norm over the full (n+1)^m index cube.
double norm(const SymTensor& F);

/// L_Q(F), with L_Q(sum u_i^{(x)m}) = sum (Q u_i)^{(x)m}.
SymTensor unitary_transform(const SymTensor& F, const CMatrix& Q);

/// Square roots of the index-cube multiplicities m!/theta!, one per coefficient.
/// Multiplying coefficients by these turns the cube norm into a plain 2-norm.
const std::vector<double>& sqrt_multiplicities(std::size_t n, int m);

/// Values u^theta for |theta| = degree, for a batch of points u in C^{n+1}.
/// Rows follow N^n_degree (theta = (degree-|alpha|, alpha)), columns follow points.
class PowerTable {
 public:
  PowerTable(std::span<const CVector> points, std::size_t n, int degree);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  cplx operator()(std::size_t row, std::size_t col) const {
    return {re_[row * cols_ + col], im_[row * cols_ + col]};
  }
  const double* row_re(std::size_t row) const { return re_.data() + row * cols_; }
  const double* row_im(std::size_t row) const { return im_.data() + row * cols_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> re_;
  std::vector<double> im_;
};

}  // namespace symdec
