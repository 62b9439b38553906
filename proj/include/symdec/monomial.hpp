#pragma once

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace symdec {

/// Exponent vector alpha in N^n, standing for x^alpha = x_1^a_1 ... x_n^a_n.
class MonomialPower {
 public:
  MonomialPower() = default;
  explicit MonomialPower(std::size_t n) : exps_(n, 0) {}
  explicit MonomialPower(std::vector<int> exps);
  MonomialPower(std::initializer_list<int> exps);

  static MonomialPower unit(std::size_t n, std::size_t i);

  std::size_t num_vars() const { return exps_.size(); }
  int degree() const { return degree_; }
  int operator[](std::size_t i) const { return exps_[i]; }
  std::span<const int> exponents() const { return exps_; }

  MonomialPower operator+(const MonomialPower& other) const;
  // Requires other | *this.
  MonomialPower operator-(const MonomialPower& other) const;
  bool divides(const MonomialPower& other) const;

  bool operator==(const MonomialPower& other) const { return exps_ == other.exps_; }

  std::string to_string() const;

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

/// Graded order: lower degree first; within a degree, lexicographically larger
/// exponent vectors first (1, x1, x2, x1^2, x1x2, x2^2, ...).
bool grlex_less(const MonomialPower& a, const MonomialPower& b);

struct GrlexLess {
  bool operator()(const MonomialPower& a, const MonomialPower& b) const {
    return grlex_less(a, b);
  }
};

struct MonomialHash {
  std::size_t operator()(const MonomialPower& a) const;
};

/// All monomials of degree exactly d in n variables, in grlex order.
std::vector<MonomialPower> monomials_of_degree(std::size_t n, int d);

/// N^n_d = { alpha : |alpha| <= d } in grlex order, with index lookup and the
/// recurrence (parent, var) such that x^alpha = x^parent * x_var.
class MonomialSpace {
 public:
  MonomialSpace(std::size_t n, int max_degree);

  std::size_t num_vars() const { return n_; }
  int max_degree() const { return d_; }
  std::size_t size() const { return list_.size(); }

  const MonomialPower& operator[](std::size_t i) const { return list_[i]; }
  const std::vector<MonomialPower>& list() const { return list_; }

  // Throws IndexError for monomials outside the space.
  std::size_t index(const MonomialPower& a) const;
  // -1 if absent.
  long find(const MonomialPower& a) const;

  // For i > 0, x^list[i] = x^list[parent(i)] * x_{var(i)}; var is 0-based.
  std::size_t parent(std::size_t i) const { return parent_[i]; }
  std::size_t var(std::size_t i) const { return var_[i]; }

  // Number of members with degree <= d.
  std::size_t count_up_to(int d) const;

 private:
  std::size_t n_;
  int d_;
  std::vector<MonomialPower> list_;
  std::unordered_map<MonomialPower, std::size_t, MonomialHash> lookup_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> var_;
  std::vector<std::size_t> grade_end_;
};

/// Shared, cached instance (thread-safe).
std::shared_ptr<const MonomialSpace> monomial_space(std::size_t n, int max_degree);

/// Binomial coefficient as a size_t (exact for the sizes used here).
std::size_t binomial(std::size_t n, std::size_t k);

/// m! / (theta_0! alpha_1! ... alpha_n!) with theta_0 = m - |alpha|.
double multinomial(int m, const MonomialPower& alpha);

}  // namespace symdec
