#include "symdec/symtensor.hpp"

#include <cmath>
#include <mutex>

#include "symdec/simd/kernels.hpp"

namespace symdec {

namespace {

struct WeightCache {
  std::vector<double> weights;
  std::vector<double> sqrt_weights;
};

const WeightCache& weight_cache(std::size_t n, int m) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, int>, std::unique_ptr<WeightCache>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, m);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  auto space = monomial_space(n, m);
  auto wc = std::make_unique<WeightCache>();
  wc->weights.reserve(space->size());
  for (const auto& a : space->list()) {
    const double w = multinomial(m, a);
    wc->weights.push_back(w);
    wc->sqrt_weights.push_back(std::sqrt(w));
  }
  return *cache.emplace(key, std::move(wc)).first->second;
}

}  // namespace

// ---------------------------------------------------------------- SymTensor

SymTensor::SymTensor(std::size_t n, int m)
    : n_(n), m_(m), space_(monomial_space(n, m)), coeffs_(space_->size(), cplx(0.0)) {
  if (m < 0) throw DomainError("tensor order must be nonnegative");
}

SymTensor::SymTensor(std::size_t n, int m, std::vector<cplx> coeffs)
    : n_(n), m_(m), space_(monomial_space(n, m)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != space_->size())
    throw DimensionError("expected " + std::to_string(space_->size()) + " coefficients, got " +
                         std::to_string(coeffs_.size()));
}

std::vector<cplx> SymTensor::uptri() const {
  std::vector<cplx> out;
  out.reserve(coeffs_.size());
  for (const auto& t : uptri_tuples(n_, m_)) out.push_back(at(tuple_to_power(t, n_)));
  return out;
}

void SymTensor::check_same_shape(const SymTensor& other) const {
  if (other.n_ != n_ || other.m_ != m_) throw DimensionError("tensor shape mismatch");
}

SymTensor SymTensor::operator+(const SymTensor& other) const {
  check_same_shape(other);
  std::vector<cplx> c(coeffs_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += other.coeffs_[i];
  return SymTensor(n_, m_, std::move(c));
}

SymTensor SymTensor::operator-(const SymTensor& other) const {
  check_same_shape(other);
  std::vector<cplx> c(coeffs_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= other.coeffs_[i];
  return SymTensor(n_, m_, std::move(c));
}

SymTensor SymTensor::operator*(cplx s) const {
  std::vector<cplx> c(coeffs_);
  for (auto& v : c) v *= s;
  return SymTensor(n_, m_, std::move(c));
}

// --------------------------------------------------------------------- Poly

Poly Poly::constant(std::size_t n, cplx c) {
  Poly p(n);
  p.add_term(MonomialPower(n), c);
  return p;
}

Poly Poly::monomial(const MonomialPower& alpha, cplx c) {
  Poly p(alpha.num_vars());
  p.add_term(alpha, c);
  return p;
}

Poly Poly::variable(std::size_t n, std::size_t i) {
  if (i < 1 || i > n) throw IndexError("variable index out of range");
  return monomial(MonomialPower::unit(n, i - 1));
}

int Poly::degree() const {
  int d = -1;
  for (const auto& [a, c] : terms_) d = std::max(d, a.degree());
  return d;
}

cplx Poly::coeff(const MonomialPower& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? cplx(0.0) : it->second;
}

void Poly::add_term(const MonomialPower& alpha, cplx c) {
  if (alpha.num_vars() != n_) throw DimensionError("monomial variable count mismatch");
  auto [it, inserted] = terms_.emplace(alpha, c);
  if (!inserted) it->second += c;
  if (it->second == cplx(0.0)) terms_.erase(it);
}

Poly Poly::operator+(const Poly& other) const {
  Poly p(*this);
  for (const auto& [a, c] : other.terms_) p.add_term(a, c);
  return p;
}

Poly Poly::operator-(const Poly& other) const {
  Poly p(*this);
  for (const auto& [a, c] : other.terms_) p.add_term(a, -c);
  return p;
}

Poly Poly::operator*(const Poly& other) const {
  Poly p(n_);
  for (const auto& [a, c] : terms_)
    for (const auto& [b, d] : other.terms_) p.add_term(a + b, c * d);
  return p;
}

Poly Poly::operator*(cplx s) const {
  Poly p(n_);
  for (const auto& [a, c] : terms_) p.add_term(a, c * s);
  return p;
}

Poly Poly::times_monomial(const MonomialPower& beta) const {
  Poly p(n_);
  for (const auto& [a, c] : terms_) p.add_term(a + beta, c);
  return p;
}

cplx Poly::evaluate(std::span<const cplx> x) const {
  if (x.size() != n_) throw DimensionError("evaluation point has wrong length");
  cplx s = 0.0;
  for (const auto& [a, c] : terms_) {
    cplx t = c;
    for (std::size_t j = 0; j < n_; ++j)
      for (int e = 0; e < a[j]; ++e) t *= x[j];
    s += t;
  }
  return s;
}

// ---------------------------------------------------------------- free ops

std::vector<std::vector<int>> uptri_tuples(std::size_t n, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(m), 0);
  if (m == 0) {
    out.push_back({});
    return out;
  }
  const int top = static_cast<int>(n);
  while (true) {
    out.push_back(cur);
    // next nondecreasing tuple
    int pos = m - 1;
    while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == top) --pos;
    if (pos < 0) break;
    const int v = cur[static_cast<std::size_t>(pos)] + 1;
    for (int q = pos; q < m; ++q) cur[static_cast<std::size_t>(q)] = v;
  }
  return out;
}

MonomialPower tuple_to_power(std::span<const int> tuple, std::size_t n) {
  std::vector<int> e(n, 0);
  for (int i : tuple) {
    if (i < 0 || static_cast<std::size_t>(i) > n)
      throw IndexError("tensor index " + std::to_string(i) + " out of range 0.." +
                       std::to_string(n));
    if (i > 0) ++e[static_cast<std::size_t>(i - 1)];
  }
  return MonomialPower(std::move(e));
}

SymTensor from_uptri(std::size_t n, int m, std::span<const cplx> values) {
  const std::size_t expected = binomial(n + static_cast<std::size_t>(m), static_cast<std::size_t>(m));
  if (values.size() != expected)
    throw DimensionError("uptri needs " + std::to_string(expected) + " values, got " +
                         std::to_string(values.size()));
  auto space = monomial_space(n, m);
  std::vector<cplx> coeffs(space->size());
  std::size_t k = 0;
  for (const auto& t : uptri_tuples(n, m)) coeffs[space->index(tuple_to_power(t, n))] = values[k++];
  return SymTensor(n, m, std::move(coeffs));
}

cplx entry_by_tuple(const SymTensor& F, std::span<const int> tuple) {
  if (tuple.size() != static_cast<std::size_t>(F.order()))
    throw DimensionError("index tuple length must equal the tensor order");
  return F.at(tuple_to_power(tuple, F.num_vars()));
}

SymTensor from_rank_one_sum(std::size_t n, int m, std::span<const CVector> vectors) {
  for (const auto& u : vectors)
    if (static_cast<std::size_t>(u.size()) != n + 1)
      throw DimensionError("rank-one vector must have length n+1");
  SymTensor zero(n, m);
  if (vectors.empty()) return zero;
  PowerTable table(vectors, n, m);
  const auto& kern = simd::kernels();
  std::vector<double> ones(vectors.size(), 1.0), zeros(vectors.size(), 0.0);
  std::vector<cplx> coeffs(table.rows());
  for (std::size_t k = 0; k < table.rows(); ++k) {
    double re, im;
    kern.cdotu(table.row_re(k), table.row_im(k), ones.data(), zeros.data(), table.cols(), &re, &im);
    coeffs[k] = {re, im};
  }
  return SymTensor(n, m, std::move(coeffs));
}

SymTensor from_form(std::size_t n, int m, const Poly& form) {
  if (form.num_vars() != n) throw DimensionError("form has the wrong number of variables");
  if (form.degree() > m) throw DomainError("form degree exceeds m");
  SymTensor F(n, m);
  std::vector<cplx> c(F.size(), 0.0);
  for (const auto& [alpha, coef] : form.terms()) c[F.space().index(alpha)] = coef / multinomial(m, alpha);
  return SymTensor(n, m, std::move(c));
}

Poly to_form(const SymTensor& F) {
  Poly p(F.num_vars());
  for (std::size_t k = 0; k < F.size(); ++k)
    p.add_term(F.space()[k], F[k] * multinomial(F.order(), F.space()[k]));
  return p;
}

cplx pairing(const Poly& p, const SymTensor& F) {
  if (p.num_vars() != F.num_vars()) throw DimensionError("polynomial/tensor variable mismatch");
  if (p.degree() > F.order()) throw DomainError("polynomial degree exceeds tensor order");
  cplx s = 0.0;
  for (const auto& [a, c] : p.terms()) s += c * F.at(a);
  return s;
}

SymTensor apolar_apply(const Poly& p, const SymTensor& F, std::optional<int> k) {
  if (p.num_vars() != F.num_vars()) throw DimensionError("polynomial/tensor variable mismatch");
  const int deg = std::max(p.degree(), 0);
  const int kk = k.value_or(deg);
  if (kk < deg) throw DomainError("homogenization degree below polynomial degree");
  if (kk > F.order()) throw DomainError("apolar action needs deg(p) <= m");
  const std::size_t n = F.num_vars();
  const int out_order = F.order() - kk;
  auto out_space = monomial_space(n, out_order);
  std::vector<cplx> coeffs(out_space->size(), cplx(0.0));
  for (std::size_t b = 0; b < out_space->size(); ++b) {
    const auto& beta = (*out_space)[b];
    cplx s = 0.0;
    for (const auto& [a, c] : p.terms()) s += c * F.at(a + beta);
    coeffs[b] = s;
  }
  return SymTensor(n, out_order, std::move(coeffs));
}

const std::vector<double>& sqrt_multiplicities(std::size_t n, int m) {
  return weight_cache(n, m).sqrt_weights;
}

double norm(const SymTensor& F) {
  const auto& w = weight_cache(F.num_vars(), F.order()).weights;
  std::vector<double> re(F.size()), im(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) {
    re[i] = F[i].real();
    im[i] = F[i].imag();
  }
  return std::sqrt(simd::kernels().weighted_abs2(re.data(), im.data(), w.data(), F.size()));
}

SymTensor unitary_transform(const SymTensor& F, const CMatrix& Q) {
  const std::size_t dim = F.dim();
  if (static_cast<std::size_t>(Q.rows()) != dim || static_cast<std::size_t>(Q.cols()) != dim)
    throw DimensionError("transform must be (n+1)x(n+1)");
  Eigen::JacobiSVD<CMatrix> svd(Q);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= 1e-14 * sv(0)) throw DomainError("transform matrix is singular");

  const int m = F.order();
  std::size_t total = 1;
  for (int k = 0; k < m; ++k) total *= dim;

  // Full cube, index tuple read as base-(n+1) digits with i1 most significant.
  std::vector<cplx> cube(total);
  std::vector<int> tuple(static_cast<std::size_t>(m));
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (int k = m - 1; k >= 0; --k) {
      tuple[static_cast<std::size_t>(k)] = static_cast<int>(rest % dim);
      rest /= dim;
    }
    cube[flat] = F.at(tuple_to_power(tuple, F.num_vars()));
  }

  std::vector<cplx> next(total);
  std::size_t stride = 1;
  for (int mode = m - 1; mode >= 0; --mode) {
    for (std::size_t flat = 0; flat < total; ++flat) {
      const std::size_t i = (flat / stride) % dim;
      const std::size_t base = flat - i * stride;
      cplx s = 0.0;
      for (std::size_t j = 0; j < dim; ++j) s += Q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * cube[base + j * stride];
      next[flat] = s;
    }
    cube.swap(next);
    stride *= dim;
  }

  const auto& space = F.space();
  std::vector<cplx> coeffs(space.size());
  for (std::size_t a = 0; a < space.size(); ++a) {
    const auto& alpha = space[a];
    std::size_t flat = 0;
    auto push = [&](std::size_t idx) { flat = flat * dim + idx; };
    for (int r = 0; r < m - alpha.degree(); ++r) push(0);
    for (std::size_t j = 0; j < F.num_vars(); ++j)
      for (int r = 0; r < alpha[j]; ++r) push(j + 1);
    coeffs[a] = cube[flat];
  }
  return SymTensor(F.num_vars(), m, std::move(coeffs));
}

// --------------------------------------------------------------- PowerTable

PowerTable::PowerTable(std::span<const CVector> points, std::size_t n, int degree)
    : cols_(points.size()) {
  auto space = monomial_space(n, degree);
  rows_ = space->size();
  re_.assign(rows_ * cols_, 0.0);
  im_.assign(rows_ * cols_, 0.0);
  if (cols_ == 0) return;
  const auto& kern = simd::kernels();

  // Coordinates as split rows: coord[j][i] = points[i](j).
  std::vector<double> cr((n + 1) * cols_), ci((n + 1) * cols_);
  for (std::size_t i = 0; i < cols_; ++i) {
    if (static_cast<std::size_t>(points[i].size()) != n + 1)
      throw DimensionError("point must have length n+1");
    for (std::size_t j = 0; j <= n; ++j) {
      cr[j * cols_ + i] = points[i](static_cast<Eigen::Index>(j)).real();
      ci[j * cols_ + i] = points[i](static_cast<Eigen::Index>(j)).imag();
    }
  }

  // Powers of the homogenizing coordinate u_0^e, e = 0..degree.
  const std::size_t deg = static_cast<std::size_t>(degree);
  std::vector<double> pr((deg + 1) * cols_, 0.0), pi((deg + 1) * cols_, 0.0);
  for (std::size_t i = 0; i < cols_; ++i) pr[i] = 1.0;
  for (std::size_t e = 1; e <= deg; ++e)
    kern.cmul(pr.data() + (e - 1) * cols_, pi.data() + (e - 1) * cols_, cr.data(), ci.data(),
              pr.data() + e * cols_, pi.data() + e * cols_, cols_);

  // Dehomogenized products x^alpha via the parent recurrence.
  for (std::size_t i = 0; i < cols_; ++i) re_[i] = 1.0;
  for (std::size_t k = 1; k < rows_; ++k) {
    const std::size_t p = space->parent(k);
    const std::size_t v = space->var(k) + 1;
    kern.cmul(re_.data() + p * cols_, im_.data() + p * cols_, cr.data() + v * cols_,
              ci.data() + v * cols_, re_.data() + k * cols_, im_.data() + k * cols_, cols_);
  }
  // Rows are filled in increasing degree, so scale by u_0^{degree-|alpha|} last.
  for (std::size_t k = 0; k < rows_; ++k) {
    const std::size_t e = deg - static_cast<std::size_t>((*space)[k].degree());
    if (e == 0) continue;
    kern.cmul(re_.data() + k * cols_, im_.data() + k * cols_, pr.data() + e * cols_,
              pi.data() + e * cols_, re_.data() + k * cols_, im_.data() + k * cols_, cols_);
  }
}

}  // namespace symdec
