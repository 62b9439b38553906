#include "symdec/monomial.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "symdec/types.hpp"

namespace symdec {

MonomialPower::MonomialPower(std::vector<int> exps) : exps_(std::move(exps)) {
  for (int e : exps_) {
    if (e < 0) throw DomainError("negative exponent in monomial power");
    degree_ += e;
  }
}

MonomialPower::MonomialPower(std::initializer_list<int> exps)
    : MonomialPower(std::vector<int>(exps)) {}

MonomialPower MonomialPower::unit(std::size_t n, std::size_t i) {
  std::vector<int> e(n, 0);
  e.at(i) = 1;
  return MonomialPower(std::move(e));
}

MonomialPower MonomialPower::operator+(const MonomialPower& other) const {
  if (other.num_vars() != num_vars()) throw DimensionError("monomial variable count mismatch");
  std::vector<int> e(exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exps_[i];
  return MonomialPower(std::move(e));
}

MonomialPower MonomialPower::operator-(const MonomialPower& other) const {
  if (!other.divides(*this)) throw DomainError("monomial does not divide");
  std::vector<int> e(exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] -= other.exps_[i];
  return MonomialPower(std::move(e));
}

bool MonomialPower::divides(const MonomialPower& other) const {
  if (other.num_vars() != num_vars()) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

std::string MonomialPower::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(exps_[i]);
  }
  return s + ")";
}

bool grlex_less(const MonomialPower& a, const MonomialPower& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  auto ea = a.exponents();
  auto eb = b.exponents();
  return std::lexicographical_compare(eb.begin(), eb.end(), ea.begin(), ea.end());
}

std::size_t MonomialHash::operator()(const MonomialPower& a) const {
  std::size_t h = 1469598103934665603ULL;
  for (int e : a.exponents()) {
    h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

void fill_degree(std::size_t n, std::size_t pos, int remaining, std::vector<int>& cur,
                 std::vector<MonomialPower>& out) {
  if (pos + 1 == n) {
    cur[pos] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = e;
    fill_degree(n, pos + 1, remaining - e, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<MonomialPower> monomials_of_degree(std::size_t n, int d) {
  std::vector<MonomialPower> out;
  if (d < 0) return out;
  if (n == 0) {
    if (d == 0) out.emplace_back(std::vector<int>{});
    return out;
  }
  std::vector<int> cur(n, 0);
  fill_degree(n, 0, d, cur, out);
  return out;
}

MonomialSpace::MonomialSpace(std::size_t n, int max_degree) : n_(n), d_(max_degree) {
  if (max_degree < 0) throw DomainError("negative maximum degree");
  for (int d = 0; d <= max_degree; ++d) {
    auto grade = monomials_of_degree(n, d);
    list_.insert(list_.end(), grade.begin(), grade.end());
    grade_end_.push_back(list_.size());
  }
  lookup_.reserve(list_.size());
  parent_.assign(list_.size(), 0);
  var_.assign(list_.size(), 0);
  for (std::size_t i = 0; i < list_.size(); ++i) lookup_.emplace(list_[i], i);
  for (std::size_t i = 1; i < list_.size(); ++i) {
    const auto& a = list_[i];
    std::size_t j = 0;
    while (a[j] == 0) ++j;
    var_[i] = j;
    parent_[i] = lookup_.at(a - MonomialPower::unit(n, j));
  }
}

std::size_t MonomialSpace::index(const MonomialPower& a) const {
  auto it = lookup_.find(a);
  if (it == lookup_.end())
    throw IndexError("monomial " + a.to_string() + " outside N^n_" + std::to_string(d_));
  return it->second;
}

long MonomialSpace::find(const MonomialPower& a) const {
  auto it = lookup_.find(a);
  return it == lookup_.end() ? -1 : static_cast<long>(it->second);
}

std::size_t MonomialSpace::count_up_to(int d) const {
  if (d < 0) return 0;
  if (d >= d_) return list_.size();
  return grade_end_[static_cast<std::size_t>(d)];
}

std::shared_ptr<const MonomialSpace> monomial_space(std::size_t n, int max_degree) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, int>, std::shared_ptr<const MonomialSpace>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, max_degree);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto sp = std::make_shared<const MonomialSpace>(n, max_degree);
  cache.emplace(key, sp);
  return sp;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double multinomial(int m, const MonomialPower& alpha) {
  if (alpha.degree() > m) throw DomainError("monomial degree exceeds tensor order");
  double v = 1.0;
  std::size_t rem = static_cast<std::size_t>(m);
  std::size_t head = static_cast<std::size_t>(m - alpha.degree());
  v *= static_cast<double>(binomial(rem, head));
  rem -= head;
  for (int e : alpha.exponents()) {
    v *= static_cast<double>(binomial(rem, static_cast<std::size_t>(e)));
    rem -= static_cast<std::size_t>(e);
  }
  return v;
}

}  // namespace symdec
