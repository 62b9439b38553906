#include "symdec/fixtures.hpp"

#include <cmath>

namespace symdec {

namespace {

SymTensor integers(std::size_t n, int m, std::initializer_list<double> uptri) {
  std::vector<cplx> v(uptri.begin(), uptri.end());
  return from_uptri(n, m, v);
}

struct Term {
  std::vector<int> theta;  // exponents of x_0 .. x_n
  double coef;
};

SymTensor form(std::size_t n, int m, std::initializer_list<Term> terms) {
  Poly p(n);
  for (const auto& t : terms)
    p.add_term(MonomialPower(std::vector<int>(t.theta.begin() + 1, t.theta.end())), t.coef);
  return from_form(n, m, p);
}

SymTensor power_sum(std::initializer_list<std::pair<double, std::vector<double>>> parts, int m) {
  std::vector<CVector> us;
  std::size_t n = 0;
  for (const auto& [w, lin] : parts) {
    CVector u(static_cast<Eigen::Index>(lin.size()));
    for (std::size_t j = 0; j < lin.size(); ++j) u(static_cast<Eigen::Index>(j)) = lin[j];
    us.push_back(std::pow(w, 1.0 / m) * u);
    n = lin.size() - 1;
  }
  return from_rank_one_sum(n, m, us);
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"cubic3-rank3",  "cubic3-generic", "quartic3-generic", "cubic4-generic",
          "quintic3-generic", "quartic3-rank2", "quintic3-rank4",  "determinantal6"};
}

Fixture fixture(const std::string& name) {
  if (name == "cubic3-rank3")
    return {name, "cubic on C^3 with rank-3 decomposition 3(1,-2,-1) + 5(1,1,2) - (1,2,-2)",
            integers(2, 3, {7, -3, 9, 13, 20, 19, -27, 6, 6, 45}), 3};
  if (name == "cubic3-generic")
    return {name, "integer cubic on C^3 at generic rank 4 (dimension gap 2, 7 classes)",
            integers(2, 3, {-8, 2, 15, -7, 17, 7, 17, 4, 3, 18}), 4};
  if (name == "quartic3-generic")
    return {name, "integer quartic on C^3 at generic rank 6 (dimension gap 3, 8 classes)",
            integers(2, 4, {-7, -2, 11, 18, -7, -1, 3, -2, -15, -9, -13, -14, -11, -13, 18}), 6};
  if (name == "cubic4-generic")
    return {name, "integer cubic on C^4 at generic rank 5 (unique decomposition)",
            integers(3, 3, {-20, -17, 16, 10, -4, -8, 3, -1, -19, -6, -6, 7, 9, -13, 1, 17, 11, -17,
                            7, 9}),
            5};
  if (name == "quintic3-generic")
    return {name, "integer quintic on C^3 at generic rank 7 (unique decomposition)",
            integers(2, 5, {13, -15, -2, -18, 0, 6, -4, -19, -1, 12, 13, -13, -17, -1, 16, -11, 14,
                            -4, 11, 14, 19}),
            7};
  if (name == "quartic3-rank2")
    return {name, "rank-2 quartic (0,1,-5)^4 + (3,2,-1)^4, given by its coefficients",
            form(2, 4,
                 {{{4, 0, 0}, 81},    {{0, 4, 0}, 17},    {{0, 0, 4}, 626},  {{1, 2, 1}, -144},
                  {{3, 1, 0}, 216},   {{3, 0, 1}, -108},  {{2, 2, 0}, 216},  {{2, 0, 2}, 54},
                  {{1, 3, 0}, 96},    {{1, 0, 3}, -12},   {{0, 3, 1}, -52},  {{0, 2, 2}, 174},
                  {{0, 1, 3}, -508},  {{1, 1, 2}, 72},    {{2, 1, 1}, -216}}),
            6};
  if (name == "quintic3-rank4")
    return {name,
            "rank-4 quintic (x0+2x1+3x2)^5 + (x0-2x1+3x2)^5 + (x0-12x1-3x2)^5/3 + "
            "(x0+12x1-13x2)^5/5",
            power_sum({{1.0, {1, 2, 3}},
                       {1.0, {1, -2, 3}},
                       {1.0 / 3.0, {1, -12, -3}},
                       {1.0 / 5.0, {1, 12, -13}}},
                      5),
            7};
  if (name == "determinantal6")
    return {name, "cubic x5 x1^2 + 2 x1 x2 x4 + x3 x2^2 + x0 x4^2 + x0 x3 x5 on C^6",
            form(5, 3,
                 {{{0, 2, 0, 0, 0, 1}, 1},
                  {{0, 1, 1, 0, 1, 0}, 2},
                  {{0, 0, 2, 1, 0, 0}, 1},
                  {{1, 0, 0, 0, 2, 0}, 1},
                  {{1, 0, 0, 1, 0, 1}, 1}}),
            11};
  throw DomainError("unknown fixture '" + name + "'");
}

}  // namespace symdec
