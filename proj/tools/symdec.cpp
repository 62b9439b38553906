// symdec: command-line front end for symmetric tensor decomposition.
//
// Exit codes: 0 success, 1 usage/I-O/parse error, 2 no convergence or
// tolerance not met, 3 inconsistent generating system (r too small).

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "symdec/catalecticant.hpp"
#include "symdec/decompose.hpp"
#include "symdec/fixtures.hpp"
#include "symdec/tensor_io.hpp"

namespace {

using namespace symdec;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kNoConvergence = 2;
constexpr int kInconsistent = 3;

struct DecomposeOptions {
  std::string rank = "auto";
  std::string mode = "numeric";
  std::uint64_t seed = 0;
  double tol = 1e-8;
  int restarts = 200;
  bool reduce = false;
  int grow_rank = 0;
  bool transform = false;
  std::string output;
};

std::uint64_t default_seed() {
  if (const char* s = std::getenv("SYMDEC_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      std::cerr << "symdec: ignoring invalid SYMDEC_SEED '" << s << "'\n";
    }
  }
  return 0;
}

void print_double(const char* label, double x) { std::printf("%s%.6e\n", label, x); }

void save(const std::string& path, const SymTensor& F, const Decomposition& dec) {
  write_decomposition(path, {F.dim(), F.order(), dec.error, dec.vectors});
}

int run_decompose(const SymTensor& F, const DecomposeOptions& o) {
  int r = 0;
  if (o.rank == "auto") {
    r = generic_rank(static_cast<int>(F.num_vars()), F.order());
  } else {
    try {
      r = std::stoi(o.rank);
    } catch (const std::exception&) {
      std::cerr << "symdec: --rank must be 'auto' or a positive integer\n";
      return kInputError;
    }
    if (r < 1) {
      std::cerr << "symdec: --rank must be positive\n";
      return kInputError;
    }
  }
  if (o.mode != "numeric" && o.mode != "all") {
    std::cerr << "symdec: --mode must be 'numeric' or 'all'\n";
    return kInputError;
  }

  SolveConfig cfg;
  cfg.seed = o.seed;
  cfg.max_restarts = o.restarts;
  cfg.random_transform = o.transform;
  const double fnorm = norm(F);
  const double bound = o.tol * (fnorm > 0.0 ? fnorm : 1.0);

  for (int grow = 0;; ++grow, ++r) {
    const int n = static_cast<int>(F.num_vars());
    std::printf("r = %d\n", r);
    std::printf("d = %d\n", dimension_gap(n, F.order(), r));
    try {
      std::printf("ell = %zu\n", parameterize(F, static_cast<std::size_t>(r)).omega_len);
    } catch (const InconsistentSystem&) {
      std::printf("ell = - (affine chart inconsistent; a random transform will be tried)\n");
    } catch (const DomainError& e) {
      std::cerr << "symdec: " << e.what() << "\n";
      return kInputError;
    }
    try {
      if (o.mode == "numeric") {
        auto dec = decompose_numeric(F, r, cfg);
        if (o.reduce) {
          dec = reduce_length(F, dec, cfg);
          std::printf("reduced length = %zu\n", dec.length());
        }
        print_double("error = ", dec.error);
        if (!o.output.empty()) save(o.output, F, dec);
        if (dec.error <= bound) return kOk;
        std::cerr << "symdec: decomposition error above tolerance\n";
        if (grow < o.grow_rank) continue;
        return kNoConvergence;
      }
      auto all = decompose_all(F, r, cfg);
      std::printf("decompositions = %zu\n", all.size());
      bool good = !all.empty();
      for (std::size_t k = 0; k < all.size(); ++k) {
        auto& dec = all[k];
        if (o.reduce) dec = reduce_length(F, dec, cfg);
        std::printf("  [%zu] length %zu error %.6e\n", k + 1, dec.length(), dec.error);
        if (!o.output.empty()) save(o.output + "." + std::to_string(k + 1), F, dec);
        good = good && dec.error <= bound;
      }
      if (good) return kOk;
      if (grow < o.grow_rank) continue;
      return kNoConvergence;
    } catch (const InconsistentSystem& e) {
      std::cerr << "symdec: " << e.what() << "\n";
      if (grow < o.grow_rank) continue;
      std::cerr << "symdec: advisory: increase the value of r (for example --rank " << r + 1
                << " or --grow-rank)\n";
      return kInconsistent;
    } catch (const NoConvergence& e) {
      std::cerr << "symdec: " << e.what() << "\n";
      if (!e.best_vectors.empty()) {
        print_double("best-effort error = ", e.best_error);
        if (!o.output.empty())
          save(o.output, F, {e.best_vectors, e.best_error, DecompositionMode::numeric});
      }
      if (grow < o.grow_rank) continue;
      return kNoConvergence;
    }
  }
}

void add_decompose_flags(CLI::App* cmd, DecomposeOptions& o) {
  cmd->add_option("--rank,-r", o.rank, "Decomposition length, or 'auto' for the generic rank");
  cmd->add_option("--mode", o.mode, "numeric (one decomposition) or all (every class found)")
      ->check(CLI::IsMember({"numeric", "all"}));
  cmd->add_option("--seed", o.seed, "Random seed (default: $SYMDEC_SEED or 0)");
  cmd->add_option("--tol", o.tol, "Relative error tolerance for success");
  cmd->add_option("--restarts", o.restarts, "Random restarts for the multi-start solver");
  cmd->add_flag("--reduce", o.reduce, "Try to shorten the decomposition afterwards");
  cmd->add_option("--grow-rank", o.grow_rank, "Retry with r+1 up to this many times on failure");
  cmd->add_flag("--transform", o.transform, "Decompose a random unitary transform of the input");
}

int run_example(const std::string& name, DecomposeOptions o) {
  const auto fx = fixture(name);
  std::printf("%s: %s\n", fx.name.c_str(), fx.description.c_str());
  o.rank = std::to_string(fx.rank);
  if (name == "cubic3-generic" || name == "quartic3-generic" || name == "cubic4-generic" ||
      name == "quintic3-generic")
    o.mode = "all";
  if (name == "quartic3-rank2" || name == "quintic3-rank4") o.reduce = true;
  return run_decompose(fx.tensor, o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetric tensor decomposition via generating polynomials"};
  app.require_subcommand(1);

  DecomposeOptions dopt;
  dopt.seed = default_seed();
  std::string input;
  auto* dec = app.add_subcommand("decompose", "Decompose a tensor file");
  dec->add_option("input", input, "Tensor file")->required();
  dec->add_option("-o,--output", dopt.output, "Output decomposition file (all mode: <output>.<k>)");
  add_decompose_flags(dec, dopt);

  std::string tensor_path, dec_path;
  double verify_tol = 1e-8;
  auto* ver = app.add_subcommand("verify", "Check a decomposition against a tensor");
  ver->add_option("tensor", tensor_path, "Tensor file")->required();
  ver->add_option("decomposition", dec_path, "Decomposition file")->required();
  ver->add_option("--tol", verify_tol, "Relative error tolerance");

  double cat_tol = 1e-8;
  auto* cat = app.add_subcommand("catrank", "Numerical rank of the most square catalecticant");
  cat->add_option("tensor", tensor_path, "Tensor file")->required();
  cat->add_option("--tol", cat_tol, "Relative singular value threshold");

  int dim = 0, order = 0;
  std::optional<int> at_rank;
  auto* gen = app.add_subcommand("genrank", "Generic rank and dimension gap of S^m(C^{n+1})");
  gen->add_option("n_plus_1", dim, "Vector space dimension n+1")->required()->check(CLI::PositiveNumber);
  gen->add_option("m", order, "Tensor order")->required()->check(CLI::PositiveNumber);
  gen->add_option("--rank", at_rank, "Report the dimension gap at this length instead");

  std::string fx_name, fx_out, fx_format = "uptri";
  auto* fix = app.add_subcommand("fixture", "Write a reference tensor ('list' to show names)");
  fix->add_option("name", fx_name, "Fixture name")->required();
  fix->add_option("-o,--output", fx_out, "Output path (default: stdout)");
  fix->add_option("--format", fx_format, "uptri or terms")->check(CLI::IsMember({"uptri", "terms"}));

  DecomposeOptions eopt;
  eopt.seed = default_seed();
  auto* ex = app.add_subcommand("example", "Reproduce a published run on a reference tensor");
  ex->add_option("name", fx_name, "Fixture name")->required();
  ex->add_option("-o,--output", eopt.output, "Output decomposition file");
  ex->add_option("--seed", eopt.seed, "Random seed (default: $SYMDEC_SEED or 0)");
  ex->add_option("--restarts", eopt.restarts, "Random restarts for the multi-start solver");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*dec) return run_decompose(read_tensor(input).tensor, dopt);

    if (*ver) {
      const auto F = read_tensor(tensor_path).tensor;
      const auto d = read_decomposition(dec_path);
      if (d.n_plus_1 != F.dim() || d.m != F.order()) {
        std::cerr << "symdec: decomposition shape does not match the tensor\n";
        return kInputError;
      }
      const double err = decomposition_error(F, d.vectors);
      const double fnorm = norm(F);
      const double rel = fnorm > 0.0 ? err / fnorm : err;
      print_double("error = ", err);
      print_double("relative error = ", rel);
      return rel <= verify_tol ? kOk : kNoConvergence;
    }

    if (*cat) {
      std::printf("%d\n", cat_rank(read_tensor(tensor_path).tensor, cat_tol));
      return kOk;
    }

    if (*gen) {
      const int n = dim - 1;
      const int r = generic_rank(n, order);
      const int at = at_rank.value_or(r);
      std::printf("generic rank = %d\n", r);
      std::printf("dimension gap (r = %d) = %d\n", at, dimension_gap(n, order, at));
      return kOk;
    }

    if (*fix) {
      if (fx_name == "list") {
        for (const auto& nm : fixture_names()) std::printf("%-18s %s\n", nm.c_str(), fixture(nm).description.c_str());
        return kOk;
      }
      const auto fx = fixture(fx_name);
      const auto fmt = fx_format == "terms" ? TensorFormat::terms : TensorFormat::uptri;
      if (fx_out.empty())
        std::cout << serialize_tensor(fx.tensor, fmt);
      else
        write_tensor(fx_out, fx.tensor, fmt);
      return kOk;
    }

    if (*ex) return run_example(fx_name, eopt);
  } catch (const ParseError& e) {
    std::cerr << "symdec: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "symdec: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
