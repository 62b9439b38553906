#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "symdec/symtensor.hpp"

namespace symdec {

enum class TensorFormat { uptri, terms };

// Header line "symtensor <n+1> <m> uptri|terms". An uptri body lists binom(n+m, m)
// "re im" lines in uptri order; a terms body lists "a_1 ... a_n re im" lines,
// absent monomials being zero. Blank lines and lines starting with '#' are skipped.
struct TensorFile {
  TensorFormat format = TensorFormat::uptri;
  SymTensor tensor;
};

// Header line "decomposition <n+1> <m> <r> <error>", then r lines of n+1 "re im" pairs.
struct DecompositionFile {
  std::size_t n_plus_1 = 0;
  int m = 0;
  double error = 0.0;
  std::vector<CVector> vectors;
};

TensorFile parse_tensor(std::istream& in);
TensorFile read_tensor(const std::string& path);
std::string serialize_tensor(const SymTensor& F, TensorFormat format);
void write_tensor(const std::string& path, const SymTensor& F, TensorFormat format);

DecompositionFile parse_decomposition(std::istream& in);
DecompositionFile read_decomposition(const std::string& path);
std::string serialize_decomposition(const DecompositionFile& dec);
void write_decomposition(const std::string& path, const DecompositionFile& dec);

}  // namespace symdec
