#include "symdec/tensor_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace symdec {

namespace {

// Next non-blank, non-comment line, split into tokens; false at end of input.
bool next_record(std::istream& in, std::vector<std::string>& tokens, int& line_no) {
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    tokens.clear();
    std::istringstream ss(line);
    for (std::string t; ss >> t;) tokens.push_back(t);
    return true;
  }
  return false;
}

[[noreturn]] void fail(int line_no, const std::string& msg) {
  throw ParseError("line " + std::to_string(line_no) + ": " + msg);
}

double to_double(const std::string& s, int line_no) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    fail(line_no, "not a number: '" + s + "'");
  }
  if (used != s.size()) fail(line_no, "not a number: '" + s + "'");
  return v;
}

long to_long(const std::string& s, int line_no) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    fail(line_no, "not an integer: '" + s + "'");
  }
  if (used != s.size()) fail(line_no, "not an integer: '" + s + "'");
  return v;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt(cplx z) { return fmt(z.real()) + " " + fmt(z.imag()); }

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return in;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ParseError("write to '" + path + "' failed");
}

}  // namespace

TensorFile parse_tensor(std::istream& in) {
  std::vector<std::string> tok;
  int line_no = 0;
  if (!next_record(in, tok, line_no)) throw ParseError("empty tensor file");
  if (tok.size() != 4 || tok[0] != "symtensor")
    fail(line_no, "expected header 'symtensor <n+1> <m> uptri|terms'");
  const long dim = to_long(tok[1], line_no);
  const long m = to_long(tok[2], line_no);
  if (dim < 1 || m < 0) fail(line_no, "need n+1 >= 1 and m >= 0");
  TensorFile tf;
  if (tok[3] == "uptri")
    tf.format = TensorFormat::uptri;
  else if (tok[3] == "terms")
    tf.format = TensorFormat::terms;
  else
    fail(line_no, "unknown format '" + tok[3] + "'");
  const std::size_t n = static_cast<std::size_t>(dim - 1);

  if (tf.format == TensorFormat::uptri) {
    std::vector<cplx> vals;
    const std::size_t count = binomial(n + static_cast<std::size_t>(m), static_cast<std::size_t>(m));
    while (next_record(in, tok, line_no)) {
      if (tok.size() != 2) fail(line_no, "expected 're im'");
      if (vals.size() == count) fail(line_no, "too many entries");
      vals.emplace_back(to_double(tok[0], line_no), to_double(tok[1], line_no));
    }
    if (vals.size() != count)
      throw ParseError("expected " + std::to_string(count) + " entries, found " +
                       std::to_string(vals.size()));
    tf.tensor = from_uptri(n, static_cast<int>(m), vals);
    return tf;
  }

  const auto space = monomial_space(n, static_cast<int>(m));
  std::vector<cplx> coeffs(space->size(), 0.0);
  std::vector<char> seen(space->size(), 0);
  while (next_record(in, tok, line_no)) {
    if (tok.size() != n + 2) fail(line_no, "expected " + std::to_string(n) + " exponents and 're im'");
    std::vector<int> exps(n);
    for (std::size_t j = 0; j < n; ++j) {
      const long e = to_long(tok[j], line_no);
      if (e < 0) fail(line_no, "negative exponent");
      exps[j] = static_cast<int>(e);
    }
    const long k = space->find(MonomialPower(exps));
    if (k < 0) fail(line_no, "monomial degree exceeds m");
    if (seen[static_cast<std::size_t>(k)]) fail(line_no, "duplicate monomial");
    seen[static_cast<std::size_t>(k)] = 1;
    coeffs[static_cast<std::size_t>(k)] = {to_double(tok[n], line_no), to_double(tok[n + 1], line_no)};
  }
  tf.tensor = SymTensor(n, static_cast<int>(m), std::move(coeffs));
  return tf;
}

TensorFile read_tensor(const std::string& path) {
  auto in = open_in(path);
  return parse_tensor(in);
}

std::string serialize_tensor(const SymTensor& F, TensorFormat format) {
  std::string out = "symtensor " + std::to_string(F.dim()) + " " + std::to_string(F.order()) +
                    (format == TensorFormat::uptri ? " uptri\n" : " terms\n");
  if (format == TensorFormat::uptri) {
    for (const auto& z : F.uptri()) out += fmt(z) + "\n";
    return out;
  }
  for (std::size_t k = 0; k < F.size(); ++k) {
    if (F[k] == cplx(0.0)) continue;
    for (int e : F.space()[k].exponents()) out += std::to_string(e) + " ";
    out += fmt(F[k]) + "\n";
  }
  return out;
}

void write_tensor(const std::string& path, const SymTensor& F, TensorFormat format) {
  write_text(path, serialize_tensor(F, format));
}

DecompositionFile parse_decomposition(std::istream& in) {
  std::vector<std::string> tok;
  int line_no = 0;
  if (!next_record(in, tok, line_no)) throw ParseError("empty decomposition file");
  if (tok.size() != 5 || tok[0] != "decomposition")
    fail(line_no, "expected header 'decomposition <n+1> <m> <r> <error>'");
  DecompositionFile df;
  const long dim = to_long(tok[1], line_no);
  const long m = to_long(tok[2], line_no);
  const long r = to_long(tok[3], line_no);
  if (dim < 1 || m < 0 || r < 0) fail(line_no, "invalid header values");
  df.n_plus_1 = static_cast<std::size_t>(dim);
  df.m = static_cast<int>(m);
  df.error = to_double(tok[4], line_no);
  while (next_record(in, tok, line_no)) {
    if (tok.size() != 2 * df.n_plus_1)
      fail(line_no, "expected " + std::to_string(df.n_plus_1) + " 're im' pairs");
    if (df.vectors.size() == static_cast<std::size_t>(r)) fail(line_no, "more vectors than r");
    CVector u(static_cast<Eigen::Index>(df.n_plus_1));
    for (std::size_t j = 0; j < df.n_plus_1; ++j)
      u(static_cast<Eigen::Index>(j)) = {to_double(tok[2 * j], line_no),
                                         to_double(tok[2 * j + 1], line_no)};
    df.vectors.push_back(std::move(u));
  }
  if (df.vectors.size() != static_cast<std::size_t>(r))
    throw ParseError("expected " + std::to_string(r) + " vectors, found " +
                     std::to_string(df.vectors.size()));
  return df;
}

DecompositionFile read_decomposition(const std::string& path) {
  auto in = open_in(path);
  return parse_decomposition(in);
}

std::string serialize_decomposition(const DecompositionFile& dec) {
  std::string out = "decomposition " + std::to_string(dec.n_plus_1) + " " + std::to_string(dec.m) +
                    " " + std::to_string(dec.vectors.size()) + " " + fmt(dec.error) + "\n";
  for (const auto& u : dec.vectors) {
    for (Eigen::Index j = 0; j < u.size(); ++j) out += (j ? " " : "") + fmt(u(j));
    out += "\n";
  }
  return out;
}

void write_decomposition(const std::string& path, const DecompositionFile& dec) {
  write_text(path, serialize_decomposition(dec));
}

}  // namespace symdec
