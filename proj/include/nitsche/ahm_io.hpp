#ifndef NITSCHE_AHM_IO_HPP
#define NITSCHE_AHM_IO_HPP

// AHM text format:
//   AHM 1
//   R <decimal>
//   LOG <a0_re> <a0_im> <b0_re> <b0_im>
//   C <n> <an_re> <an_im> <bn_re> <bn_im>     (zero or more, distinct nonzero n)
// '#' starts a comment; blank lines are ignored.

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "nitsche/annulus_map.hpp"
#include "nitsche/atomic_file.hpp"

namespace nitsche {

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream in(body);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

inline double parse_real(const std::string& tok, int line) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
    throw ParseError("invalid number '" + tok + "'", line);
  return v;
}

inline long parse_int(const std::string& tok, int line) {
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(tok.c_str(), &end, 10);
  if (end == tok.c_str() || *end != '\0' || errno == ERANGE) throw ParseError("invalid integer '" + tok + "'", line);
  return v;
}

}  // namespace detail

inline AnnulusMap parse_ahm(std::istream& in) {
  enum class Stage { header, radius, log, terms } stage = Stage::header;
  double R = 0.0;
  cplx a0, b0;
  AnnulusMap::Terms terms;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = detail::tokenize(line);
    if (tok.empty()) continue;
    switch (stage) {
      case Stage::header:
        if (tok.size() != 2 || tok[0] != "AHM" || tok[1] != "1") throw ParseError("expected 'AHM 1'", lineno);
        stage = Stage::radius;
        break;
      case Stage::radius:
        if (tok.size() != 2 || tok[0] != "R") throw ParseError("expected 'R <decimal>'", lineno);
        R = detail::parse_real(tok[1], lineno);
        if (!(R > 1.0)) throw ParseError("R must be > 1", lineno);
        stage = Stage::log;
        break;
      case Stage::log:
        if (tok.size() != 5 || tok[0] != "LOG") throw ParseError("expected 'LOG a0_re a0_im b0_re b0_im'", lineno);
        a0 = {detail::parse_real(tok[1], lineno), detail::parse_real(tok[2], lineno)};
        b0 = {detail::parse_real(tok[3], lineno), detail::parse_real(tok[4], lineno)};
        stage = Stage::terms;
        break;
      case Stage::terms: {
        if (tok.size() != 6 || tok[0] != "C") throw ParseError("expected 'C n an_re an_im bn_re bn_im'", lineno);
        const long n = detail::parse_int(tok[1], lineno);
        if (n == 0) throw ParseError("index 0 is reserved for the LOG line", lineno);
        if (n > 1000000 || n < -1000000) throw ParseError("index out of range", lineno);
        const int k = static_cast<int>(n);
        if (terms.count(k)) throw ParseError("duplicate index " + std::to_string(k), lineno);
        terms[k] = {{detail::parse_real(tok[2], lineno), detail::parse_real(tok[3], lineno)},
                    {detail::parse_real(tok[4], lineno), detail::parse_real(tok[5], lineno)}};
        break;
      }
    }
  }
  if (stage != Stage::terms) throw ParseError("truncated AHM input", lineno);
  try {
    return AnnulusMap(R, a0, b0, std::move(terms));
  } catch (const RangeError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), 0);
  }
}

inline AnnulusMap read_ahm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return parse_ahm(in);
}

inline void write_ahm(std::ostream& out, const AnnulusMap& map) {
  out << std::setprecision(17);
  out << "AHM 1\n";
  out << "R " << map.outer_radius() << "\n";
  out << "LOG " << map.log_a0().real() << ' ' << map.log_a0().imag() << ' ' << map.log_b0().real() << ' '
      << map.log_b0().imag() << "\n";
  for (const auto& [n, m] : map.terms())
    out << "C " << n << ' ' << m.a.real() << ' ' << m.a.imag() << ' ' << m.b.real() << ' ' << m.b.imag() << "\n";
}

inline std::string to_ahm(const AnnulusMap& map) {
  std::ostringstream s;
  write_ahm(s, map);
  return s.str();
}

inline void save_ahm(const std::string& path, const AnnulusMap& map) { write_file_atomic(path, to_ahm(map)); }

}  // namespace nitsche

#endif
