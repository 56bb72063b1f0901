#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "plinth/group.hpp"

namespace plinth {

struct parse_error : domain_error {
  using domain_error::domain_error;
};

/// Parse one generator line: either n space-separated images, or cycle
/// notation like "(0 1 2)(5 6)" / "(0,1,2)(5,6)".
inline Perm parse_perm_line(const std::string& line, Pt degree) {
  std::string s = line;
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) throw parse_error("empty permutation line");
  if (s[first] == '(') {
    std::vector<Pt> img(degree);
    for (Pt i = 0; i < degree; ++i) img[i] = i;
    std::size_t i = first;
    while (i < s.size()) {
      if (std::isspace(static_cast<unsigned char>(s[i]))) {
        ++i;
        continue;
      }
      if (s[i] != '(') throw parse_error("expected '(' in cycle notation");
      std::vector<Pt> cyc;
      ++i;
      std::string num;
      for (; i < s.size() && s[i] != ')'; ++i) {
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
          num += s[i];
        } else if (!num.empty()) {
          cyc.push_back(static_cast<Pt>(std::stoul(num)));
          num.clear();
        }
      }
      if (i == s.size()) throw parse_error("unterminated cycle");
      if (!num.empty()) cyc.push_back(static_cast<Pt>(std::stoul(num)));
      ++i;
      for (std::size_t k = 0; k < cyc.size(); ++k) {
        Pt from = cyc[k], to = cyc[(k + 1) % cyc.size()];
        if (from >= degree || to >= degree) throw parse_error("cycle point out of range");
        img[from] = to;
      }
    }
    return Perm(std::move(img));
  }
  std::istringstream iss(s);
  std::vector<Pt> img;
  unsigned long v;
  while (iss >> v) {
    if (v >= degree) throw parse_error("image out of range");
    img.push_back(static_cast<Pt>(v));
  }
  if (img.size() != degree) throw parse_error("wrong number of images");
  return Perm(std::move(img));
}

namespace detail {
inline bool header_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}
}  // namespace detail

/// Permutation text format: line 1 "degree n", then one generator per line.
/// Blank lines and '#' comments are ignored.
inline Group parse_group_text(std::istream& in) {
  std::string line;
  if (!detail::header_line(in, line)) throw parse_error("missing header line");
  std::istringstream hs(line);
  std::string kw;
  unsigned long n;
  if (!(hs >> kw >> n) || kw != "degree" || n == 0)
    throw parse_error("header must be 'degree n'");
  std::vector<Perm> gens;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    gens.push_back(parse_perm_line(line, static_cast<Pt>(n)));
  }
  if (gens.empty()) throw parse_error("no generators");
  return Group(static_cast<Pt>(n), std::move(gens));
}

inline Group load_group_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  return parse_group_text(in);
}

/// Image-form output, one generator per line.
inline std::string format_group_text(const Group& g) {
  std::ostringstream os;
  os << "degree " << g.degree() << "\n";
  for (const Perm& p : g.gens()) {
    for (Pt x = 0; x < g.degree(); ++x) {
      if (x) os << ' ';
      os << p[x];
    }
    os << "\n";
  }
  return os.str();
}

/// Incidence design file: "points n" then one line of space-separated point
/// indices per geometric line.
struct DesignFile {
  Pt points = 0;
  std::vector<std::vector<Pt>> lines;
};

inline DesignFile parse_design(std::istream& in) {
  std::string line;
  if (!detail::header_line(in, line)) throw parse_error("missing design header");
  std::istringstream hs(line);
  std::string kw;
  unsigned long n;
  if (!(hs >> kw >> n) || kw != "points" || n == 0)
    throw parse_error("design header must be 'points n'");
  DesignFile d;
  d.points = static_cast<Pt>(n);
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    std::istringstream iss(line);
    std::vector<Pt> pts;
    unsigned long v;
    while (iss >> v) {
      if (v >= d.points) throw parse_error("design point out of range");
      pts.push_back(static_cast<Pt>(v));
    }
    if (!pts.empty()) d.lines.push_back(std::move(pts));
  }
  if (d.lines.empty()) throw parse_error("design has no lines");
  return d;
}

inline DesignFile load_design_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  return parse_design(in);
}

}  // namespace plinth
