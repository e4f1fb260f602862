#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "acstab/model.hpp"
#include "oracle.hpp"

namespace support {

using acstab::Point;
using acstab::Rational;
using acstab::Scalar;
using acstab::ScalarMode;

inline Point exact(std::initializer_list<const char*> coords) {
  std::vector<Scalar> out;
  for (const char* c : coords) out.push_back(Scalar(acstab::parse_rational(c)));
  return Point(std::move(out));
}

inline Point exact1(const Rational& x) { return Point({Scalar(x)}); }

inline Point floating(std::initializer_list<double> coords) {
  std::vector<Scalar> out;
  for (double c : coords) out.push_back(Scalar(c));
  return Point(std::move(out));
}

inline Rational q(const char* text) { return acstab::parse_rational(text); }

/// Scalar function of one exact variable as a library Evaluable.
inline acstab::Evaluable scalar_fn(oracle::Fn f) {
  return acstab::Evaluable(1, 1, [f](const Point& x) { return Point({Scalar(f(x[0].rational()))}); });
}

/// Oracle view of a 1-D exact library function.
inline oracle::Fn as_oracle(const acstab::Evaluable& f) {
  return [f](const Rational& t) { return f(exact1(t))[0].rational(); };
}

inline Rational value1(const Point& p) { return p[0].rational(); }

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Fresh scratch directory under the build tree.
inline std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("acstab_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace support
