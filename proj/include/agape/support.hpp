#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace agape {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SignatureError : Error { using Error::Error; };
struct SortError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct DefError : Error { using Error::Error; };
struct ModelError : Error { using Error::Error; };
struct EvalError : Error { using Error::Error; };
struct InterpError : Error { using Error::Error; };
struct GeomError : Error { using Error::Error; };
struct SynthError : Error { using Error::Error; };
struct UsageError : Error { using Error::Error; };

inline void hash_mix(std::size_t& h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
}

}  // namespace agape
