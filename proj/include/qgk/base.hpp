// base.hpp --- shared error type and small bitset helpers.
//
// Everything in this library works on dense index-based structures: carriers
// are 0..n-1, subsets are 64-bit masks (carriers never exceed 64 where masks
// are used), and relations are bit-rows. The Error type carries a stable
// machine-readable code (what went wrong) plus a human-readable detail that
// names a concrete witness.

#ifndef QGK_BASE_HPP_
#define QGK_BASE_HPP_

#include <bit>
#include <cstdint>
#include <exception>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace qgk {

using Mask = std::uint64_t;

class Error : public std::exception {
 public:
  Error(std::string code, std::string detail)
      : code_(std::move(code)), detail_(std::move(detail)) {
    text_ = code_ + ": " + detail_;
  }

  const char* what() const noexcept override { return text_.c_str(); }
  const std::string& code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string code_;
  std::string detail_;
  std::string text_;
};

[[noreturn]] inline void fail(std::string code, std::string detail) {
  throw Error(std::move(code), std::move(detail));
}

// Guard for postconditions that are theorems about the constructions here.
// A failure means a bug in this library (or a genuinely false claim), never
// bad user input, so the code is fixed.
inline void require(bool ok, const std::string& detail) {
  if (!ok) fail("PostconditionFailed", detail);
}

inline int popcount(Mask m) { return std::popcount(m); }

inline bool mask_test(Mask m, int i) { return (m >> i) & 1u; }

inline Mask mask_bit(int i) { return Mask{1} << i; }

inline std::vector<int> mask_elems(Mask m) {
  std::vector<int> out;
  while (m) {
    int i = std::countr_zero(m);
    out.push_back(i);
    m &= m - 1;
  }
  return out;
}

// Dense bit-matrix with 64-bit word rows; used for order relations.
class BitRows {
 public:
  BitRows() = default;
  BitRows(int rows, int cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64),
        data_(static_cast<std::size_t>(rows) * words_, 0) {}

  void set(int r, int c) { data_[r * words_ + c / 64] |= Mask{1} << (c % 64); }
  bool test(int r, int c) const {
    return (data_[r * words_ + c / 64] >> (c % 64)) & 1u;
  }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int words() const { return words_; }
  const Mask* row(int r) const { return data_.data() + r * words_; }
  Mask* row(int r) { return data_.data() + r * words_; }

  // True when row r is a subset of row s.
  bool row_subset(int r, int s) const {
    const Mask* a = row(r);
    const Mask* b = row(s);
    for (int w = 0; w < words_; ++w)
      if (a[w] & ~b[w]) return false;
    return true;
  }

 private:
  int rows_ = 0, cols_ = 0, words_ = 0;
  std::vector<Mask> data_;
};

template <class... Ts>
std::string cat(const Ts&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

}  // namespace qgk

#endif  // QGK_BASE_HPP_
