#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace parcoord {

/// Base class of all library errors. The CLI maps these to exit code 2.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unusable input data.
class data_error : public error {
 public:
  using error::error;
};

class csv_error : public data_error {
 public:
  using data_error::data_error;
};

class binning_error : public data_error {
 public:
  using data_error::data_error;
};

/// The Neyman generator diverges on an empty cell whose marginal product is
/// positive; raised when smoothing is disabled.
class neyman_zero_cell : public data_error {
 public:
  neyman_zero_cell(std::size_t row, std::size_t col)
      : data_error("NeymanZeroCell: empty cell (" + std::to_string(row) + "," +
                    std::to_string(col) +
                    ") with positive marginal product; enable smoothing "
                    "(alpha > 0) or choose another statistic"),
        row_(row),
        col_(col) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

/// Wraps a per-pair failure with the attribute pair it occurred on.
class pair_error : public data_error {
 public:
  pair_error(std::size_t i, std::size_t j, const std::string& name_i,
             const std::string& name_j, const std::string& what)
      : data_error("pair (" + name_i + ", " + name_j + "): " + what),
        i_(i),
        j_(j) {}

  std::size_t first() const noexcept { return i_; }
  std::size_t second() const noexcept { return j_; }

 private:
  std::size_t i_;
  std::size_t j_;
};

}  // namespace parcoord
