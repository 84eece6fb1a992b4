#include "ridpolar/hadamard.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace ridpolar {
namespace {

void check_level(unsigned n, unsigned limit, const char* what) {
  if (n > limit)
    throw std::invalid_argument(std::string(what) + ": level " + std::to_string(n) +
                                " exceeds limit " + std::to_string(limit));
}

}  // namespace

std::vector<std::int64_t> hadamard_row(unsigned n, std::size_t i) {
  check_level(n, 30, "hadamard_row");
  const std::size_t size = std::size_t{1} << n;
  if (i < 1 || i > size)
    throw std::out_of_range("hadamard_row: row " + std::to_string(i) + " outside [1, " +
                            std::to_string(size) + "]");
  std::vector<std::int64_t> row(size);
  const std::size_t r = i - 1;
  for (std::size_t j = 0; j < size; ++j) row[j] = (std::popcount(r & j) & 1U) ? -1 : 1;
  return row;
}

std::vector<std::size_t> shuffled_row_order(unsigned n) {
  check_level(n, 30, "shuffled_row_order");
  std::vector<std::size_t> order{1};
  for (unsigned level = 0; level < n; ++level) {
    const std::size_t half = order.size();
    std::vector<std::size_t> next;
    next.reserve(2 * half);
    for (std::size_t r : order) {
      next.push_back(r);         // (h, h)  = Sylvester row r of the doubled matrix
      next.push_back(r + half);  // (h, -h) = Sylvester row r + N
    }
    order = std::move(next);
  }
  return order;
}

IntMatrix hadamard_matrix(unsigned n) {
  check_level(n, kMaxMaterializedLevel, "hadamard_matrix");
  const std::size_t size = std::size_t{1} << n;
  IntMatrix h(size, size);
  for (std::size_t r = 0; r < size; ++r)
    for (std::size_t c = 0; c < size; ++c) h.at(r, c) = (std::popcount(r & c) & 1U) ? -1 : 1;
  return h;
}

IntMatrix shuffled_hadamard_matrix(unsigned n) {
  check_level(n, kMaxMaterializedLevel, "shuffled_hadamard_matrix");
  IntMatrix h{{1}};
  for (unsigned level = 0; level < n; ++level) {
    const std::size_t size = h.rows();
    IntMatrix next(2 * size, 2 * size);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j) {
        next.at(2 * i, j) = h.at(i, j);
        next.at(2 * i, size + j) = h.at(i, j);
        next.at(2 * i + 1, j) = h.at(i, j);
        next.at(2 * i + 1, size + j) = -h.at(i, j);
      }
    h = std::move(next);
  }
  return h;
}

void fwht_inplace(std::span<double> x) {
  const std::size_t size = x.size();
  if (size == 0 || !std::has_single_bit(size))
    throw std::invalid_argument("fwht: length " + std::to_string(size) + " is not a power of two");
  for (std::size_t h = 1; h < size; h <<= 1)
    for (std::size_t i = 0; i < size; i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = x[j];
        const double b = x[j + h];
        x[j] = a + b;
        x[j + h] = a - b;
      }
}

std::vector<double> fwht_apply(unsigned n, std::span<const double> x) {
  const std::size_t size = std::size_t{1} << n;
  if (x.size() != size)
    throw std::invalid_argument("fwht_apply: expected length " + std::to_string(size) +
                                ", got " + std::to_string(x.size()));
  std::vector<double> out(x.begin(), x.end());
  fwht_inplace(out);
  return out;
}

}  // namespace ridpolar
