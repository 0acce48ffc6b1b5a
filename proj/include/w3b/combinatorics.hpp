#pragma once
#include <compare>
#include <string>
#include <vector>

#include "w3b/error.hpp"

namespace w3b {

// Integer partition: weakly decreasing positive parts.
class Partition {
public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int rows() const { return static_cast<int>(parts_.size()); }
  int cols() const { return parts_.empty() ? 0 : parts_[0]; }
  int size() const;  // total number of boxes
  int part(int r) const { return r < rows() ? parts_[r] : 0; }
  Partition conjugate() const;

  bool operator==(const Partition&) const = default;

private:
  std::vector<int> parts_;
};

// Boundary signature: a word over {1,2} whose sum is divisible by 3.
// Derived data: q_i = (-1)^{s_i+1}, p_i = 1 + sum_{j<i} s_j, and the
// rectangular shapes pi = (n/3, n/3, n/3) and pibar = (3^{n/3}).
struct Signature {
  std::vector<int> s;  // entries in {1,2}
  std::vector<int> q;  // +1 for s_i = 1, -1 for s_i = 2
  std::vector<int> p;  // p[i] = 1 + s_0 + ... + s_{i-1}; p has d+1 entries
  int n = 0;

  int d() const { return static_cast<int>(s.size()); }
  int excedance() const { return n / 3; }
  Partition pi() const { return Partition({n / 3, n / 3, n / 3}); }
  Partition pibar() const { return Partition(std::vector<int>(n / 3, 3)); }

  bool operator==(const Signature& o) const { return s == o.s; }
};

Signature make_signature(const std::vector<int>& s);

// A filling of a partition shape with positive integers. Entries are stored
// row by row; validity of monotonicity conditions is checked by predicates
// rather than at construction so that arbitrary fillings can be represented.
class Filling {
public:
  Filling() = default;
  Filling(Partition shape, std::vector<std::vector<int>> rows);

  const Partition& shape() const { return shape_; }
  const std::vector<std::vector<int>>& rows() const { return rows_; }
  int rows_count() const { return shape_.rows(); }
  int at(int r, int c) const;  // 0-based
  int max_entry() const;

  // Multiplicity of each value 1..max_entry().
  std::vector<int> content() const;

  Filling transpose() const;

  bool is_row_strict() const;     // rows strictly increase, columns weakly increase
  bool is_column_strict() const;  // columns strictly increase, rows weakly increase
  bool is_standard() const;       // both strict with content (1,1,...,1)

  // Concatenation of the rows, left to right, top to bottom.
  std::vector<int> row_reading_word() const;
  // Concatenation of the columns, top to bottom, left to right.
  std::vector<int> column_reading_word() const;

  std::string to_json() const;
  static Filling from_json(const std::string& text);

  bool operator==(const Filling&) const = default;

private:
  Partition shape_;
  std::vector<std::vector<int>> rows_;
};

// Lexicographic comparison of row reading words; the canonical order for
// listing tableaux of a common shape.
bool row_reading_less(const Filling& a, const Filling& b);

enum class TabKind { RSYT, CSYT, SYT, ALL_FILLINGS };

// All fillings of `shape` with content `content` (content[k] copies of k+1)
// satisfying the monotonicity conditions of `kind`, listed in row-reading
// lexicographic order.
std::vector<Filling> enumerate_tableaux(const Partition& shape, const std::vector<int>& content,
                                        TabKind kind);
std::vector<Filling> enumerate_tableaux(const Partition& shape, const Signature& content,
                                        TabKind kind);

// Number of row-strict tableaux of the given shape and content; equals the
// Kostka number of the conjugate shape.
int kostka(const Partition& shape, const std::vector<int>& content);
int kostka(const Partition& shape, const Signature& content);

enum class Reading { row_wise, column_wise };

// Standardization: replace the k-th smallest entry value by p_k = 1 + sum of
// earlier multiplicities, then disambiguate equal entries in the order they
// appear in the chosen reading word, producing a standard-content filling.
Filling standardize(const Filling& t, Reading reading);

// Row numbers of the boxes of `t` containing the value `a`, read column by
// column from the left, top to bottom within each column.
std::vector<int> row_content(const Filling& t, int a);

// row_content for every value 1..d; the tuples K_1..K_d.
std::vector<std::vector<int>> row_number_tuples(const Filling& t);

// Sum of row numbers of boxes containing each value (with multiplicity).
std::vector<int> row_number_sums(const Filling& t, int d);

// Dominance-order feasibility shortcut: row-strict tableaux of `shape` and
// content word `content` exist iff conjugate(shape) dominates the decreasing
// sort of `content`.
bool rsyt_exists(const Partition& shape, const std::vector<int>& content);

}  // namespace w3b
