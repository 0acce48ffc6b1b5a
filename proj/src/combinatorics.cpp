#include "w3b/combinatorics.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "json.hpp"

namespace w3b {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    require(parts_[i] > 0, Err::ZeroPartition, "partition parts must be positive");
    if (i > 0)
      require(parts_[i - 1] >= parts_[i], Err::BadInput, "partition parts must weakly decrease");
  }
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

Partition Partition::conjugate() const {
  std::vector<int> out;
  for (int c = 0; c < cols(); ++c) {
    int h = 0;
    for (int r = 0; r < rows(); ++r)
      if (parts_[r] > c) ++h;
    out.push_back(h);
  }
  return Partition(out);
}

Signature make_signature(const std::vector<int>& s) {
  Signature sig;
  sig.s = s;
  for (int v : s)
    require(v == 1 || v == 2, Err::BadInput, "signature entries must be 1 or 2");
  sig.n = std::accumulate(s.begin(), s.end(), 0);
  require(sig.n > 0, Err::BadInput, "signature must be nonempty");
  require(sig.n % 3 == 0, Err::NotDivisibleByThree,
          "signature weight " + std::to_string(sig.n) + " is not divisible by 3");
  sig.q.resize(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) sig.q[i] = (s[i] == 1) ? 1 : -1;
  sig.p.resize(s.size() + 1);
  sig.p[0] = 1;
  for (std::size_t i = 0; i < s.size(); ++i) sig.p[i + 1] = sig.p[i] + s[i];
  return sig;
}

Filling::Filling(Partition shape, std::vector<std::vector<int>> rows)
    : shape_(std::move(shape)), rows_(std::move(rows)) {
  require(static_cast<int>(rows_.size()) == shape_.rows(), Err::ShapeContentMismatch,
          "row count does not match shape");
  for (int r = 0; r < shape_.rows(); ++r) {
    require(static_cast<int>(rows_[r].size()) == shape_.part(r), Err::ShapeContentMismatch,
            "row length does not match shape");
    for (int v : rows_[r]) require(v >= 1, Err::BadInput, "entries must be positive");
  }
}

int Filling::at(int r, int c) const {
  require(r >= 0 && r < rows_count() && c >= 0 && c < static_cast<int>(rows_[r].size()),
          Err::IndexOutOfRange, "box out of range");
  return rows_[r][c];
}

int Filling::max_entry() const {
  int m = 0;
  for (const auto& row : rows_)
    for (int v : row) m = std::max(m, v);
  return m;
}

std::vector<int> Filling::content() const {
  std::vector<int> c(max_entry(), 0);
  for (const auto& row : rows_)
    for (int v : row) ++c[v - 1];
  return c;
}

Filling Filling::transpose() const {
  Partition tshape = shape_.conjugate();
  std::vector<std::vector<int>> trows(tshape.rows());
  for (int r = 0; r < tshape.rows(); ++r) trows[r].resize(tshape.part(r));
  for (int r = 0; r < rows_count(); ++r)
    for (int c = 0; c < static_cast<int>(rows_[r].size()); ++c) trows[c][r] = rows_[r][c];
  return Filling(tshape, trows);
}

bool Filling::is_row_strict() const {
  for (int r = 0; r < rows_count(); ++r)
    for (int c = 0; c + 1 < static_cast<int>(rows_[r].size()); ++c)
      if (rows_[r][c] >= rows_[r][c + 1]) return false;
  for (int r = 0; r + 1 < rows_count(); ++r)
    for (int c = 0; c < static_cast<int>(rows_[r + 1].size()); ++c)
      if (rows_[r][c] > rows_[r + 1][c]) return false;
  return true;
}

bool Filling::is_column_strict() const {
  for (int r = 0; r < rows_count(); ++r)
    for (int c = 0; c + 1 < static_cast<int>(rows_[r].size()); ++c)
      if (rows_[r][c] > rows_[r][c + 1]) return false;
  for (int r = 0; r + 1 < rows_count(); ++r)
    for (int c = 0; c < static_cast<int>(rows_[r + 1].size()); ++c)
      if (rows_[r][c] >= rows_[r + 1][c]) return false;
  return true;
}

bool Filling::is_standard() const {
  if (!is_row_strict() || !is_column_strict()) return false;
  std::vector<int> c = content();
  if (static_cast<int>(c.size()) != shape_.size()) return false;
  for (int m : c)
    if (m != 1) return false;
  return true;
}

std::vector<int> Filling::row_reading_word() const {
  std::vector<int> w;
  for (const auto& row : rows_) w.insert(w.end(), row.begin(), row.end());
  return w;
}

std::vector<int> Filling::column_reading_word() const {
  std::vector<int> w;
  for (int c = 0; c < shape_.cols(); ++c)
    for (int r = 0; r < rows_count(); ++r)
      if (c < static_cast<int>(rows_[r].size())) w.push_back(rows_[r][c]);
  return w;
}

std::string Filling::to_json() const {
  nlohmann::json j;
  j["shape"] = shape_.parts();
  j["rows"] = rows_;
  j["content"] = content();
  return j.dump();
}

Filling Filling::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  require(j.contains("shape") && j.contains("rows"), Err::BadInput,
          "filling JSON needs shape and rows");
  Partition shape(j["shape"].get<std::vector<int>>());
  return Filling(shape, j["rows"].get<std::vector<std::vector<int>>>());
}

bool row_reading_less(const Filling& a, const Filling& b) {
  return a.row_reading_word() < b.row_reading_word();
}

namespace {

struct Enumerator {
  const Partition& shape;
  std::vector<int> remaining;  // multiplicities left for each value
  TabKind kind;
  std::vector<std::vector<int>> rows;
  std::vector<Filling>* out;

  bool admissible(int r, int c, int v) const {
    int maxv = static_cast<int>(remaining.size());
    if (v < 1 || v > maxv || remaining[v - 1] == 0) return false;
    if (kind == TabKind::ALL_FILLINGS) return true;
    bool row_strict = (kind == TabKind::RSYT || kind == TabKind::SYT);
    bool col_strict = (kind == TabKind::CSYT || kind == TabKind::SYT);
    if (c > 0) {
      int left = rows[r][c - 1];
      if (row_strict ? (left >= v) : (left > v)) return false;
    }
    if (r > 0 && c < static_cast<int>(rows[r - 1].size())) {
      int up = rows[r - 1][c];
      if (col_strict ? (up >= v) : (up > v)) return false;
    }
    return true;
  }

  // Fill boxes in row-major order trying small values first; complete
  // fillings are then produced in row-reading lexicographic order.
  void run(int r, int c) {
    if (r == shape.rows()) {
      out->push_back(Filling(shape, rows));
      return;
    }
    int nr = r, nc = c + 1;
    if (nc >= shape.part(r)) {
      nr = r + 1;
      nc = 0;
    }
    for (int v = 1; v <= static_cast<int>(remaining.size()); ++v) {
      if (!admissible(r, c, v)) continue;
      rows[r][c] = v;
      --remaining[v - 1];
      run(nr, nc);
      ++remaining[v - 1];
    }
  }
};

}  // namespace

std::vector<Filling> enumerate_tableaux(const Partition& shape, const std::vector<int>& content,
                                        TabKind kind) {
  int total = std::accumulate(content.begin(), content.end(), 0);
  require(total == shape.size(), Err::ShapeContentMismatch,
          "content weight must equal the number of boxes");
  for (int m : content) require(m >= 0, Err::BadInput, "content multiplicities must be >= 0");
  std::vector<Filling> out;
  if (shape.rows() == 0) {
    out.push_back(Filling(shape, {}));
    return out;
  }
  Enumerator e{shape, content, kind, {}, &out};
  e.rows.resize(shape.rows());
  for (int r = 0; r < shape.rows(); ++r) e.rows[r].resize(shape.part(r));
  e.run(0, 0);
  return out;
}

std::vector<Filling> enumerate_tableaux(const Partition& shape, const Signature& content,
                                        TabKind kind) {
  return enumerate_tableaux(shape, content.s, kind);
}

int kostka(const Partition& shape, const std::vector<int>& content) {
  if (!rsyt_exists(shape, content)) return 0;
  return static_cast<int>(enumerate_tableaux(shape, content, TabKind::RSYT).size());
}

int kostka(const Partition& shape, const Signature& content) { return kostka(shape, content.s); }

Filling standardize(const Filling& t, Reading reading) {
  std::vector<int> content = t.content();
  for (int m : content)
    require(m >= 1, Err::ContentMismatch, "standardize requires every value 1..max to appear");
  // p[k] = 1 + multiplicities of all smaller values; value k+1 is replaced by
  // the run p[k], p[k]+1, ..., assigned in reading-word order.
  std::vector<int> p(content.size());
  int acc = 1;
  for (std::size_t k = 0; k < content.size(); ++k) {
    p[k] = acc;
    acc += content[k];
  }
  std::vector<int> used(content.size(), 0);
  std::vector<std::vector<int>> rows = t.rows();
  auto assign = [&](int r, int c) {
    int v = rows[r][c];
    rows[r][c] = p[v - 1] + used[v - 1];
    ++used[v - 1];
  };
  if (reading == Reading::row_wise) {
    for (int r = 0; r < t.rows_count(); ++r)
      for (int c = 0; c < static_cast<int>(rows[r].size()); ++c) assign(r, c);
  } else {
    for (int c = 0; c < t.shape().cols(); ++c)
      for (int r = 0; r < t.rows_count(); ++r)
        if (c < static_cast<int>(rows[r].size())) assign(r, c);
  }
  return Filling(t.shape(), rows);
}

std::vector<int> row_content(const Filling& t, int a) {
  std::vector<int> ks;
  for (int c = 0; c < t.shape().cols(); ++c)
    for (int r = 0; r < t.rows_count(); ++r)
      if (c < static_cast<int>(t.rows()[r].size()) && t.rows()[r][c] == a) ks.push_back(r + 1);
  return ks;
}

std::vector<std::vector<int>> row_number_tuples(const Filling& t) {
  std::vector<std::vector<int>> ks(t.max_entry());
  for (int c = 0; c < t.shape().cols(); ++c)
    for (int r = 0; r < t.rows_count(); ++r)
      if (c < static_cast<int>(t.rows()[r].size())) ks[t.rows()[r][c] - 1].push_back(r + 1);
  return ks;
}

std::vector<int> row_number_sums(const Filling& t, int d) {
  std::vector<int> sums(d, 0);
  for (int r = 0; r < t.rows_count(); ++r)
    for (int v : t.rows()[r]) {
      require(v <= d, Err::IndexOutOfRange, "entry exceeds declared bound");
      sums[v - 1] += r + 1;
    }
  return sums;
}

bool rsyt_exists(const Partition& shape, const std::vector<int>& content) {
  // Row-strict tableaux of `shape` are column-strict tableaux of the conjugate
  // shape; those exist iff the conjugate dominates the sorted content.
  int total = std::accumulate(content.begin(), content.end(), 0);
  if (total != shape.size()) return false;
  Partition conj = shape.conjugate();
  std::vector<int> mu = content;
  std::sort(mu.begin(), mu.end(), std::greater<int>());
  int lam_acc = 0, mu_acc = 0;
  std::size_t k = std::max<std::size_t>(mu.size(), conj.parts().size());
  for (std::size_t i = 0; i < k; ++i) {
    lam_acc += i < conj.parts().size() ? conj.parts()[i] : 0;
    mu_acc += i < mu.size() ? mu[i] : 0;
    if (lam_acc < mu_acc) return false;
  }
  return true;
}

}  // namespace w3b
