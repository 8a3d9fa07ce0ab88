#include "qint/tensor.hpp"

#include <algorithm>
#include <stdexcept>

namespace qint {

LabeledTensor::LabeledTensor(int rank, int dim, std::vector<Variance> variance)
    : rank_(rank), dim_(dim), variance_(std::move(variance)) {
  if (variance_.empty()) variance_.assign(static_cast<size_t>(rank), Variance::Upper);
  if (static_cast<int>(variance_.size()) != rank) throw QError("variance length != rank");
}

LabeledTensor LabeledTensor::delta(int dim) {
  LabeledTensor t(2, dim, {Variance::Upper, Variance::Lower});
  for (uint8_t i = 1; i <= dim; ++i) t.set({i, i}, 1);
  return t;
}

LabeledTensor LabeledTensor::identity2(int dim) {
  LabeledTensor t(4, dim, {Variance::Upper, Variance::Upper, Variance::Lower, Variance::Lower});
  for (uint8_t i = 1; i <= dim; ++i)
    for (uint8_t j = 1; j <= dim; ++j) t.set({i, j, i, j}, 1);
  return t;
}

QScalar LabeledTensor::at(const Idx& idx) const {
  auto it = entries_.find(idx);
  return it == entries_.end() ? QScalar() : it->second;
}

void LabeledTensor::set(const Idx& idx, QScalar v) {
  if (static_cast<int>(idx.size()) != rank_) throw QError("index length != rank");
  for (auto i : idx)
    if (i < 1 || i > dim_) throw QError("index out of range");
  if (v.is_zero())
    entries_.erase(idx);
  else
    entries_[idx] = std::move(v);
}

void LabeledTensor::add_at(const Idx& idx, const QScalar& v) {
  if (v.is_zero()) return;
  auto it = entries_.find(idx);
  if (it == entries_.end()) {
    set(idx, v);
  } else {
    it->second += v;
    if (it->second.is_zero()) entries_.erase(it);
  }
}

LabeledTensor LabeledTensor::scale(const QScalar& s) const {
  LabeledTensor out(rank_, dim_, variance_);
  if (s.is_zero()) return out;
  for (const auto& [idx, v] : entries_) out.entries_[idx] = v * s;
  return out;
}

LabeledTensor LabeledTensor::add(const LabeledTensor& o) const {
  if (rank_ != o.rank_ || dim_ != o.dim_) throw QError("shape mismatch in add");
  LabeledTensor out = *this;
  for (const auto& [idx, v] : o.entries_) out.add_at(idx, v);
  return out;
}

LabeledTensor LabeledTensor::sub(const LabeledTensor& o) const { return add(o.scale(QScalar(-1))); }

bool LabeledTensor::equal(const LabeledTensor& o) const {
  return rank_ == o.rank_ && dim_ == o.dim_ && entries_ == o.entries_;
}

LabeledTensor LabeledTensor::contract(const LabeledTensor& a, int slot_a, const LabeledTensor& b,
                                      int slot_b) {
  if (a.dim_ != b.dim_) throw QError("dimension mismatch in contract");
  if (slot_a < 0 || slot_a >= a.rank_ || slot_b < 0 || slot_b >= b.rank_)
    throw QError("slot out of range");
  std::vector<Variance> var;
  for (int s = 0; s < a.rank_; ++s)
    if (s != slot_a) var.push_back(a.variance_[static_cast<size_t>(s)]);
  for (int s = 0; s < b.rank_; ++s)
    if (s != slot_b) var.push_back(b.variance_[static_cast<size_t>(s)]);
  LabeledTensor out(a.rank_ + b.rank_ - 2, a.dim_, var);

  // bucket b's entries by the contracted index value
  std::vector<std::vector<std::pair<Idx, const QScalar*>>> buckets(
      static_cast<size_t>(a.dim_) + 1);
  for (const auto& [idx, v] : b.entries_) {
    Idx rest;
    rest.reserve(idx.size() - 1);
    for (size_t s = 0; s < idx.size(); ++s)
      if (static_cast<int>(s) != slot_b) rest.push_back(idx[s]);
    buckets[idx[static_cast<size_t>(slot_b)]].emplace_back(std::move(rest), &v);
  }
  for (const auto& [idx, v] : a.entries_) {
    uint8_t key = idx[static_cast<size_t>(slot_a)];
    if (buckets[key].empty()) continue;
    Idx head;
    head.reserve(idx.size() - 1);
    for (size_t s = 0; s < idx.size(); ++s)
      if (static_cast<int>(s) != slot_a) head.push_back(idx[s]);
    for (const auto& [rest, bv] : buckets[key]) {
      Idx full = head;
      full.insert(full.end(), rest.begin(), rest.end());
      out.add_at(full, v * *bv);
    }
  }
  return out;
}

LabeledTensor LabeledTensor::compose2(const LabeledTensor& a, const LabeledTensor& b) {
  if (a.rank_ != 4 || b.rank_ != 4) throw QError("compose2 needs rank-4 tensors");
  return compose_op(a, b, 2);
}

LabeledTensor LabeledTensor::compose_op(const LabeledTensor& a, const LabeledTensor& b, int k) {
  if (a.rank_ != 2 * k || b.rank_ != 2 * k || a.dim_ != b.dim_)
    throw QError("rank mismatch in compose_op");
  LabeledTensor out(2 * k, a.dim_, a.variance_);
  std::map<Idx, std::vector<std::pair<Idx, const QScalar*>>> by_upper;
  for (const auto& [idx, v] : b.entries_) {
    Idx up(idx.begin(), idx.begin() + k), down(idx.begin() + k, idx.end());
    by_upper[up].emplace_back(std::move(down), &v);
  }
  for (const auto& [idx, v] : a.entries_) {
    Idx up(idx.begin(), idx.begin() + k), mid(idx.begin() + k, idx.end());
    auto it = by_upper.find(mid);
    if (it == by_upper.end()) continue;
    for (const auto& [down, bv] : it->second) {
      Idx full = up;
      full.insert(full.end(), down.begin(), down.end());
      out.add_at(full, v * *bv);
    }
  }
  return out;
}

LabeledTensor LabeledTensor::apply_pair(const LabeledTensor& op4, const LabeledTensor& t, int l) {
  if (op4.rank_ != 4) throw QError("apply_pair needs a rank-4 operator");
  if (l < 0 || l + 1 >= t.rank_) throw QError("slot out of range");
  LabeledTensor out(t.rank_, t.dim_, t.variance_);
  // bucket op entries by lower index pair
  std::map<std::pair<uint8_t, uint8_t>, std::vector<std::pair<std::pair<uint8_t, uint8_t>,
                                                              const QScalar*>>> rows;
  for (const auto& [idx, v] : op4.entries_)
    rows[{idx[2], idx[3]}].emplace_back(std::make_pair(idx[0], idx[1]), &v);
  for (const auto& [idx, v] : t.entries_) {
    auto it = rows.find({idx[static_cast<size_t>(l)], idx[static_cast<size_t>(l) + 1]});
    if (it == rows.end()) continue;
    for (const auto& [up, ov] : it->second) {
      Idx full = idx;
      full[static_cast<size_t>(l)] = up.first;
      full[static_cast<size_t>(l) + 1] = up.second;
      out.add_at(full, v * *ov);
    }
  }
  return out;
}

LabeledTensor LabeledTensor::trace_pair(const LabeledTensor& g2, const LabeledTensor& t, int l) {
  if (g2.rank_ != 2) throw QError("trace_pair needs a rank-2 tensor");
  if (l < 0 || l + 1 >= t.rank_) throw QError("slot out of range");
  std::vector<Variance> var;
  for (int s = 0; s < t.rank_; ++s)
    if (s != l && s != l + 1) var.push_back(t.variance_[static_cast<size_t>(s)]);
  LabeledTensor out(t.rank_ - 2, t.dim_, var);
  for (const auto& [idx, v] : t.entries_) {
    QScalar w = g2.at({idx[static_cast<size_t>(l)], idx[static_cast<size_t>(l) + 1]});
    if (w.is_zero()) continue;
    Idx rest;
    rest.reserve(idx.size() - 2);
    for (size_t s = 0; s < idx.size(); ++s)
      if (static_cast<int>(s) != l && static_cast<int>(s) != l + 1) rest.push_back(idx[s]);
    out.add_at(rest, v * w);
  }
  return out;
}

LabeledTensor LabeledTensor::lift_op(const LabeledTensor& op4, int k, int pos) {
  if (op4.rank_ != 4) throw QError("lift_op needs a rank-4 operator");
  if (pos < 0 || pos + 1 >= k) throw QError("lift position out of range");
  int dim = op4.dim_;
  LabeledTensor out(2 * k, dim);
  // enumerate identity legs
  std::vector<uint8_t> spect(static_cast<size_t>(k - 2), 1);
  bool done = false;
  while (!done) {
    for (const auto& [idx, v] : op4.entries_) {
      Idx up, down;
      size_t si = 0;
      for (int s = 0; s < k; ++s) {
        if (s == pos) {
          up.push_back(idx[0]);
          down.push_back(idx[2]);
        } else if (s == pos + 1) {
          up.push_back(idx[1]);
          down.push_back(idx[3]);
        } else {
          up.push_back(spect[si]);
          down.push_back(spect[si]);
          ++si;
        }
      }
      Idx full = up;
      full.insert(full.end(), down.begin(), down.end());
      out.add_at(full, v);
    }
    done = true;
    for (size_t s = 0; s < spect.size(); ++s) {
      if (spect[s] < dim) {
        ++spect[s];
        for (size_t t = 0; t < s; ++t) spect[t] = 1;
        done = false;
        break;
      }
    }
    if (spect.empty()) break;
  }
  return out;
}

int LabeledTensor::rank_at(const Rational& q0, int k) const {
  if (rank_ != 2 * k) throw QError("rank_at: tensor is not an operator");
  // dense Gaussian elimination over Q
  long side = 1;
  for (int s = 0; s < k; ++s) side *= dim_;
  std::vector<std::vector<Rational>> m(static_cast<size_t>(side),
                                       std::vector<Rational>(static_cast<size_t>(side), 0));
  auto flat = [&](const uint8_t* p) {
    long f = 0;
    for (int s = 0; s < k; ++s) f = f * dim_ + (p[s] - 1);
    return static_cast<size_t>(f);
  };
  for (const auto& [idx, v] : entries_) {
    Rational val = v.eval_rational(q0);
    m[flat(idx.data())][flat(idx.data() + k)] += val;
  }
  int rank = 0;
  size_t row = 0;
  for (size_t col = 0; col < static_cast<size_t>(side) && row < static_cast<size_t>(side); ++col) {
    size_t piv = row;
    while (piv < m.size() && sgn(m[piv][col]) == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[row]);
    for (size_t r = row + 1; r < m.size(); ++r) {
      if (sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col] / m[row][col];
      for (size_t c = col; c < m[r].size(); ++c) m[r][c] -= f * m[row][c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

std::vector<std::pair<Idx, Rational>> LabeledTensor::eval_all(const Rational& q0) const {
  std::vector<std::pair<Idx, Rational>> out;
  out.reserve(entries_.size());
  for (const auto& [idx, v] : entries_) out.emplace_back(idx, v.eval_rational(q0));
  return out;
}

}  // namespace qint
