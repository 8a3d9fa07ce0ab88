#pragma once

// Sparse multi-index tensors over QScalar.  Indices run 1..dim, matching the
// conventions of the structure data they hold.  Variance tags are advisory
// bookkeeping and are not enforced in contractions.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qint/qscalar.hpp"

namespace qint {

using Idx = std::vector<uint8_t>;

enum class Variance : uint8_t { Upper, Lower };

class LabeledTensor {
 public:
  LabeledTensor() = default;
  LabeledTensor(int rank, int dim, std::vector<Variance> variance = {});

  static LabeledTensor delta(int dim);      // rank 2 identity
  static LabeledTensor identity2(int dim);  // rank 4, identity on the 2-fold slot space

  int rank() const { return rank_; }
  int dim() const { return dim_; }
  const std::vector<Variance>& variance() const { return variance_; }
  const std::map<Idx, QScalar>& entries() const { return entries_; }

  QScalar at(const Idx& idx) const;
  void set(const Idx& idx, QScalar v);
  void add_at(const Idx& idx, const QScalar& v);

  bool is_zero() const { return entries_.empty(); }
  size_t nnz() const { return entries_.size(); }

  LabeledTensor scale(const QScalar& s) const;
  LabeledTensor add(const LabeledTensor& o) const;
  LabeledTensor sub(const LabeledTensor& o) const;
  bool equal(const LabeledTensor& o) const;

  // single-index contraction; result slots: a's (minus slot_a) then b's
  // (minus slot_b), in order.  slots are 0-based.
  static LabeledTensor contract(const LabeledTensor& a, int slot_a, const LabeledTensor& b,
                                int slot_b);

  // (ab)^{ij}_{kl} = a^{ij}_{mn} b^{mn}_{kl} on rank-4 tensors
  static LabeledTensor compose2(const LabeledTensor& a, const LabeledTensor& b);

  // operator composition on the k-fold slot space: both rank 2k,
  // slots [0,k) upper and [k,2k) lower
  static LabeledTensor compose_op(const LabeledTensor& a, const LabeledTensor& b, int k);

  // apply a rank-4 operator to adjacent slots (l, l+1) of t, 0-based l;
  // result keeps the slot positions of t
  static LabeledTensor apply_pair(const LabeledTensor& op4, const LabeledTensor& t, int l);

  // contract slots (l, l+1) of t with a rank-2 tensor g: g_{ab} t^{..a b..}
  static LabeledTensor trace_pair(const LabeledTensor& g2, const LabeledTensor& t, int l);

  // lift a rank-4 operator to an operator on the k-fold space acting on
  // slots (pos, pos+1), identity elsewhere
  static LabeledTensor lift_op(const LabeledTensor& op4, int k, int pos);

  // rank of the linear map on the k-fold slot space, evaluated exactly at
  // rational q0 (slots [0,k) row, [k,2k) column)
  int rank_at(const Rational& q0, int k) const;

  // evaluate every entry at q0; requires rational values
  std::vector<std::pair<Idx, Rational>> eval_all(const Rational& q0) const;

 private:
  int rank_ = 0;
  int dim_ = 0;
  std::vector<Variance> variance_;
  std::map<Idx, QScalar> entries_;
};

}  // namespace qint
