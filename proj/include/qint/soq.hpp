#pragma once

// Structure data of SO_q(N): braided R-matrix of the orthogonal series,
// spectral projectors, quantum metric and D-matrix.  build() verifies the
// full identity suite at construction time and refuses to hand out data
// that fails any of it.

#include <memory>
#include <string>
#include <vector>

#include "qint/tensor.hpp"

namespace qint {

struct CheckItem {
  std::string name;
  bool pass = false;
  std::string witness;  // offending entry / value on failure
};

struct Report {
  std::vector<CheckItem> items;
  bool all_pass() const {
    for (const auto& c : items)
      if (!c.pass) return false;
    return true;
  }
  void add(std::string name, bool pass, std::string witness = "") {
    items.push_back({std::move(name), pass, std::move(witness)});
  }
};

struct SoqData {
  int n = 0;                    // dimension N >= 3
  std::vector<int> twice_rho;   // 2*rho_i, 1-based (index 0 unused)
  LabeledTensor rhat;           // rank 4
  LabeledTensor p_plus, p_minus, p_zero;
  LabeledTensor g_lower, g_upper;  // entrywise equal by construction
  LabeledTensor d_matrix;          // D^i_j = g^{ik} g_{jk}
  QScalar qdim;                    // g_{ij} g^{ij}

  int conj(int i) const { return n + 1 - i; }
};

// memoized; throws QError if the identity suite fails (convention bug)
std::shared_ptr<const SoqData> soq_build(int n);

// R-hat^{-1} = q^{-1} P+ - q P- + q^{N-1} P0
LabeledTensor soq_rhat_inverse(const SoqData& s);

// the full identity suite as a machine-readable report
Report soq_verify_structure(const SoqData& s);

}  // namespace qint
