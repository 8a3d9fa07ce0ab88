#include "qint/soq.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace qint {

namespace {

std::string idx_str(const Idx& idx) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << int(idx[i]);
  os << ")";
  return os.str();
}

std::string first_diff(const LabeledTensor& a, const LabeledTensor& b) {
  for (const auto& [idx, v] : a.entries()) {
    if (!(b.at(idx) == v)) return idx_str(idx) + ": " + v.str() + " vs " + b.at(idx).str();
  }
  for (const auto& [idx, v] : b.entries()) {
    if (a.at(idx).is_zero()) return idx_str(idx) + ": 0 vs " + v.str();
  }
  return "";
}

std::vector<int> make_twice_rho(int n) {
  std::vector<int> t(static_cast<size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    if (n % 2 == 1 && i == (n + 1) / 2)
      t[static_cast<size_t>(i)] = 0;
    else if (i <= n / 2)
      t[static_cast<size_t>(i)] = n - 2 * i;
    else
      t[static_cast<size_t>(i)] = -(n - 2 * (n + 1 - i));
  }
  return t;
}

// the orthogonal-series R-matrix, then braided as rhat^{ij}_{kl} = R^{ji}_{kl}
LabeledTensor make_rhat(int n, const std::vector<int>& trho) {
  auto ip = [n](int i) { return n + 1 - i; };
  QScalar lam = QScalar::q_lambda();
  LabeledTensor r(4, n,
                  {Variance::Upper, Variance::Upper, Variance::Lower, Variance::Lower});
  auto add = [&](int i, int j, int k, int l, const QScalar& v) {
    r.add_at({uint8_t(i), uint8_t(j), uint8_t(k), uint8_t(l)}, v);
  };
  // diagonal part of R: R^{ab}_{ab}
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b) {
      QScalar c;
      if (a == b)
        c = (a == ip(a)) ? QScalar(1) : QScalar::q_pow(1);
      else if (b == ip(a))
        c = QScalar::q_pow(-1);
      else
        c = QScalar(1);
      add(b, a, a, b, c);  // flip applied: rhat^{ba}_{ab} = R^{ab}_{ab}
    }
  // exchange part: R^{ab}_{ba} += lambda for a > b
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b < a; ++b) add(b, a, b, a, lam);
  // conjugate-pair part: R^{a a'}_{b b'} -= lambda q^{rho_a - rho_b}, a > b
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b < a; ++b) {
      QScalar w = lam * QScalar::u_pow(trho[size_t(a)] - trho[size_t(b)]);
      add(ip(a), a, b, ip(b), -w);  // flip of R^{a a'}_{b b'}
    }
  return r;
}

}  // namespace

LabeledTensor soq_rhat_inverse(const SoqData& s) {
  LabeledTensor out = s.p_plus.scale(QScalar::q_pow(-1));
  out = out.add(s.p_minus.scale(-QScalar::q_pow(1)));
  out = out.add(s.p_zero.scale(QScalar::q_pow(s.n - 1)));
  return out;
}

Report soq_verify_structure(const SoqData& s) {
  Report rep;
  const int n = s.n;
  QScalar q = QScalar::q();
  QScalar qi = QScalar::q_pow(-1);
  QScalar q1n = QScalar::q_pow(1 - n);
  LabeledTensor id = LabeledTensor::identity2(n);

  // R = q P+ - q^-1 P- + q^(1-N) P0
  {
    LabeledTensor rhs = s.p_plus.scale(q).add(s.p_minus.scale(-qi)).add(s.p_zero.scale(q1n));
    rep.add("projector_decomposition", rhs.equal(s.rhat), first_diff(s.rhat, rhs));
  }
  // completeness and orthogonal idempotents
  {
    LabeledTensor sum = s.p_plus.add(s.p_minus).add(s.p_zero);
    rep.add("projector_completeness", sum.equal(id), first_diff(sum, id));
    const LabeledTensor* ps[3] = {&s.p_plus, &s.p_minus, &s.p_zero};
    const char* names[3] = {"p_plus", "p_minus", "p_zero"};
    bool ok = true;
    std::string w;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        LabeledTensor prod = LabeledTensor::compose2(*ps[a], *ps[b]);
        const LabeledTensor& want = (a == b) ? *ps[a] : LabeledTensor(4, n);
        if (!prod.equal(want)) {
          ok = false;
          w = std::string(names[a]) + "*" + names[b] + " " + first_diff(prod, want);
        }
      }
    rep.add("projector_idempotent_orthogonal", ok, w);
  }
  // P0 display: (q^2-1)/((q^N-1)(q^{2-N}+1)) g^{ij} g_{kl}
  {
    QScalar alpha = (QScalar::q_pow(1) - 1) * (QScalar::q_pow(1) + 1);
    alpha /= (QScalar::q_pow(n) - 1) * (QScalar::q_pow(2 - n) + 1);
    LabeledTensor gg(4, n);
    for (const auto& [gi, gv] : s.g_upper.entries())
      for (const auto& [gj, gw] : s.g_lower.entries())
        gg.add_at({gi[0], gi[1], gj[0], gj[1]}, gv * gw * alpha);
    rep.add("pzero_display", gg.equal(s.p_zero), first_diff(s.p_zero, gg));
  }
  // g_{ik} g^{kj} = delta_i^j
  {
    LabeledTensor d = LabeledTensor::contract(s.g_lower, 1, s.g_upper, 0);
    rep.add("metric_inverse", d.equal(LabeledTensor::delta(n)),
            first_diff(d, LabeledTensor::delta(n)));
  }
  rep.add("metric_upper_equals_lower", s.g_upper.entries() == s.g_lower.entries(), "");
  // D^i_l = g^{ik} g_{lk}; diagonal; integer q powers; det D = 1
  {
    LabeledTensor d = LabeledTensor::contract(s.g_upper, 1, s.g_lower, 1);
    bool ok = d.equal(s.d_matrix);
    std::string w = ok ? "" : first_diff(d, s.d_matrix);
    QScalar det = 1;
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        QScalar v = s.d_matrix.at({uint8_t(i), uint8_t(j)});
        if (i != j && !v.is_zero()) {
          ok = false;
          w = "offdiagonal D" + idx_str({uint8_t(i), uint8_t(j)});
        }
      }
      QScalar di = s.d_matrix.at({uint8_t(i), uint8_t(i)});
      if (!di.is_integer_q_power()) {
        ok = false;
        w = "D entry not an integer power of q: " + di.str();
      }
      det *= di;
    }
    rep.add("dmatrix_definition", ok, w);
    rep.add("det_d_one", det.is_one(), det.str());
  }
  // braid relation on the 3-fold space
  {
    LabeledTensor r12 = LabeledTensor::lift_op(s.rhat, 3, 0);
    LabeledTensor r23 = LabeledTensor::lift_op(s.rhat, 3, 1);
    LabeledTensor lhs = LabeledTensor::compose_op(LabeledTensor::compose_op(r12, r23, 3), r12, 3);
    LabeledTensor rhs = LabeledTensor::compose_op(LabeledTensor::compose_op(r23, r12, 3), r23, 3);
    rep.add("braid_relation", lhs.equal(rhs), first_diff(lhs, rhs));
  }
  // symmetry (entries are rational in q^(1/2), hence real)
  {
    bool ok = true;
    std::string w;
    for (const auto& [idx, v] : s.rhat.entries()) {
      Idx t = {idx[2], idx[3], idx[0], idx[1]};
      if (!(s.rhat.at(t) == v)) {
        ok = false;
        w = idx_str(idx);
        break;
      }
    }
    rep.add("rhat_symmetric_real", ok, w);
  }
  // projector ranks at a generic rational point (q0 = 4 keeps u rational)
  {
    Rational q0(4);
    int rp = s.p_plus.rank_at(q0, 2);
    int rm = s.p_minus.rank_at(q0, 2);
    int r0 = s.p_zero.rank_at(q0, 2);
    bool ok = rp == n * (n + 1) / 2 - 1 && rm == n * (n - 1) / 2 && r0 == 1;
    std::ostringstream os;
    os << rp << "," << rm << "," << r0;
    rep.add("projector_ranks", ok, ok ? "" : os.str());
  }
  // quantum dimension: g_{ij} g^{ij} = sum_i D^i_i, classical value N
  {
    QScalar tr;
    for (int i = 1; i <= n; ++i) tr += s.d_matrix.at({uint8_t(i), uint8_t(i)});
    bool ok = tr == s.qdim && s.qdim.eval_rational(1) == Rational(n);
    rep.add("qdim_trace", ok, tr.str());
  }
  // classical limit: rhat(1) is the flip, g(1) is a 0/1 antidiagonal
  {
    bool ok = true;
    std::string w;
    for (int i = 1; i <= n && ok; ++i)
      for (int j = 1; j <= n && ok; ++j) {
        for (int k = 1; k <= n && ok; ++k)
          for (int l = 1; l <= n && ok; ++l) {
            Rational v = s.rhat.at({uint8_t(i), uint8_t(j), uint8_t(k), uint8_t(l)})
                             .eval_rational(1);
            Rational want = (i == l && j == k) ? 1 : 0;
            if (v != want) {
              ok = false;
              w = "rhat" + idx_str({uint8_t(i), uint8_t(j), uint8_t(k), uint8_t(l)});
            }
          }
        Rational g1 = s.g_lower.at({uint8_t(i), uint8_t(j)}).eval_rational(1);
        if (g1 != ((j == n + 1 - i) ? 1 : 0)) {
          ok = false;
          w = "g" + idx_str({uint8_t(i), uint8_t(j)});
        }
      }
    rep.add("classical_limit", ok, w);
  }
  // rhat * rhat^{-1} = identity and the eigenvalue-inverted combination
  {
    LabeledTensor rinv = soq_rhat_inverse(s);
    LabeledTensor prod = LabeledTensor::compose2(s.rhat, rinv);
    rep.add("rhat_inverse", prod.equal(LabeledTensor::identity2(n)),
            first_diff(prod, LabeledTensor::identity2(n)));
  }
  return rep;
}

std::shared_ptr<const SoqData> soq_build(int n) {
  if (n < 3) throw QError("N >= 3 required: Euclidean space is undeformed for N = 1, 2");
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const SoqData>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }

  auto s = std::make_shared<SoqData>();
  s->n = n;
  s->twice_rho = make_twice_rho(n);
  s->rhat = make_rhat(n, s->twice_rho);

  // metric g_{ij} = q^{-rho_i} delta_{i j'}, self-inverse, g^{ij} = g_{ij}
  s->g_lower = LabeledTensor(2, n, {Variance::Lower, Variance::Lower});
  for (int i = 1; i <= n; ++i)
    s->g_lower.set({uint8_t(i), uint8_t(n + 1 - i)}, QScalar::u_pow(-s->twice_rho[size_t(i)]));
  s->g_upper = LabeledTensor(2, n, {Variance::Upper, Variance::Upper});
  for (const auto& [idx, v] : s->g_lower.entries()) s->g_upper.set(idx, v);

  s->d_matrix = LabeledTensor::contract(s->g_upper, 1, s->g_lower, 1);
  s->qdim = LabeledTensor::contract(LabeledTensor::contract(s->g_lower, 0, s->g_upper, 0),
                                    0, LabeledTensor::delta(n), 0)
                .at(Idx{});
  // recover the projectors from rhat by Lagrange interpolation on the
  // eigenvalues q, -q^-1, q^(1-N)
  QScalar ev[3] = {QScalar::q_pow(1), -QScalar::q_pow(-1), QScalar::q_pow(1 - n)};
  LabeledTensor id = LabeledTensor::identity2(n);
  LabeledTensor* out[3] = {&s->p_plus, &s->p_minus, &s->p_zero};
  for (int a = 0; a < 3; ++a) {
    LabeledTensor acc = id;
    QScalar denom = 1;
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      acc = LabeledTensor::compose2(acc, s->rhat.add(id.scale(-ev[b])));
      denom *= ev[a] - ev[b];
    }
    *out[a] = acc.scale(denom.inverse());
  }

  Report rep = soq_verify_structure(*s);
  if (!rep.all_pass()) {
    std::string msg = "soq structure suite failed:";
    for (const auto& c : rep.items)
      if (!c.pass) msg += " " + c.name + "[" + c.witness + "]";
    throw QError(msg);
  }

  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(n, std::move(s));
  return it->second;
}

}  // namespace qint
