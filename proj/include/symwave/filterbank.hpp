#pragma once

#include "symwave/polyphase.hpp"
#include "symwave/predicates.hpp"
#include "symwave/symmetry.hpp"

#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace symwave {

template <class C>
using PolyMatrix = std::vector<std::vector<TrigPoly<C>>>;

template <class C>
PolyMatrix<C> mul(const PolyMatrix<C>& A, const PolyMatrix<C>& B) {
  std::size_t n = A.size(), k = B.size(), p = B.empty() ? 0 : B.front().size();
  std::size_t dim = k && p ? B[0][0].dim() : 0;
  PolyMatrix<C> out(n, std::vector<TrigPoly<C>>(p, TrigPoly<C>(dim)));
  for (std::size_t i = 0; i < n; ++i) {
    if (A[i].size() != k) throw Error(ErrorKind::InternalInconsistency, "polynomial matrix shapes differ");
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t l = 0; l < k; ++l)
        if (!A[i][l].is_zero() && !B[l][j].is_zero()) out[i][j] += A[i][l] * B[l][j];
  }
  return out;
}

template <class C>
PolyMatrix<C> conj_transpose(const PolyMatrix<C>& A) {
  if (A.empty()) return {};
  PolyMatrix<C> out(A.front().size(), std::vector<TrigPoly<C>>(A.size()));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < A[i].size(); ++j) out[j][i] = A[i][j].conjugate();
  return out;
}

/// Rows are the polyphase decompositions of the masks.
template <class C>
PolyMatrix<C> polyphase_matrix(const std::vector<TrigPoly<C>>& masks, const DilationContext& dil) {
  PolyMatrix<C> out;
  for (const auto& t : masks) out.push_back(polyphase_decompose(t, dil));
  return out;
}

struct IdentityCheck {
  bool passed = true;
  double residual = 0.0;
  std::vector<std::string> witnesses;
};

template <class C>
std::string coeff_string(const C& c) {
  if constexpr (CoeffTraits<C>::exact) {
    return c.to_string();
  } else {
    std::ostringstream os;
    os.precision(6);
    os << "[" << c.real() << "," << c.imag() << "]";
    return os.str();
  }
}

/// Compares A to the identity; exact entries must match term by term.
template <class C>
IdentityCheck identity_check(const PolyMatrix<C>& A, std::size_t dim, double tol = kPredicateTolerance) {
  IdentityCheck out;
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (A[i].size() != A.size()) {
      out.passed = false;
      out.witnesses.push_back("matrix is not square");
      return out;
    }
    for (std::size_t j = 0; j < A[i].size(); ++j) {
      TrigPoly<C> d = A[i][j];
      if (i == j) d.add_term(zero_vec(dim), -CoeffTraits<C>::one());
      double res = d.max_abs();
      out.residual = std::max(out.residual, res);
      bool bad = CoeffTraits<C>::exact ? !d.is_zero() : res > tol;
      if (!bad) continue;
      out.passed = false;
      if (out.witnesses.size() < 8) {
        auto it = d.terms().begin();
        for (auto jt = d.terms().begin(); jt != d.terms().end(); ++jt)
          if (CoeffTraits<C>::magnitude(jt->second) > CoeffTraits<C>::magnitude(it->second)) it = jt;
        out.witnesses.push_back("entry (" + std::to_string(i) + "," + std::to_string(j) + ") exponent " +
                                to_string(it->first) + " off by " + coeff_string(it->second));
      }
    }
  }
  return out;
}

enum class MaskRole { Refinable, Wavelet, LastRow };

struct MaskLabel {
  MaskRole role = MaskRole::Refinable;
  std::size_t p = 0;
  std::size_t i = 0;

  std::string name() const {
    switch (role) {
      case MaskRole::Refinable: return "refinable";
      case MaskRole::LastRow: return "last-row";
      case MaskRole::Wavelet: break;
    }
    return "wavelet(" + std::to_string(p) + "," + std::to_string(i) + ")";
  }
  friend bool operator==(const MaskLabel&, const MaskLabel&) = default;
};

enum class Provenance {
  FrameLike,
  FrameLikeReduced,
  Lifted,
  Frame,
  SymmetrizedFrameLike,
  SymmetrizedLifted,
  SymmetrizedFrame,
};

const char* to_string(Provenance p);
bool is_symmetrized(Provenance p);

/// Predicted t(K^T xi) = eps e^{2pi i(r,xi)} t(xi) for group element K.
struct ExpectedLaw {
  std::size_t element = 0;
  Complex eps{1.0, 0.0};
  IVec r;
};

/// Primal and dual masks with their square polyphase extensions.
/// Index 0 is the refinable pair; rows of ext/ext_dual follow the masks.
template <class C>
struct FilterBankPair {
  std::shared_ptr<const Contexts> ctx;
  Provenance provenance = Provenance::FrameLike;
  int order = 0;
  std::vector<TrigPoly<C>> primal;
  std::vector<TrigPoly<C>> dual;
  std::vector<MaskLabel> labels;
  PolyMatrix<C> ext;
  PolyMatrix<C> ext_dual;
  int required_primal_vm = 0;
  int required_dual_vm = 0;
  bool verified = false;
  double residual = 0.0;
  std::vector<std::string> notes;
  /// Per mask, symmetrized banks only; empty entries carry no prediction.
  std::vector<std::vector<ExpectedLaw>> laws;
  std::vector<std::vector<ExpectedLaw>> laws_dual;

  std::size_t size() const { return primal.size(); }
  std::size_t wavelet_count() const { return primal.empty() ? 0 : primal.size() - 1; }

  std::optional<std::size_t> find(std::size_t p, std::size_t i) const {
    for (std::size_t v = 0; v < labels.size(); ++v)
      if (labels[v].role == MaskRole::Wavelet && labels[v].p == p && labels[v].i == i) return v;
    return std::nullopt;
  }
};

template <class C>
void append_mask(FilterBankPair<C>& bank, MaskLabel label, std::vector<TrigPoly<C>> row, std::vector<TrigPoly<C>> row_dual) {
  const auto& dil = bank.ctx->dil;
  std::vector<TrigPoly<C>> head(row.begin(), row.begin() + dil.m);
  std::vector<TrigPoly<C>> head_dual(row_dual.begin(), row_dual.begin() + dil.m);
  bank.primal.push_back(polyphase_recompose(head, dil));
  bank.dual.push_back(polyphase_recompose(head_dual, dil));
  bank.labels.push_back(label);
  bank.ext.push_back(std::move(row));
  bank.ext_dual.push_back(std::move(row_dual));
}

/// N N~^* on the square extension.
template <class C>
IdentityCheck extension_identity(const FilterBankPair<C>& bank, double tol = kPredicateTolerance) {
  return identity_check(mul(bank.ext, conj_transpose(bank.ext_dual)), bank.ctx->dim(), tol);
}

/// M^* M~ on the polyphase matrices of the masks.
template <class C>
IdentityCheck polyphase_identity(const FilterBankPair<C>& bank, double tol = kPredicateTolerance) {
  auto P = polyphase_matrix(bank.primal, bank.ctx->dil);
  auto Q = polyphase_matrix(bank.dual, bank.ctx->dil);
  return identity_check(mul(conj_transpose(P), Q), bank.ctx->dim(), tol);
}

/// Exact input converted to the coefficient type of a construction.
template <class C>
TrigPoly<C> as_backend(const ExactPoly& t) {
  if constexpr (CoeffTraits<C>::exact) return t;
  else return to_float(t);
}

FilterBankPair<Complex> to_float(const FilterBankPair<QSqrt>& bank);

}  // namespace symwave
