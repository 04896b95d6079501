#include "symwave/filterbank.hpp"

namespace symwave {

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::FrameLike: return "framelike";
    case Provenance::FrameLikeReduced: return "framelike-reduced";
    case Provenance::Lifted: return "lifted";
    case Provenance::Frame: return "frame";
    case Provenance::SymmetrizedFrameLike: return "symmetrized-framelike";
    case Provenance::SymmetrizedLifted: return "symmetrized-lifted";
    case Provenance::SymmetrizedFrame: return "symmetrized-frame";
  }
  return "unknown";
}

bool is_symmetrized(Provenance p) {
  return p == Provenance::SymmetrizedFrameLike || p == Provenance::SymmetrizedLifted ||
         p == Provenance::SymmetrizedFrame;
}

namespace {

PolyMatrix<Complex> float_matrix(const PolyMatrix<QSqrt>& A) {
  PolyMatrix<Complex> out;
  for (const auto& row : A) {
    out.emplace_back();
    for (const auto& t : row) out.back().push_back(to_float(t));
  }
  return out;
}

}  // namespace

FilterBankPair<Complex> to_float(const FilterBankPair<QSqrt>& bank) {
  FilterBankPair<Complex> out;
  out.ctx = bank.ctx;
  out.provenance = bank.provenance;
  out.order = bank.order;
  for (const auto& t : bank.primal) out.primal.push_back(to_float(t));
  for (const auto& t : bank.dual) out.dual.push_back(to_float(t));
  out.labels = bank.labels;
  out.ext = float_matrix(bank.ext);
  out.ext_dual = float_matrix(bank.ext_dual);
  out.required_primal_vm = bank.required_primal_vm;
  out.required_dual_vm = bank.required_dual_vm;
  out.verified = bank.verified;
  out.residual = bank.residual;
  out.notes = bank.notes;
  out.laws = bank.laws;
  out.laws_dual = bank.laws_dual;
  return out;
}

}  // namespace symwave
