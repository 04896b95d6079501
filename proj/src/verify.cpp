#include "symwave/verify.hpp"

namespace symwave {

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& r) { return r.passed; });
}

const CheckRecord* VerificationReport::find(const std::string& name) const {
  for (const auto& r : checks)
    if (r.name == name) return &r;
  return nullptr;
}

void VerificationReport::normalize() {
  std::stable_sort(checks.begin(), checks.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
}

void require(const std::vector<CheckRecord>& records, const std::string& stage) {
  for (const auto& r : records) {
    if (r.passed) continue;
    std::string msg = stage + ": " + r.name + " failed";
    for (const auto& w : r.witnesses) msg += "; " + w;
    throw Error(ErrorKind::VerificationFailed, msg);
  }
}

std::vector<double> halton_point(std::uint64_t index, std::size_t dim) {
  static const std::uint32_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  std::vector<double> out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::uint32_t base = primes[i % 16];
    double f = 1.0, r = 0.0;
    for (std::uint64_t k = index; k > 0; k /= base) {
      f /= base;
      r += f * static_cast<double>(k % base);
    }
    out[i] = r;
  }
  return out;
}

}  // namespace symwave
