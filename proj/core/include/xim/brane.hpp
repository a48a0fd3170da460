#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "xim/kernel.hpp"
#include "xim/scalar.hpp"

namespace xim::brane {

struct BraneConfig {
  std::vector<Complex> eigenvalues;
  Scalar confluence_tol;  // spacings below this switch to derivative rows

  explicit BraneConfig(std::vector<Complex> zs, Scalar tol = Scalar())
      : eigenvalues(std::move(zs)), confluence_tol(std::move(tol)) {}
};

/// G_m(z) = int phi^m g(phi) e^{iz phi} dphi; rotated-ray contour for the
/// Airy kernel, folded real line for even kernels.
Complex moment_transform(const KernelSpec& kernel, int m, const Complex& z, unsigned digits = 0);

/// Cache of moment values keyed by (m, z); idempotent and shareable.
class MomentTable {
 public:
  MomentTable(KernelSpec kernel, unsigned digits);
  Complex get(int m, const Complex& z);
  const std::string& kernel_name() const { return name_; }
  int max_m() const { return max_m_; }

 private:
  KernelSpec kernel_;
  std::string name_;
  unsigned digits_;
  int max_m_ = 0;
  std::map<std::pair<int, std::pair<std::string, std::string>>, Complex> entries_;
  std::mutex mutex_;
};

/// Determinantal n-brane reduction: i^{-n(n-1)/2} det[G_{j-1}(z_i)] / Delta(z)
/// with coincident eigenvalue groups handled by derivative rows. The phase
/// fixes the measure normalization so n = 1 reduces to the scalar value and
/// even-kernel all-real configurations come out real.
Complex brane_partition(const KernelSpec& kernel, const BraneConfig& config, unsigned digits = 0);

struct BruteCheck {
  Complex reduced;
  Complex direct;
  Scalar discrepancy;
};

/// n = 2 validation: the same quantity via a direct two-dimensional integral
/// of (phi1 - phi2) det[e^{i z_i phi_j}] g(phi1) g(phi2) over the real plane
/// (even kernels) or over the rotated-ray contour squared (airy_rays kernels),
/// with the inner integral recomputed at every outer node.
BruteCheck brane_brute_check(const KernelSpec& kernel, const BraneConfig& config,
                             unsigned digits = 0);

}  // namespace xim::brane
