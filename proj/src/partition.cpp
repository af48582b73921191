#include "fermiloss/partition.hpp"

#include <algorithm>
#include <bit>

#include "fermiloss/linalg.hpp"

namespace fermiloss {

namespace {

constexpr double kPurityTol = 1e-8;

std::vector<int> complement(const std::vector<int>& subset, int n) {
  std::vector<int> out;
  for (int k = 0; k < n; ++k)
    if (std::find(subset.begin(), subset.end(), k) == subset.end()) out.push_back(k);
  return out;
}

std::vector<int> checked_subset(const std::vector<int>& subset, int n, bool allow_full) {
  std::vector<int> sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  require(!sorted.empty(), "mode subset must be nonempty");
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
          "mode subset has repeated entries");
  require(sorted.front() >= 0 && sorted.back() < n, "mode subset index out of range");
  require(allow_full || static_cast<int>(sorted.size()) < n, "mode subset must be a proper subset");
  return sorted;
}

std::uint32_t gather_bits(std::uint32_t bits, const std::vector<int>& modes) {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < modes.size(); ++i)
    if (bits & (std::uint32_t{1} << modes[i])) out |= std::uint32_t{1} << i;
  return out;
}

// Sign-adjusted coefficients C_{mu nu} of a full-space vector.
CMatrix coefficient_matrix(const CVector& full_psi, int n, const std::vector<int>& a,
                           const std::vector<int>& b) {
  CMatrix c = CMatrix::Zero(Eigen::Index{1} << a.size(), Eigen::Index{1} << b.size());
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << n); ++bits) {
    if (full_psi(bits) == 0.0) continue;
    c(gather_bits(bits, a), gather_bits(bits, b)) = reorder_sign(bits, a, n) * full_psi(bits);
  }
  return c;
}

}  // namespace

double reorder_sign(std::uint32_t bits, const std::vector<int>& subset_a, int /*n*/) {
  int swaps = 0;
  for (int a : subset_a) {
    if (!(bits & (std::uint32_t{1} << a))) continue;
    for (int b = 0; b < a; ++b) {
      if (!(bits & (std::uint32_t{1} << b))) continue;
      if (std::find(subset_a.begin(), subset_a.end(), b) == subset_a.end()) ++swaps;
    }
  }
  return swaps % 2 == 0 ? 1.0 : -1.0;
}

PartitionReport schmidt_decompose(const CVector& psi, const FockSpace& space,
                                  const std::vector<int>& subset_a, const EntropyFunctional& f) {
  const int n = space.modes();
  require(psi.size() == space.dim(), "state dimension does not match the Fock space");
  require(std::abs(psi.norm() - 1.0) <= kPurityTol, "state is not normalized");
  const CVector full = space.embed(psi);
  double even_weight = 0.0;
  for (std::uint32_t bits = 0; bits < full.size(); ++bits)
    if (std::popcount(bits) % 2 == 0) even_weight += std::norm(full(bits));
  require(even_weight <= 1e-12 || even_weight >= 1.0 - 1e-12,
          "state does not have definite number parity");

  PartitionReport r;
  r.subset_a = checked_subset(subset_a, n, false);
  r.subset_b = complement(r.subset_a, n);
  r.C = coefficient_matrix(full, n, r.subset_a, r.subset_b);
  Eigen::JacobiSVD<CMatrix> svd(r.C);
  r.schmidt_values = svd.singularValues();
  r.rho_a = hermitian_part(r.C * r.C.adjoint());
  r.rho_b = hermitian_part(CMatrix((r.C.adjoint() * r.C).conjugate()));
  const RVector p = r.schmidt_values.cwiseAbs2();
  r.entanglement = entropy_of_spectrum(RVector(p / p.sum()), f);
  return r;
}

CMatrix reduced_state(const CVector& psi, const FockSpace& space,
                      const std::vector<int>& subset_a) {
  require(psi.size() == space.dim(), "state dimension does not match the Fock space");
  const int n = space.modes();
  const auto a = checked_subset(subset_a, n, true);
  const auto b = complement(a, n);
  const CMatrix c = coefficient_matrix(space.embed(psi), n, a, b);
  return hermitian_part(c * c.adjoint());
}

CMatrix reduced_state(const CMatrix& rho, const FockSpace& space,
                      const std::vector<int>& subset_a) {
  require(rho.rows() == space.dim() && rho.cols() == space.dim(),
          "state dimension does not match the Fock space");
  const int n = space.modes();
  const auto a = checked_subset(subset_a, n, true);
  const CMatrix full = space.embed(rho);
  const Eigen::Index da = Eigen::Index{1} << a.size();
  CMatrix out = CMatrix::Zero(da, da);
  // rho_A(mu, mu') = sum_nu s(mu nu) s(mu' nu) rho(mu nu, mu' nu)
  for (std::uint32_t x = 0; x < full.rows(); ++x) {
    const std::uint32_t xa = gather_bits(x, a);
    const std::uint32_t rest = x & ~[&] {
      std::uint32_t mask = 0;
      for (int m : a) mask |= std::uint32_t{1} << m;
      return mask;
    }();
    const double sx = reorder_sign(x, a, n);
    for (std::uint32_t ya = 0; ya < da; ++ya) {
      std::uint32_t y = rest;
      for (std::size_t i = 0; i < a.size(); ++i)
        if (ya & (std::uint32_t{1} << i)) y |= std::uint32_t{1} << a[i];
      out(xa, ya) += sx * reorder_sign(y, a, n) * full(x, y);
    }
  }
  return hermitian_part(out);
}

CMatrix embed_local_operator(const CMatrix& local, int n, const std::vector<int>& subset_a) {
  const auto a = checked_subset(subset_a, n, true);
  const Eigen::Index da = Eigen::Index{1} << a.size();
  require(local.rows() == da && local.cols() == da, "local operator dimension mismatch");
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j)
      require(local(i, j) == 0.0 || std::popcount(static_cast<std::uint32_t>(i ^ j)) % 2 == 0,
              "local operator is not parity even");
  std::uint32_t mask = 0;
  for (int m : a) mask |= std::uint32_t{1} << m;
  const Eigen::Index d = Eigen::Index{1} << n;
  CMatrix out = CMatrix::Zero(d, d);
  for (std::uint32_t x = 0; x < d; ++x) {
    const std::uint32_t rest = x & ~mask;
    const std::uint32_t xa = gather_bits(x, a);
    for (std::uint32_t ya = 0; ya < da; ++ya) {
      if (local(xa, ya) == 0.0) continue;
      std::uint32_t y = rest;
      for (std::size_t i = 0; i < a.size(); ++i)
        if (ya & (std::uint32_t{1} << i)) y |= std::uint32_t{1} << a[i];
      out(x, y) = reorder_sign(x, a, n) * reorder_sign(y, a, n) * local(xa, ya);
    }
  }
  return out;
}

double single_mode_eof(const CVector& psi, const FockSpace& space, int mode,
                       const std::vector<int>& subset_b1, const EntropyFunctional& f) {
  const int n = space.modes();
  require(mode >= 0 && mode < n, "mode index out of range");
  require(std::find(subset_b1.begin(), subset_b1.end(), mode) == subset_b1.end(),
          "B1 must not contain the measured mode");
  const auto b1 = checked_subset(subset_b1, n, false);
  const auto report = schmidt_decompose(psi, space, {mode}, f);
  // Row mu of C is sqrt(p_mu) times the B-amplitudes of psi_mu.
  const FockSpace b_space = FockSpace::build(n - 1, Sector::Full, n);
  std::vector<int> b1_local;
  for (int m : b1) b1_local.push_back(static_cast<int>(
      std::find(report.subset_b.begin(), report.subset_b.end(), m) - report.subset_b.begin()));
  double total = 0.0;
  for (int mu = 0; mu < 2; ++mu) {
    const CVector row = report.C.row(mu).transpose();
    const double p = row.squaredNorm();
    if (p <= 1e-14) continue;
    total += p * entropy_of_state(reduced_state(CVector(row / std::sqrt(p)), b_space, b1_local), f);
  }
  return total;
}

Purification purify(const CMatrix& rho_a) {
  const int m = modes_for_dimension(rho_a.rows());
  require(m >= 1 && rho_a.rows() == rho_a.cols(), "reduced state must be 2^m x 2^m");
  require(std::abs(rho_a.trace().real() - 1.0) <= 1e-9, "reduced state must have unit trace");
  const Eigen::Index da = rho_a.rows();
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j)
      require(std::abs(rho_a(i, j)) <= 1e-10 ||
                  std::popcount(static_cast<std::uint32_t>(i ^ j)) % 2 == 0,
              "reduced state does not commute with number parity");

  // Eigenvectors of definite parity, block by block.
  struct Branch { double p; CVector v; int parity; };
  std::vector<Branch> branches;
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < da; ++i)
      if (std::popcount(static_cast<std::uint32_t>(i)) % 2 == parity) idx.push_back(i);
    CMatrix block(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) block(i, j) = rho_a(idx[i], idx[j]);
    const auto eig = eigh(hermitian_part(block));
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
      require(eig.values(k) >= -1e-12, "reduced state is not positive semidefinite");
      if (eig.values(k) <= 1e-14) continue;
      CVector v = CVector::Zero(da);
      for (std::size_t i = 0; i < idx.size(); ++i) v(idx[i]) = eig.vectors(i, k);
      branches.push_back({eig.values(k), v, parity});
    }
  }
  const bool single_parity = std::all_of(branches.begin(), branches.end(),
                                         [&](const Branch& b) { return b.parity == branches[0].parity; });
  Purification out;
  out.added_modes = single_parity ? m + 1 : m;
  const int total = m + out.added_modes;
  require(total <= kDefaultMaxModes, "purification exceeds the supported mode count");

  // B labels of each parity handed out in increasing order; pairing equal
  // parities keeps the total parity even.
  std::vector<std::uint32_t> free_labels[2];
  for (std::uint32_t nu = 0; nu < (std::uint32_t{1} << out.added_modes); ++nu)
    free_labels[std::popcount(nu) % 2].push_back(nu);
  std::size_t used[2] = {0, 0};
  out.psi = CVector::Zero(Eigen::Index{1} << total);
  for (const auto& br : branches) {
    const std::uint32_t nu = free_labels[br.parity][used[br.parity]++];
    for (Eigen::Index mu = 0; mu < da; ++mu)
      out.psi(static_cast<Eigen::Index>(mu) | (static_cast<Eigen::Index>(nu) << m)) +=
          std::sqrt(br.p) * br.v(mu);
  }
  out.psi /= out.psi.norm();
  return out;
}

}  // namespace fermiloss
