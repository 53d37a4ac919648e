// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Hand-entered literal matrices pinning every entry of the catalog systems
// and their derived displays. Comparisons are exact up to a few ulp (the
// builders divide once for beta, so compound entries can differ from decimal
// literals by one rounding); any transcription drift is an O(1) mismatch.

#ifndef HYPERDISS_TESTS_PINNING_HPP
#define HYPERDISS_TESTS_PINNING_HPP

#include <sstream>
#include <string>
#include <vector>

#include "hyperdiss/catalog.hpp"
#include "hyperdiss/system.hpp"

namespace pinning {

using hyperdiss::Mat;
using hyperdiss::Vec;

struct Pinner {
  std::vector<std::string> failures;

  void mat(const std::string& what, const Mat& got, const Mat& expect) {
    if (got.rows() != expect.rows() || got.cols() != expect.cols()) {
      failures.push_back(what + ": shape mismatch");
      return;
    }
    const double tol = 4e-15 * (1.0 + expect.cwiseAbs().maxCoeff());
    for (int i = 0; i < got.rows(); ++i)
      for (int j = 0; j < got.cols(); ++j) {
        const double d = std::abs(got(i, j) - expect(i, j));
        const bool zero_ok = expect(i, j) != 0.0 || got(i, j) == 0.0;  // zeros pin exactly
        if (d > tol || !zero_ok) {
          std::ostringstream os;
          os << what << ": entry (" << i + 1 << "," << j + 1 << ") = " << got(i, j)
             << ", expected " << expect(i, j);
          failures.push_back(os.str());
          return;
        }
      }
  }

  void scalar(const std::string& what, double got, double expect, double tol = 4e-15) {
    if (std::abs(got - expect) > tol * (1.0 + std::abs(expect))) {
      std::ostringstream os;
      os << what << ": " << got << ", expected " << expect;
      failures.push_back(os.str());
    }
  }

  void flag(const std::string& what, bool ok) {
    if (!ok) failures.push_back(what);
  }
};

namespace detail {

inline Mat sym(const Mat& M) { return 0.5 * (M + M.transpose()); }
inline Mat skew(const Mat& M) { return 0.5 * (M - M.transpose()); }

inline void pin_timoshenko(Pinner& p) {
  // a = 2, gamma = 1, beta = 0.4 (half the 4g/(g^2+4) bound).
  const auto cat = hyperdiss::timoshenko(2.0, 1.0);
  const auto& sys = cat.model.sys;
  const double b = 0.4;
  Vec plus(1);
  plus << 1.0;
  const Mat A = sys.A_omega(plus);
  const Mat S = *cat.model.S;
  const Mat K = std::get<hyperdiss::ConstantK>(cat.model.K->variant).K0;

  p.mat("timoshenko A0", sys.A0(), Mat::Identity(4, 4));

  Mat Ae(4, 4);
  Ae << 0, -1, 0, 0,
       -1, 0, 0, 0,
        0, 0, 0, -2,
        0, 0, -2, 0;
  p.mat("timoshenko A", A, Ae);

  Mat Le = Mat::Zero(4, 4);
  Le(0, 3) = 1.0;
  Le(3, 0) = -1.0;
  Le(3, 3) = 1.0;
  p.mat("timoshenko L", sys.L(), Le);

  Mat L1e = Mat::Zero(4, 4);
  L1e(3, 3) = 1.0;
  p.mat("timoshenko L1", sys.L1(), L1e);

  Mat Se(4, 4);
  Se << 0, 0, 0, 1,
        0, 0, 2, 0,
        0, 2, 0, 0,
        1, 0, 0, 0;
  p.mat("timoshenko S", S, Mat(-b * Se));

  Mat Ke(4, 4);
  Ke << 0, 1, 0, 0,
       -1, 0, 0, 0,
        0, 0, 0, -1,
        0, 0, 1, 0;
  p.mat("timoshenko K", K, Ke);

  Mat SAe(4, 4);
  SAe << 0, 0, 2, 0,
         0, 0, 0, 4,
         2, 0, 0, 0,
         0, 1, 0, 0;
  p.mat("timoshenko SA", Mat(S * A), Mat(b * SAe));

  Mat SLe = Mat::Zero(4, 4);
  SLe(0, 0) = 1.0;
  SLe(0, 3) = -1.0;
  SLe(3, 3) = -1.0;
  p.mat("timoshenko SL", Mat(S * sys.L()), Mat(b * SLe));

  Mat KAe = Mat::Zero(4, 4);
  KAe.diagonal() << -1.0, 1.0, 2.0, -2.0;
  p.mat("timoshenko KA", Mat(K * A), KAe);

  Mat SA2e = Mat::Zero(4, 4);
  SA2e(1, 3) = 0.5 * b * 3.0;  // (1/2) beta (a^2 - 1)
  SA2e(3, 1) = -0.5 * b * 3.0;
  p.mat("timoshenko (SA)_2", skew(Mat(S * A)), SA2e);

  Mat SL1e = Mat::Zero(4, 4);
  SL1e(0, 0) = b;
  SL1e(0, 3) = -0.5 * b;
  SL1e(3, 0) = -0.5 * b;
  SL1e(3, 3) = -b;
  p.mat("timoshenko (SL)_1", sym(Mat(S * sys.L())), SL1e);

  Mat SLL1e = Mat::Zero(4, 4);
  SLL1e(0, 0) = b;
  SLL1e(0, 3) = -0.5 * b;
  SLL1e(3, 0) = -0.5 * b;
  SLL1e(3, 3) = 1.0 - b;
  p.mat("timoshenko (SL)_1 + L1", Mat(sym(Mat(S * sys.L())) + sys.L1()), SLL1e);

  // The rank-stack displays: LA, LA^2, LA^3 (gamma = 1, a = 2).
  Mat LAe = Mat::Zero(4, 4);
  LAe(0, 2) = -2.0;
  LAe(3, 1) = 1.0;
  LAe(3, 2) = -2.0;
  p.mat("timoshenko LA", Mat(sys.L() * A), LAe);

  Mat LA2e = Mat::Zero(4, 4);
  LA2e(0, 3) = 4.0;
  LA2e(3, 0) = -1.0;
  LA2e(3, 3) = 4.0;
  p.mat("timoshenko LA^2", Mat(sys.L() * A * A), LA2e);

  Mat LA3e = Mat::Zero(4, 4);
  LA3e(0, 2) = -8.0;
  LA3e(3, 1) = 1.0;
  LA3e(3, 2) = -8.0;
  p.mat("timoshenko LA^3", Mat(sys.L() * A * A * A), LA3e);

  // (SA)_2 = 0 exactly at a = 1.
  const auto unit = hyperdiss::timoshenko(1.0, 1.0);
  p.flag("timoshenko a=1: (SA)_2 = 0",
         skew(Mat(*unit.model.S * unit.model.sys.A_omega(plus))).norm() == 0.0);
}

inline void pin_euler_maxwell(Pinner& p) {
  // rho = 2, p' = 3 -> a = 1.5, b' = 3; B = (0,0,1) -> beta = 1/3.
  const double rho = 2.0, a = 1.5, bp = 3.0, beta = 1.0 / 3.0;
  const auto cat = hyperdiss::euler_maxwell(rho, bp, Eigen::Vector3d(0, 0, 1));
  const auto& sys = cat.model.sys;
  Vec w = Vec::Zero(3);
  w(2) = 1.0;  // omega = e3

  Mat Om = Mat::Zero(3, 3);  // Omega_omega for omega = e3
  Om(0, 1) = -1.0;
  Om(1, 0) = 1.0;
  const Mat I3 = Mat::Identity(3, 3);
  const Mat ImB = I3 - Om;  // I - Omega_B for B = (0,0,1)
  const Mat IpB = I3 + Om;

  Mat A0e = Mat::Identity(10, 10);
  A0e(0, 0) = a;
  A0e.block(1, 1, 3, 3) = rho * I3;
  p.mat("euler-maxwell A0", sys.A0(), A0e);

  Mat Aome = Mat::Zero(10, 10);
  Aome.block(0, 1, 1, 3) = bp * w.transpose();
  Aome.block(1, 0, 3, 1) = bp * w;
  Aome.block(4, 7, 3, 3) = -Om;
  Aome.block(7, 4, 3, 3) = Om;
  p.mat("euler-maxwell A(omega)", sys.A_omega(w), Aome);

  Mat Le = Mat::Zero(10, 10);
  Le.block(1, 1, 3, 3) = rho * ImB;
  Le.block(1, 4, 3, 3) = rho * I3;
  Le.block(4, 1, 3, 3) = -rho * I3;
  p.mat("euler-maxwell L", sys.L(), Le);

  Mat L1e = Mat::Zero(10, 10);
  L1e.block(1, 1, 3, 3) = rho * I3;
  p.mat("euler-maxwell L1", sys.L1(), L1e);

  const auto& cb = *cat.model.cb;
  Mat Qome = Mat::Zero(2, 10);
  Qome(0, 6) = 1.0;  // (0, 0, omega, 0) row
  Qome(1, 9) = 1.0;  // (0, 0, 0, omega) row
  p.mat("euler-maxwell Q(omega)", cb.Q_omega(w), Qome);

  Mat Re = Mat::Zero(2, 10);
  Re(0, 0) = 1.0;
  p.mat("euler-maxwell R", cb.R, Re);

  Mat Pi1e = Mat::Zero(2, 2);
  Pi1e(0, 0) = 1.0;
  p.mat("euler-maxwell Pi1", cb.Pi1, Pi1e);
  Mat Pi2e = Mat::Zero(2, 2);
  Pi2e(1, 1) = 1.0;
  p.mat("euler-maxwell Pi2", cb.Pi2, Pi2e);

  Mat Pi2Qe = Mat::Zero(2, 10);
  Pi2Qe(1, 9) = 1.0;
  p.mat("euler-maxwell Pi2 Q(omega)", Mat(cb.Pi2 * cb.Q_omega(w)), Pi2Qe);

  const Mat S = *cat.model.S;
  Mat Se = Mat::Zero(10, 10);
  Se.block(1, 4, 3, 3) = beta * I3;
  Se.block(4, 1, 3, 3) = (beta / rho) * I3;
  p.mat("euler-maxwell S", S, Se);

  const Mat K = cat.model.K->evaluate(sys, w);
  Mat Ke = Mat::Zero(10, 10);
  Ke.block(0, 1, 1, 3) = (1.0 / rho) * w.transpose();
  Ke.block(1, 0, 3, 1) = -(1.0 / a) * w;
  Ke.block(4, 7, 3, 3) = Om;
  Ke.block(7, 4, 3, 3) = Om;
  p.mat("euler-maxwell K(omega)", K, Ke);

  Mat SA0e = Mat::Zero(10, 10);
  SA0e.block(1, 4, 3, 3) = beta * I3;
  SA0e.block(4, 1, 3, 3) = beta * I3;
  p.mat("euler-maxwell SA0", Mat(S * sys.A0()), SA0e);

  const Mat SA = S * sys.A_omega(w);
  Mat SAe = Mat::Zero(10, 10);
  SAe.block(1, 7, 3, 3) = -beta * Om;
  SAe.block(4, 0, 3, 1) = beta * a * w;
  p.mat("euler-maxwell SA(omega)", SA, SAe);

  Mat SLe = Mat::Zero(10, 10);
  SLe.block(1, 1, 3, 3) = -beta * rho * I3;
  SLe.block(4, 1, 3, 3) = beta * ImB;
  SLe.block(4, 4, 3, 3) = beta * I3;
  p.mat("euler-maxwell SL", Mat(S * sys.L()), SLe);

  Mat KA0e = Mat::Zero(10, 10);
  KA0e.block(0, 1, 1, 3) = w.transpose();
  KA0e.block(1, 0, 3, 1) = -w;
  KA0e.block(4, 7, 3, 3) = Om;
  KA0e.block(7, 4, 3, 3) = Om;
  p.mat("euler-maxwell K(omega) A0", Mat(K * sys.A0()), KA0e);

  const Mat Om2 = Om * Om;
  Mat KAe = Mat::Zero(10, 10);
  KAe(0, 0) = a;
  KAe.block(1, 1, 3, 3) = -rho * (w * w.transpose());
  KAe.block(4, 4, 3, 3) = Om2;
  KAe.block(7, 7, 3, 3) = -Om2;
  p.mat("euler-maxwell K(omega) A(omega)", Mat(K * sys.A_omega(w)), KAe);

  Mat SA2e = Mat::Zero(10, 10);
  SA2e.block(0, 4, 1, 3) = -0.5 * beta * a * w.transpose();
  SA2e.block(4, 0, 3, 1) = 0.5 * beta * a * w;
  SA2e.block(1, 7, 3, 3) = -0.5 * beta * Om;
  SA2e.block(7, 1, 3, 3) = -0.5 * beta * Om;
  p.mat("euler-maxwell (SA)_2", skew(SA), SA2e);

  Mat SL1e = Mat::Zero(10, 10);
  SL1e.block(1, 1, 3, 3) = -beta * rho * I3;
  SL1e.block(1, 4, 3, 3) = 0.5 * beta * IpB;
  SL1e.block(4, 1, 3, 3) = 0.5 * beta * ImB;
  SL1e.block(4, 4, 3, 3) = beta * I3;
  p.mat("euler-maxwell (SL)_1", sym(Mat(S * sys.L())), SL1e);

  Mat SLL1e = Mat::Zero(10, 10);
  SLL1e.block(1, 1, 3, 3) = (1.0 - beta) * rho * I3;
  SLL1e.block(1, 4, 3, 3) = 0.5 * beta * IpB;
  SLL1e.block(4, 1, 3, 3) = 0.5 * beta * ImB;
  SLL1e.block(4, 4, 3, 3) = beta * I3;
  p.mat("euler-maxwell (SL)_1 + L1", Mat(sym(Mat(S * sys.L())) + sys.L1()), SLL1e);

  // T(omega) = (Pi1 Q(omega))^T S_tilde R with S_tilde = beta a I.
  const Mat T = (cb.Pi1 * cb.Q_omega(w)).transpose() * (*cat.model.S_tilde) * cb.R;
  Mat Te = Mat::Zero(10, 10);
  Te.block(4, 0, 3, 1) = beta * a * w;
  p.mat("euler-maxwell T(omega)", T, Te);
  p.mat("euler-maxwell S_tilde", *cat.model.S_tilde, Mat(beta * a * Mat::Identity(2, 2)));

  Mat SAT2e = Mat::Zero(10, 10);
  SAT2e.block(1, 7, 3, 3) = -0.5 * beta * Om;
  SAT2e.block(7, 1, 3, 3) = -0.5 * beta * Om;
  p.mat("euler-maxwell (SA - T)_2", skew(Mat(SA - T)), SAT2e);

  // Omega_xi acts as the cross product for a generic xi.
  Eigen::Vector3d xi(0.3, -0.5, 0.8), E(1.0, 2.0, -1.0);
  Vec xiv(3);
  xiv << xi(0), xi(1), xi(2);
  const Mat Axi = sys.A_omega(Vec(xiv / xiv.norm()));
  Eigen::Vector3d OmE = -Axi.block(4, 7, 3, 3) * E;  // block (3,4) holds -Omega
  const Eigen::Vector3d cross = (xi / xi.norm()).cross(E);
  p.scalar("euler-maxwell Omega_xi E = xi x E", (OmE - cross).norm(), 0.0, 1e-14);

  // Kernel spans and the relaxation form <L phi, phi> = rho |phi_2|^2.
  const auto kerL = hyperdiss::kernel_basis(sys.L());
  p.flag("euler-maxwell dim Ker(L) = 4", kerL.dim() == 4);
  for (int row : {1, 2, 3, 4, 5, 6})
    p.flag("euler-maxwell Ker(L) = span{e1,e8,e9,e10}", kerL.basis.row(row).norm() < 1e-12);
  const auto kerL1 = hyperdiss::kernel_basis(sys.L1());
  p.flag("euler-maxwell dim Ker(L1) = 7", kerL1.dim() == 7);
  for (int row : {1, 2, 3})
    p.flag("euler-maxwell Ker(L1) excludes the v block", kerL1.basis.row(row).norm() < 1e-12);

  hyperdiss::CVec phi(10);
  for (int i = 0; i < 10; ++i) phi(i) = hyperdiss::Cplx(0.1 * i - 0.4, 0.3 - 0.05 * i);
  const hyperdiss::Cplx form = (phi.adjoint() * sys.L().cast<hyperdiss::Cplx>() * phi)(0);
  const double v2 = phi.segment(1, 3).squaredNorm();
  p.scalar("euler-maxwell <L phi, phi> = rho |phi_2|^2", form.real(), rho * v2, 1e-13);
}

}  // namespace detail

// Every literal of the catalog displays; empty result means all pinned
// entries match.
inline std::vector<std::string> transcription_failures() {
  Pinner p;
  detail::pin_timoshenko(p);
  detail::pin_euler_maxwell(p);
  return p.failures;
}

}  // namespace pinning

#endif  // HYPERDISS_TESTS_PINNING_HPP
