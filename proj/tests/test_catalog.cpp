// Copyright (c) 2026 the hyperdiss developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>

#include "hyperdiss/catalog.hpp"
#include "pinning.hpp"

using namespace hyperdiss;

TEST_SUITE("catalog") {
  TEST_CASE("transcription pinning: every catalog display matches its literal") {
    const auto failures = pinning::transcription_failures();
    for (const auto& f : failures) MESSAGE(f);
    CHECK(failures.empty());
  }

  TEST_CASE("timoshenko: L entries at (a=2, gamma=1), 1-indexed (1,4), (4,1), (4,4)") {
    const auto cat = timoshenko(2.0, 1.0);
    const Mat& L = cat.model.sys.L();
    CHECK(L(0, 3) == 1.0);
    CHECK(L(3, 0) == -1.0);
    CHECK(L(3, 3) == 1.0);
    CHECK(L.cwiseAbs().sum() == 3.0);  // nothing else
  }

  TEST_CASE("timoshenko expectations switch at a = 1") {
    const auto a2 = timoshenko(2.0, 1.0);
    CHECK(a2.expected.p == 1);
    CHECK(a2.expected.q == 2);
    CHECK(a2.expected.envelope == Envelope::eta);
    CHECK(std::find(a2.expected.fail.begin(), a2.expected.fail.end(), "S2") !=
          a2.expected.fail.end());

    const auto a1 = timoshenko(1.0, 1.0);
    CHECK(a1.expected.q == 1);
    CHECK(a1.expected.envelope == Envelope::rho);
    CHECK(std::find(a1.expected.pass.begin(), a1.expected.pass.end(), "S2") !=
          a1.expected.pass.end());
  }

  TEST_CASE("timoshenko rejects nonpositive parameters") {
    CHECK_THROWS_AS(timoshenko(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(timoshenko(1.0, -2.0), std::invalid_argument);
    CHECK_THROWS_AS(euler_maxwell(0.0, 1.0, Eigen::Vector3d::Zero()), std::invalid_argument);
  }

  TEST_CASE("euler-maxwell beta sits at half its sharp bound") {
    const auto em = euler_maxwell(1.0, 1.0, Eigen::Vector3d(0, 0, 1));
    // beta = 0.5 * 4 rho / (4 rho + (1 + |B|)^2) = 0.25 here; S's (2,3) block
    // carries beta directly.
    CHECK((*em.model.S)(1, 4) == doctest::Approx(0.25));
  }

  TEST_CASE("symmetric toy: kernel, rank stack, and tuned compensator") {
    const auto toy = symmetric_toy();
    const auto kerL = kernel_basis(toy.model.sys.L());
    REQUIRE(kerL.dim() == 1);
    CHECK(std::abs(kerL.basis(0, 0)) == doctest::Approx(1.0));  // span{e1}

    CHECK(toy.model.K.has_value());
    CHECK(std::holds_alternative<KalmanK>(toy.model.K->variant));
    CHECK(toy.expected.p == 1);
    CHECK(toy.expected.q == 1);
    CHECK(toy.expected.envelope == Envelope::rho);
  }

  TEST_CASE("catalog URIs parse parameters and defaults") {
    const auto t = catalog_from_uri("builtin:timoshenko?a=1.5&gamma=0.25");
    CHECK(t.params.at("a") == 1.5);
    CHECK(t.params.at("gamma") == 0.25);
    const auto d = catalog_from_uri("builtin:timoshenko");
    CHECK(d.params.at("a") == 2.0);

    const auto em = catalog_from_uri("builtin:euler-maxwell?rho=2&pprime=3&B=0.5,0,0.5");
    CHECK(em.params.at("rho_inf") == 2.0);
    CHECK(em.params.at("B1") == 0.5);

    CHECK_THROWS_AS(catalog_from_uri("builtin:unknown"), std::invalid_argument);
    CHECK_THROWS_AS(catalog_from_uri("timoshenko"), std::invalid_argument);
    CHECK_THROWS_AS(catalog_from_uri("builtin:timoshenko?a=abc"), std::invalid_argument);
  }
}
