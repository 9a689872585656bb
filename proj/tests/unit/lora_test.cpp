// Copyright 2026 The ThreatForge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "dataset.hpp"

namespace threatforge::dataset {
namespace {

Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd e(m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) e(i, j) = m(i, j);
  return e;
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::uniform_real_distribution<double> u(-1, 1);
  Matrix m(r, c);
  for (auto& x : m.data) x = u(rng);
  return m;
}

TEST(LoraCount, Examples) {
  EXPECT_EQ(lora_param_count(4096, 4096, 32), 262144u);
  EXPECT_EQ(lora_param_count(8, 6, 2), 28u);
  EXPECT_EQ(lora_param_count(8, 6, 0), 0u);
  LoraSpec spec;
  spec.d = 4096;
  spec.k = 4096;
  EXPECT_EQ(lora_param_count(spec), 262144u);
}

TEST(LoraCount, MissingDims) {
  try {
    lora_param_count(LoraSpec{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kMissingDims);
  }
}

TEST(LoraCount, EfficiencyInequality) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 2000; ++i) {
    std::int64_t d = 1 + static_cast<std::int64_t>(rng() % 5000);
    std::int64_t k = 1 + static_cast<std::int64_t>(rng() % 5000);
    std::int64_t r = static_cast<std::int64_t>(rng() % 64);
    // r < d*k/(d+k)  <=>  r*(d+k) < d*k
    if (r * (d + k) < d * k)
      EXPECT_LT(lora_param_count(d, k, r), static_cast<std::uint64_t>(d * k));
    else
      EXPECT_GE(lora_param_count(d, k, r), static_cast<std::uint64_t>(d * k));
  }
}

TEST(LoraUpdate, ZeroUpdateReturnsW) {
  std::mt19937_64 rng(1);
  auto w = random_matrix(rng, 8, 6);
  auto a = random_matrix(rng, 8, 2);
  auto b = random_matrix(rng, 2, 6);
  EXPECT_EQ(apply_lora_update(w, Matrix(8, 2), b, 0.5), w);
  EXPECT_EQ(apply_lora_update(w, a, Matrix(2, 6), 0.5), w);
  EXPECT_EQ(apply_lora_update(w, a, b, 0.0), w);
}

TEST(LoraUpdate, MatchesDenseOracle) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    std::size_t d = 1 + rng() % 10, k = 1 + rng() % 10, r = 1 + rng() % std::min(d, k);
    auto w = random_matrix(rng, d, k);
    auto a = random_matrix(rng, d, r);
    auto b = random_matrix(rng, r, k);
    double alpha = std::uniform_real_distribution<double>(-2, 2)(rng);
    Eigen::MatrixXd want = to_eigen(w) + alpha * (to_eigen(a) * to_eigen(b));
    auto got = to_eigen(apply_lora_update(w, a, b, alpha));
    EXPECT_LE((got - want).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(LoraUpdate, RankBound) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    std::size_t d = 4 + rng() % 8, k = 4 + rng() % 8, r = 1 + rng() % 3;
    auto a = random_matrix(rng, d, r);
    auto b = random_matrix(rng, r, k);
    auto delta = to_eigen(apply_lora_update(Matrix(d, k), a, b, 0.75));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(delta);
    const auto& sv = svd.singularValues();
    for (Eigen::Index j = static_cast<Eigen::Index>(r); j < sv.size(); ++j)
      EXPECT_LT(sv(j), 1e-10);
  }
}

TEST(LoraUpdate, ShapeMismatch) {
  try {
    apply_lora_update(Matrix(8, 6), Matrix(8, 2), Matrix(3, 6), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kShapeMismatch);
  }
  EXPECT_THROW(apply_lora_update(Matrix(8, 6), Matrix(7, 2), Matrix(2, 6), 1.0), Error);
  EXPECT_THROW(apply_lora_update(Matrix(8, 6), Matrix(8, 2), Matrix(2, 5), 1.0), Error);
}

}  // namespace
}  // namespace threatforge::dataset
