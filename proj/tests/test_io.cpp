// Copyright 2026 The symsq authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "symsq/io.hpp"

using namespace symsq;

namespace {
std::string fixture(const std::string& name) {
  return std::string(SYMSQ_FIXTURE_DIR) + "/" + name;
}
std::string tmpdir() {
  auto d = std::filesystem::temp_directory_path() / "symsq_io_test";
  std::filesystem::create_directories(d);
  return d.string();
}
}  // namespace

TEST_CASE("runconfig round trip and validation") {
  RunConfig cfg;
  cfg.validate();  // defaults are a valid configuration

  RunConfig back = runconfig_from_json(runconfig_to_json(cfg));
  CHECK(back.p == cfg.p);
  CHECK(back.M == cfg.M);
  CHECK(back.K == cfg.K);
  CHECK(back.n_max == cfg.n_max);
  CHECK(back.b == cfg.b);
  CHECK(back.D == cfg.D);
  CHECK(back.N == cfg.N);
  CHECK(back.C == cfg.C);
  CHECK(back.xi == cfg.xi);
  CHECK(back.alpha == cfg.alpha);

  RunConfig bad = cfg;
  bad.p = 6;
  CHECK_THROWS_AS(bad.validate(), input_error);
  bad = cfg;
  bad.D = 8;  // not a square
  CHECK_THROWS_AS(bad.validate(), input_error);
  bad = cfg;
  bad.b = 10;  // not prime to p
  CHECK_THROWS_AS(bad.validate(), input_error);
  bad = cfg;
  bad.N = 3;  // does not divide D
  CHECK_THROWS_AS(bad.validate(), input_error);
  bad = cfg;
  bad.C = 3;  // C^2 does not divide D
  CHECK_THROWS_AS(bad.validate(), input_error);
  bad = cfg;
  bad.D = 25;  // p | D (and 4 does not divide it)
  CHECK_THROWS_AS(bad.validate(), input_error);
}

TEST_CASE("character specs") {
  CHECK(char_from_spec("trivial").is_trivial());
  auto s4 = char_from_spec("kronecker:-4");
  CHECK(s4 == DirichletChar::kronecker(-1));
  CHECK(s4.is_odd());
  auto om = char_from_spec("omega:5:1");
  CHECK(om == DirichletChar::teichmuller_power(5, 1));
  // Table spec: the quadratic character mod 4 (exponents at 1, 3; "-" at
  // the non-units 0, 2).
  auto t = char_from_spec("table:4:2:-,0,-,1");
  CHECK(t.modulus() == 4);
  CHECK(t.order() == 2);
  CHECK(t.value_int(3) == -1);
  CHECK_THROWS_AS(char_from_spec("nonsense"), input_error);
  CHECK_THROWS_AS(char_from_spec("table:4:2:0,-"), input_error);
}

TEST_CASE("basis round trip and truncation deficit") {
  // Small synthetic basis with rational coefficients.
  BasisFile b;
  b.weight2 = 4;
  b.level = 20;
  b.K = 10;
  b.r = 0;
  typename qx_ring<mpq_class>::Desc d{};
  auto f = PolyQX<mpq_class>::zero(d, 10, 0);
  f.w2 = 4;
  f.level = 20;
  for (long n = 0; n <= 10; ++n) f.a[0][n] = qx_frac(n, 24);
  b.labels = {"toy"};
  b.forms = {f};

  auto path = tmpdir() + "/basis_toy.json";
  save_basis(b, path);
  auto back = load_basis(path, 10);
  REQUIRE(back.forms.size() == 1);
  CHECK(back.weight2 == 4);
  CHECK(back.level == 20);
  CHECK(back.labels[0] == "toy");
  for (long n = 0; n <= 10; ++n)
    CHECK(back.forms[0].a[0][n] == qx_frac(n, 24));
  // Requiring more coefficients than stored must fail loudly.
  CHECK_THROWS_AS(load_basis(path, 11), input_error);
  CHECK_THROWS_AS(load_basis(tmpdir() + "/absent.json", 1), input_error);
}

TEST_CASE("shipped weight-2 basis") {
  auto b = load_basis(fixture("basis_w2_20.json"), 600);
  CHECK(b.weight2 == 4);
  CHECK(b.level == 20);
  REQUIRE(b.forms.size() == 6);
  // First form: the cusp form q prod (1-q^{2n})^2 (1-q^{10n})^2.
  const auto& f = b.forms[0];
  CHECK(f.a[0][0] == 0);
  CHECK(f.a[0][1] == 1);
  CHECK(f.a[0][2] == 0);
  CHECK(f.a[0][3] == -2);
  CHECK(f.a[0][5] == -1);
  CHECK(f.a[0][7] == 2);
  // The Eisenstein rows P_d = d E_2(dz) - E_2(z) have constant term d - 1.
  CHECK(b.forms[1].a[0][0] == 1);
  CHECK(b.forms[5].a[0][0] == 19);
}

TEST_CASE("shipped eigen package") {
  auto e = load_eigen_package(fixture("eigen_20a.json"));
  CHECK(e.p == 5);
  const auto& pkg = e.pkg;
  CHECK(pkg.k == 2);
  CHECK(pkg.N == 20);
  pkg.validate();
  // Frozen Hecke eigenvalues of the eta product.
  CHECK(pkg.an.at(1).rational() == 1);
  CHECK(pkg.an.at(3).rational() == -2);
  CHECK(pkg.an.at(7).rational() == 2);
  CHECK(pkg.lambda_p.rational() == -1);
  CHECK(pkg.alpha == 0);
  CHECK(pkg.local_types.at(2).case_tag == "iv");
  CHECK(pkg.local_types.at(5).case_tag == "iii");
  // Hida table: congruences lambda(k) = -1 mod 5^{v(81^{k-2}-1)}.
  bool seen6 = false;
  for (const auto& [k, lam] : pkg.hida_table) {
    if (k == 2) CHECK(lam.rational() == -1);
    if (k == 6) {
      seen6 = true;
      mpq_class v = lam.rational() + 1;
      CHECK(v != 0);
      CHECK(mpz_class(v.get_num() % 5) == 0);
    }
  }
  CHECK(seen6);
  // Round trip.
  auto path = tmpdir() + "/eigen_rt.json";
  save_eigen_package(e, path);
  auto back = load_eigen_package(path);
  CHECK(back.pkg.an.at(3).rational() == -2);
  CHECK(back.pkg.local_types.at(2).sigma4_subcase ==
        pkg.local_types.at(2).sigma4_subcase);
  CHECK(back.hida_a3.size() == e.hida_a3.size());
}

TEST_CASE("cache") {
  auto dir = tmpdir() + "/cache";
  std::filesystem::remove_all(dir);
  CHECK(!cache_get(dir, "k1").has_value());
  cache_put(dir, "k1", "payload-1");
  cache_put(dir, "k2", "payload-2");
  auto got = cache_get(dir, "k1");
  REQUIRE(got.has_value());
  CHECK(*got == "payload-1");
  auto ls = cache_ls(dir);
  CHECK(ls.size() == 2);
  // Overwrite is atomic and replaces.
  cache_put(dir, "k1", "payload-3");
  CHECK(*cache_get(dir, "k1") == "payload-3");
  CHECK(cache_ls(dir).size() == 2);
  CHECK_THROWS_AS(cache_put(dir, "../escape", "x"), input_error);
  cache_clear(dir);
  CHECK(cache_ls(dir).empty());
}
