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

#ifndef SYMSQ_IO_HPP
#define SYMSQ_IO_HPP

#include <optional>
#include <string>
#include <vector>

#include "symsq/qexp.hpp"
#include "symsq/slope.hpp"

namespace symsq {

// ---------------------------------------------------------------------------
// Run configuration.
// ---------------------------------------------------------------------------

/// All tunables of a run.  alpha is the slope of the fixed eigenform;
/// xi / psi are character specs (see char_from_spec).
struct RunConfig {
  long p = 5;       ///< odd prime, ordinary for the eigenform
  int M = 18;       ///< working p-adic precision (digits)
  long K = 120;     ///< q-expansion truncation for family series
  long r = 1;       ///< nearly-holomorphic X-degree bound
  int M_S = 8;      ///< weight-variable series length
  long n_max = 2;   ///< deepest cylinder level
  long b = 81;      ///< regulator: b >= 2, prime to p, <b> generates weights
  long D = 4;       ///< auxiliary discriminant: a square with 4 | D, C^2 | D
  long N = 4;       ///< prime-to-p level of the eigenform; N | D
  long C = 1;       ///< conductor of xi; C^2 | D
  std::string xi = "trivial";   ///< twist character spec
  std::string psi = "trivial";  ///< nebentypus spec
  mpq_class alpha = 0;          ///< slope
  std::string cache_dir;        ///< value cache (may be empty: no caching)
  std::string fixture_dir;      ///< where eigen/basis files live

  /// Checks the arithmetic invariants above; throws input_error on failure.
  void validate() const;
};

/// Parse a character spec: "trivial", "kronecker:<d>", "omega:<p>:<k>"
/// (Teichmuller power), or "table:<M>:<R>:<e0,e1,...>" (exponent table,
/// empty entries for non-units written as "-").
DirichletChar char_from_spec(const std::string& spec);

RunConfig runconfig_from_json(const std::string& text);
std::string runconfig_to_json(const RunConfig& cfg);
RunConfig load_runconfig(const std::string& path);

// ---------------------------------------------------------------------------
// Basis files: exact q-expansion bases of M_k(Gamma_0(level)).
// ---------------------------------------------------------------------------

struct BasisFile {
  long weight2 = 0;  ///< doubled weight tag
  long level = 0;
  long K = 0;        ///< stored truncation
  long r = 0;        ///< X-degree bound of the stored rows
  std::vector<std::string> labels;
  std::vector<PolyQX<mpq_class>> forms;
};

/// Load a basis file; throws input_error when the stored truncation is
/// smaller than required_K (truncation deficit) or the file is malformed.
BasisFile load_basis(const std::string& path, long required_K);
void save_basis(const BasisFile& basis, const std::string& path);

// ---------------------------------------------------------------------------
// Eigenform packages.
// ---------------------------------------------------------------------------

/// Extra ingested data alongside the EigenPackage proper: Hecke eigenvalue
/// tables along the weight family (values are integer lifts; entries beyond
/// the Hecke bound of the recognizing precision are congruence lifts).
struct EigenFile {
  EigenPackage pkg;
  long p = 0;
  long truncation = 0;
  std::vector<std::pair<long, CycloNum>> hida_a3;  ///< (k_j, a_3(g_{k_j}))
  std::vector<std::pair<long, CycloNum>> hida_a5;  ///< (k_j, a_5(g_{k_j}))
};

EigenFile load_eigen_package(const std::string& path);
void save_eigen_package(const EigenFile& file, const std::string& path);

// ---------------------------------------------------------------------------
// Value cache (atomic writes: temp file + rename).
// ---------------------------------------------------------------------------

void cache_put(const std::string& dir, const std::string& key,
               const std::string& payload);
std::optional<std::string> cache_get(const std::string& dir,
                                     const std::string& key);
std::vector<std::string> cache_ls(const std::string& dir);
void cache_clear(const std::string& dir);

}  // namespace symsq

#endif  // SYMSQ_IO_HPP
