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

#include "symsq/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace symsq {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Atomic write: temp file in the same directory, then rename.
void spew_atomic(const std::string& path, const std::string& text) {
  fs::path target(path);
  fs::path dir = target.parent_path();
  if (!dir.empty()) fs::create_directories(dir);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw input_error("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw input_error("short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

json cyclo_to_json(const CycloNum& x) {
  if (x.order() == 1) return json(x.coeffs()[0].get_str());
  json c = json::array();
  for (const auto& q : x.coeffs()) c.push_back(q.get_str());
  return json{{"order", x.order()}, {"coeffs", c}};
}

CycloNum cyclo_from_json(const json& j) {
  if (j.is_string()) return CycloNum(parse_mpq(j.get<std::string>()));
  if (j.is_number_integer()) return CycloNum(mpq_class(j.get<long>()));
  long n = j.at("order").get<long>();
  std::vector<mpq_class> c;
  for (const auto& e : j.at("coeffs")) c.push_back(parse_mpq(e.get<std::string>()));
  return CycloNum(n, std::move(c));
}

json char_to_json(const DirichletChar& chi) {
  std::vector<long> exps;
  long M = chi.modulus();
  exps.reserve(M);
  for (long a = 0; a < M; ++a) {
    auto e = chi.exponent(a);
    exps.push_back(e ? *e : -1);
  }
  return json{{"modulus", M}, {"order", chi.order()}, {"exps", exps}};
}

DirichletChar char_from_json(const json& j) {
  long M = j.at("modulus").get<long>();
  long R = j.at("order").get<long>();
  std::vector<long> exps = j.at("exps").get<std::vector<long>>();
  return DirichletChar::from_table(M, R, exps);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

bool key_ok(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
          c == '-' || c == '.'))
      return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// RunConfig.
// ---------------------------------------------------------------------------

void RunConfig::validate() const {
  if (p < 3 || factorize(p).size() != 1 || factorize(p)[0].second != 1)
    throw input_error("config: p must be an odd prime");
  if (M < 1 || K < 1 || r < 0 || M_S < 2 || n_max < 1)
    throw input_error("config: bad precision/truncation parameters");
  if (b < 2 || gcd_long(b, p) != 1)
    throw input_error("config: need b >= 2 prime to p");
  long s = 1;
  while (s * s < D) ++s;
  if (s * s != D) throw input_error("config: D must be a square");
  if (D % 4 != 0) throw input_error("config: 4 | D required");
  if (C < 1 || D % (C * C) != 0) throw input_error("config: C^2 | D required");
  if (N < 1 || D % N != 0) throw input_error("config: N | D required");
  if (D % p == 0 || N % p == 0)
    throw input_error("config: p must not divide D");
  char_from_spec(xi);
  char_from_spec(psi);
}

DirichletChar char_from_spec(const std::string& spec) {
  auto parts = split(spec, ':');
  if (parts[0] == "trivial" && parts.size() == 1)
    return DirichletChar::trivial(1);
  if (parts[0] == "kronecker" && parts.size() == 2)
    return DirichletChar::kronecker(std::stol(parts[1]));
  if (parts[0] == "omega" && parts.size() == 3)
    return DirichletChar::teichmuller_power(std::stol(parts[1]),
                                            std::stol(parts[2]));
  if (parts[0] == "table" && parts.size() == 4) {
    long M = std::stol(parts[1]);
    long R = std::stol(parts[2]);
    std::vector<long> exps;
    for (const auto& e : split(parts[3], ','))
      exps.push_back(e == "-" ? -1 : std::stol(e));
    if (static_cast<long>(exps.size()) != M)
      throw input_error("character table spec: need one entry per residue");
    return DirichletChar::from_table(M, R, exps);
  }
  throw input_error("unrecognized character spec: " + spec);
}

RunConfig runconfig_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw input_error(std::string("config parse error: ") + e.what());
  }
  RunConfig cfg;
  cfg.p = j.value("p", cfg.p);
  cfg.M = j.value("M", cfg.M);
  cfg.K = j.value("K", cfg.K);
  cfg.r = j.value("r", cfg.r);
  cfg.M_S = j.value("M_S", cfg.M_S);
  cfg.n_max = j.value("n_max", cfg.n_max);
  cfg.b = j.value("b", cfg.b);
  cfg.D = j.value("D", cfg.D);
  cfg.N = j.value("N", cfg.N);
  cfg.C = j.value("C", cfg.C);
  cfg.xi = j.value("xi", cfg.xi);
  cfg.psi = j.value("psi", cfg.psi);
  if (j.contains("alpha")) cfg.alpha = parse_mpq(j["alpha"].get<std::string>());
  if (j.contains("paths")) {
    cfg.cache_dir = j["paths"].value("cache", "");
    cfg.fixture_dir = j["paths"].value("fixtures", "");
  }
  cfg.validate();
  return cfg;
}

std::string runconfig_to_json(const RunConfig& cfg) {
  json j{{"p", cfg.p},     {"M", cfg.M},         {"K", cfg.K},
         {"r", cfg.r},     {"M_S", cfg.M_S},     {"n_max", cfg.n_max},
         {"b", cfg.b},     {"D", cfg.D},         {"N", cfg.N},
         {"C", cfg.C},     {"xi", cfg.xi},       {"psi", cfg.psi},
         {"alpha", cfg.alpha.get_str()},
         {"paths", json{{"cache", cfg.cache_dir}, {"fixtures", cfg.fixture_dir}}}};
  return j.dump(2);
}

RunConfig load_runconfig(const std::string& path) {
  return runconfig_from_json(slurp(path));
}

// ---------------------------------------------------------------------------
// Basis files.
// ---------------------------------------------------------------------------

BasisFile load_basis(const std::string& path, long required_K) {
  json j;
  try {
    j = json::parse(slurp(path));
  } catch (const std::exception& e) {
    throw input_error(std::string("basis parse error: ") + e.what());
  }
  BasisFile b;
  b.weight2 = j.at("weight2").get<long>();
  b.level = j.at("level").get<long>();
  b.K = j.at("K").get<long>();
  b.r = j.value("r", 0L);
  if (b.K < required_K)
    throw input_error("basis truncation deficit: stored K=" +
                      std::to_string(b.K) + " < required " +
                      std::to_string(required_K));
  qx_ring<mpq_class>::Desc d{};
  for (const auto& f : j.at("forms")) {
    b.labels.push_back(f.at("label").get<std::string>());
    auto g = PolyQX<mpq_class>::zero(d, b.K, b.r);
    g.w2 = b.weight2;
    g.level = b.level;
    const auto& rows = f.at("rows");
    if (static_cast<long>(rows.size()) != b.r + 1)
      throw input_error("basis row count mismatch in " + path);
    for (long i = 0; i <= b.r; ++i) {
      const auto& row = rows[i];
      if (static_cast<long>(row.size()) != b.K + 1)
        throw input_error("basis truncation deficit in a stored row");
      for (long n = 0; n <= b.K; ++n)
        g.a[i][n] = parse_mpq(row[n].get<std::string>());
    }
    b.forms.push_back(std::move(g));
  }
  return b;
}

void save_basis(const BasisFile& basis, const std::string& path) {
  json forms = json::array();
  for (size_t i = 0; i < basis.forms.size(); ++i) {
    const auto& g = basis.forms[i];
    json rows = json::array();
    for (long d = 0; d <= basis.r; ++d) {
      json row = json::array();
      for (long n = 0; n <= basis.K; ++n) {
        mpq_class v = (d < static_cast<long>(g.a.size()) &&
                       n < static_cast<long>(g.a[d].size()))
                          ? g.a[d][n]
                          : mpq_class(0);
        row.push_back(v.get_str());
      }
      rows.push_back(std::move(row));
    }
    forms.push_back(json{{"label", basis.labels[i]}, {"rows", std::move(rows)}});
  }
  json j{{"weight2", basis.weight2}, {"level", basis.level}, {"K", basis.K},
         {"r", basis.r},             {"forms", std::move(forms)}};
  spew_atomic(path, j.dump());
}

// ---------------------------------------------------------------------------
// Eigen packages.
// ---------------------------------------------------------------------------

EigenFile load_eigen_package(const std::string& path) {
  json j;
  try {
    j = json::parse(slurp(path));
  } catch (const std::exception& e) {
    throw input_error(std::string("eigen parse error: ") + e.what());
  }
  EigenFile out;
  out.p = j.at("p").get<long>();
  out.truncation = j.at("truncation").get<long>();
  auto& pkg = out.pkg;
  pkg.k = j.at("weight").get<long>();
  pkg.N = j.at("level").get<long>();
  pkg.nebentypus = char_from_json(j.at("nebentypus"));
  const auto& f = j.at("forms").at(0);
  for (const auto& e : f.at("an")) pkg.an.push_back(cyclo_from_json(e));
  pkg.lambda_p = cyclo_from_json(f.at("lambda_p"));
  pkg.alpha = parse_mpq(f.at("alpha").get<std::string>());
  for (const auto& [q, lt] : f.at("local_types").items()) {
    LocalType t;
    t.case_tag = lt.at("case").get<std::string>();
    t.sigma4_subcase =
        lt.at("sigma4_subcase").is_null() ? -1 : lt["sigma4_subcase"].get<int>();
    t.lambda_q = cyclo_from_json(lt.at("lambda_q"));
    pkg.local_types[std::stol(q)] = std::move(t);
  }
  pkg.root_number_prime_to_p = cyclo_from_json(f.at("root_number_prime_to_p"));
  for (const auto& e : f.at("hida_table"))
    pkg.hida_table.emplace_back(e.at(0).get<long>(), cyclo_from_json(e.at(1)));
  if (f.contains("hida_a3"))
    for (const auto& e : f["hida_a3"])
      out.hida_a3.emplace_back(e.at(0).get<long>(), cyclo_from_json(e.at(1)));
  if (f.contains("hida_a5"))
    for (const auto& e : f["hida_a5"])
      out.hida_a5.emplace_back(e.at(0).get<long>(), cyclo_from_json(e.at(1)));
  pkg.validate();
  return out;
}

void save_eigen_package(const EigenFile& file, const std::string& path) {
  const auto& pkg = file.pkg;
  json an = json::array();
  for (const auto& a : pkg.an) an.push_back(cyclo_to_json(a));
  json lts = json::object();
  for (const auto& [q, t] : pkg.local_types) {
    json lt{{"case", t.case_tag},
            {"lambda_q", cyclo_to_json(t.lambda_q)}};
    if (t.sigma4_subcase < 0)
      lt["sigma4_subcase"] = nullptr;
    else
      lt["sigma4_subcase"] = t.sigma4_subcase;
    lts[std::to_string(q)] = std::move(lt);
  }
  json hida = json::array();
  for (const auto& [k, v] : pkg.hida_table)
    hida.push_back(json::array({k, cyclo_to_json(v)}));
  json ha3 = json::array();
  for (const auto& [k, v] : file.hida_a3)
    ha3.push_back(json::array({k, cyclo_to_json(v)}));
  json ha5 = json::array();
  for (const auto& [k, v] : file.hida_a5)
    ha5.push_back(json::array({k, cyclo_to_json(v)}));
  json form{{"label", "20.2.a.a"},
            {"an", std::move(an)},
            {"is_eigen", true},
            {"lambda_p", cyclo_to_json(pkg.lambda_p)},
            {"alpha", pkg.alpha.get_str()},
            {"local_types", std::move(lts)},
            {"root_number_prime_to_p", cyclo_to_json(pkg.root_number_prime_to_p)},
            {"hida_table", std::move(hida)},
            {"hida_a3", std::move(ha3)},
            {"hida_a5", std::move(ha5)}};
  json j{{"p", file.p},
         {"weight", pkg.k},
         {"level", pkg.N},
         {"nebentypus", char_to_json(pkg.nebentypus)},
         {"forms", json::array({std::move(form)})},
         {"truncation", file.truncation}};
  spew_atomic(path, j.dump());
}

// ---------------------------------------------------------------------------
// Cache.
// ---------------------------------------------------------------------------

void cache_put(const std::string& dir, const std::string& key,
               const std::string& payload) {
  if (!key_ok(key)) throw input_error("bad cache key: " + key);
  spew_atomic((fs::path(dir) / (key + ".json")).string(), payload);
}

std::optional<std::string> cache_get(const std::string& dir,
                                     const std::string& key) {
  if (!key_ok(key)) throw input_error("bad cache key: " + key);
  fs::path p = fs::path(dir) / (key + ".json");
  if (!fs::exists(p)) return std::nullopt;
  return slurp(p.string());
}

std::vector<std::string> cache_ls(const std::string& dir) {
  std::vector<std::string> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    auto name = e.path().filename().string();
    if (name.size() > 5 && name.substr(name.size() - 5) == ".json")
      out.push_back(name.substr(0, name.size() - 5));
  }
  std::sort(out.begin(), out.end());
  return out;
}

void cache_clear(const std::string& dir) {
  if (!fs::is_directory(dir)) return;
  for (const auto& e : fs::directory_iterator(dir)) {
    auto name = e.path().filename().string();
    if (name.size() > 5 && name.substr(name.size() - 5) == ".json")
      fs::remove(e.path());
  }
}

}  // namespace symsq
