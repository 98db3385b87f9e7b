// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and corpus bounds are pinned here, not configurable.

#include "pav/pav.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

using namespace pav;

namespace {

using Clock = std::chrono::steady_clock;

int g_failures = 0;

void criterion(int number, const std::string& label, double time_limit_s,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  const auto start = Clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  const double elapsed =
      std::chrono::duration<double>(Clock::now() - start).count();
  const bool in_time = time_limit_s <= 0 || elapsed < time_limit_s;
  if (!in_time && detail.empty())
    detail = "time limit " + std::to_string(time_limit_s) + " s exceeded";
  const bool pass = ok && in_time;
  if (!pass) ++g_failures;
  std::printf("[%s] criterion %d: %s (%.2f s)%s%s\n", pass ? "PASS" : "FAIL",
              number, label.c_str(), elapsed, detail.empty() ? "" : " - ",
              detail.c_str());
  std::fflush(stdout);
}

TypeVector tv(std::initializer_list<long long> xs) {
  std::vector<Int> d;
  for (long long x : xs) d.emplace_back(x);
  return validate_type(std::move(d));
}

const std::vector<TypeVector> kTypeList = {
    tv({1}),       tv({2}),       tv({1, 1}),    tv({1, 2}),
    tv({2, 2}),    tv({2, 4}),    tv({1, 1, 2}), tv({1, 2, 4}),
    tv({2, 4, 8}), tv({1, 1, 2, 4})};

TypeVector random_large_type(std::mt19937_64& rng) {
  const std::size_t g = 1 + rng() % 10;
  std::vector<Int> d;
  Int cur = 1 + static_cast<long long>(rng() % 10000);
  for (std::size_t i = 0; i < g; ++i) {
    d.push_back(cur);
    Int next = cur * static_cast<long long>(1 + rng() % 8);
    if (next > 1000000000LL) next = cur;
    cur = next;
  }
  return validate_type(std::move(d));
}

PolarizationForm conjugate(const TypeVector& t, std::uint64_t seed) {
  const IntMatrix u = random_unimodular(2 * t.genus(), seed);
  return PolarizationForm(u.transposed() * standard_form(t).matrix() * u);
}

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(PAV_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  RunResult r;
  if (!p) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int rc = pclose(p);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

// ---- criteria -------------------------------------------------------------

bool c1_involution(std::string& detail) {
  std::size_t checked = 0;
  for (std::size_t g = 1; g <= 6; ++g)
    for (const TypeVector& t : enumerate_types(g, 60)) {
      if (delta_type(delta_type(t)) != t) {
        detail = "not an involution at " + to_string(t);
        return false;
      }
      ++checked;
    }
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 1000; ++k) {
    const TypeVector t = random_large_type(rng);
    if (delta_type(delta_type(t)) != t) {
      detail = "not an involution at " + to_string(t);
      return false;
    }
    ++checked;
  }
  detail = std::to_string(checked) + " types";
  return true;
}

bool c2_matrix_duality(std::string& detail) {
  std::size_t checked = 0;
  for (const TypeVector& t : kTypeList)
    for (std::uint64_t s = 0; s < 20; ++s) {
      const PolarizationForm p = conjugate(t, 1000 * checked + s);
      const Int e = exponent(p);
      const IntMatrix ei = e * IntMatrix::identity(2 * t.genus());
      const IntMatrix d = dual_d_form(p).matrix();
      if (d * p.matrix() != ei || p.matrix() * d != ei) {
        detail = "composition failed for " + to_string(t);
        return false;
      }
      ++checked;
    }
  detail = std::to_string(checked) + " conjugates";
  return true;
}

bool c3_dual_types(std::string& detail) {
  for (const TypeVector& t : kTypeList)
    for (std::uint64_t s = 0; s < 20; ++s) {
      const PolarizationForm p = conjugate(t, 7000 + 100 * s);
      const PolarizationForm d = dual_d_form(p);
      if (type_of(d) != d_dual_type(t)) {
        detail = "dual type mismatch for " + to_string(t);
        return false;
      }
      std::vector<Int> doubled;
      for (const Int& x : d_dual_type(t).d) {
        doubled.push_back(x);
        doubled.push_back(x);
      }
      if (kernel_invariants(d).factors != doubled) {
        detail = "kernel invariants mismatch for " + to_string(t);
        return false;
      }
    }
  return true;
}

bool c4_label_matrix_agreement(std::string& detail) {
  std::size_t checked = 0;
  for (std::size_t g = 1; g <= 5; ++g)
    for (const TypeVector& t : enumerate_types(g, 30)) {
      if (delta_type(t) != type_of(dual_delta_form(standard_form(t)))) {
        detail = "label/matrix disagreement at " + to_string(t);
        return false;
      }
      ++checked;
    }
  detail = std::to_string(checked) + " types";
  return true;
}

bool c5_degree_pfaffian(std::string& detail) {
  std::size_t checked = 0;
  auto check_form = [&](const PolarizationForm& p,
                        const TypeVector& t) -> bool {
    const Int pf = pfaffian(p.matrix());
    Int prod = 1;
    for (const Int& x : t.d) prod *= x;
    if (abs(pf) != prod || pf * pf != det(p.matrix())) return false;
    ++checked;
    return true;
  };
  for (const TypeVector& t : kTypeList)
    for (std::uint64_t s = 0; s < 20; ++s)
      if (!check_form(conjugate(t, 40000 + 20 * s), t)) {
        detail = "pfaffian mismatch for conjugate of " + to_string(t);
        return false;
      }
  for (std::size_t g = 1; g <= 4; ++g)
    for (const TypeVector& t : enumerate_types(g, 12))
      if (!check_form(standard_form(t), t)) {
        detail = "pfaffian mismatch for standard " + to_string(t);
        return false;
      }
  detail = std::to_string(checked) + " forms";
  return true;
}

bool c6_fourier(std::string& detail) {
  std::size_t checked = 0;
  for (std::size_t g = 1; g <= 3; ++g)
    for (const TypeVector& t : enumerate_types(g, 64)) {
      Int deg = 1;
      for (const Int& x : t.d) deg *= x;
      if (deg > 64) continue;
      const PolarizationForm p = standard_form(t);
      const FmReport r = verify_fm_identities(p);
      if (!r.rank_ok || !r.thm31 || !r.prop34 || !r.lemma32 || !r.wit_sign) {
        detail = "identity failed at " + to_string(t);
        return false;
      }
      const Rat wit = wit_index_shadow(p);
      if (wit != ((g % 2 == 0) ? Rat(deg) : Rat(-deg))) {
        detail = "wit sign failed at " + to_string(t);
        return false;
      }
      ++checked;
    }
  detail = std::to_string(checked) + " types";
  return true;
}

bool c7_analytic_duality(std::string& detail) {
  std::size_t checked = 0;
  for (const TypeVector& t : kTypeList)
    for (std::uint64_t s = 0; s < 50; ++s) {
      const PolarizedTorus torus = random_siegel(t, 90000 + 50 * checked + s);
      const RiemannReport rr = riemann_verify(torus, 1e-9);
      if (!rr.pass()) {
        detail = "riemann residuals at " + to_string(t);
        return false;
      }
      const DualTorusReport dr = dual_polarization_verify(torus, 1e-9, 1e-6);
      if (dr.pairing_residual >= 1e-8 || !dr.dual_riemann.pass() ||
          !dr.bidual_ok || !dr.pass()) {
        detail = "dual verification at " + to_string(t);
        return false;
      }
      ++checked;
    }
  detail = std::to_string(checked) + " instances";
  return true;
}

bool c8_orbits(std::string& detail) {
  for (const TypeVector& t : enumerate_types(2, 50))
    if (!is_fixed(t)) {
      detail = "non-fixed g=2 type " + to_string(t);
      return false;
    }
  const OrbitReport r = orbit_report(3, 20);
  std::size_t total = 0;
  for (const auto& orbit : r.orbits) {
    if (orbit.size() != 1 && orbit.size() != 2) {
      detail = "orbit of size " + std::to_string(orbit.size());
      return false;
    }
    total += orbit.size();
    for (const TypeVector& t : orbit) {
      const TypeVector image = delta_type(t);
      if (image != orbit.front() && image != orbit.back()) {
        detail = "orbit not closed under delta";
        return false;
      }
    }
  }
  if (total != r.types.size()) {
    detail = "orbits do not partition the type set";
    return false;
  }
  for (const TypeVector& t : r.types) {
    const bool fixed_formula = (t.d[1] * t.d[1] == t.d[0] * t.d[2]);
    if (fixed_formula != is_fixed(t)) {
      detail = "fixedness formula fails at " + to_string(t);
      return false;
    }
  }
  detail = std::to_string(r.types.size()) + " g=3 types, " +
           std::to_string(r.swap_count) + " swapped pairs";
  return true;
}

bool c9_cli(std::string& detail) {
  // delta applied twice is a byte-level identity on canonical JSON
  const RunResult seeded = run_cli("random --type 1,1,2,4 --seed 17 --kind lattice");
  if (seeded.status != 0) {
    detail = "random failed";
    return false;
  }
  const std::string f0 = write_temp("pav_acc0.json", seeded.out);
  const RunResult d1 = run_cli("dual --mode delta -i " + f0);
  const std::string f1 = write_temp("pav_acc1.json", d1.out);
  const RunResult d2 = run_cli("dual --mode delta -i " + f1);
  if (d1.status != 0 || d2.status != 0) {
    detail = "dual failed";
    return false;
  }
  json start = json::parse(seeded.out);
  json expect;
  expect["E"] = start["E"];
  expect["g"] = start["g"];
  expect["type"] = start["type"];
  if (d2.out != canonical_dump(expect)) {
    detail = "delta round trip not byte-identical";
    return false;
  }

  // random -> verify pipeline closure over the fixture type list
  for (const TypeVector& t : kTypeList) {
    const std::string spec = [&] {
      std::string s;
      for (std::size_t i = 0; i < t.d.size(); ++i)
        s += (i ? "," : "") + t.d[i].str();
      return s;
    }();
    for (const std::string kind : {"lattice", "torus"}) {
      const RunResult r =
          run_cli("random --type " + spec + " --seed 23 --kind " + kind);
      if (r.status != 0) {
        detail = "random failed for " + spec;
        return false;
      }
      const std::string f = write_temp("pav_acc_pipe.json", r.out);
      const RunResult v = run_cli("verify --suite all -i " + f);
      if (v.status != 0) {
        detail = kind + " pipeline failed for " + spec + " (exit " +
                 std::to_string(v.status) + ")";
        return false;
      }
    }
  }
  return true;
}

}  // namespace

int main() {
  const auto suite_start = Clock::now();

  criterion(1, "delta involution on type labels", 5.0, c1_involution);
  criterion(2, "matrix-level duality compositions", 10.0, c2_matrix_duality);
  criterion(3, "dual types and kernel invariants", 0.0, c3_dual_types);
  criterion(4, "label/matrix agreement for delta", 0.0,
            c4_label_matrix_agreement);
  criterion(5, "degree equals |pfaffian|", 0.0, c5_degree_pfaffian);
  criterion(6, "fourier-mukai identities", 60.0, c6_fourier);
  criterion(7, "analytic duality on Siegel instances", 60.0,
            c7_analytic_duality);
  criterion(8, "orbit structure of the involution", 5.0, c8_orbits);
  criterion(9, "cli round trips and pipeline closure", 0.0, c9_cli);

  const double total =
      std::chrono::duration<double>(Clock::now() - suite_start).count();
  const bool in_budget = total < 300.0;
  if (!in_budget) ++g_failures;
  std::printf("[%s] acceptance suite total: %.2f s (budget 300 s)\n",
              in_budget ? "PASS" : "FAIL", total);
  return g_failures;
}
