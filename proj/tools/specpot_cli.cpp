/* Copyright 2026 The specpot Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */
// specpot command-line front end. Talks to the library only through the C API.
//
// Exit codes: 0 success / certified / sequence passed, 1 error,
// 2 search found nothing or the sequence failed.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "specpot/specpot.h"

namespace {

struct CliError {
  spp_error code;
  std::string message;
};

void check(spp_error e) {
  if (e != SPP_OK) throw CliError{e, spp_last_error()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError{SPP_ERR_INVALID_ARGUMENT, "cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw CliError{SPP_ERR_INVALID_ARGUMENT, "cannot write " + path};
  out << text;
}

// Owns a string returned by the C API.
struct Owned {
  char* s = nullptr;
  ~Owned() { spp_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

struct Potential {
  spp_potential* p = nullptr;
  ~Potential() { spp_potential_free(p); }
};

struct SpeciesHandle {
  spp_species* s = nullptr;
  ~SpeciesHandle() { spp_species_free(s); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Species with potential: realization, mutation and non-degeneracy checks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint32_t prime = 101;
  int trunc = 6;
  std::uint64_t seed = 0;
  app.add_option("--prime", prime, "prime p of the base field F_p")->capture_default_str();
  app.add_option("--trunc", trunc, "truncation order N")->capture_default_str();
  app.add_option("--seed", seed, "seed for random potentials")->capture_default_str();

  std::int64_t fam_a = 0, fam_b = 0;
  auto* family = app.add_subcommand("family", "print the 4x4 family matrix B(a,b)");
  family->add_option("a", fam_a)->required();
  family->add_option("b", fam_b)->required();

  std::string matrix_file, dot_file;
  auto* realize = app.add_subcommand("realize", "realize a matrix as a species and verify it");
  realize->add_option("matrix", matrix_file, "matrix JSON file")->required();
  realize->add_option("--dot", dot_file, "also write the valued quiver as DOT");

  bool zero = false;
  auto* init = app.add_subcommand("init", "realize a matrix and attach a potential; prints a state file");
  init->add_option("matrix", matrix_file, "matrix JSON file")->required();
  init->add_flag("--zero", zero, "use the zero potential");

  std::string state_file, out_file;
  int k = 0;
  auto* mutate = app.add_subcommand("mutate", "reduced mutation of a state at vertex k");
  mutate->add_option("state", state_file, "state JSON file")->required();
  mutate->add_option("k", k, "vertex (1-based)")->required();
  mutate->add_option("--out", out_file, "write the mutated state here");

  std::vector<int> sequence;
  auto* checkcmd = app.add_subcommand("check", "check that a mutation sequence stays 2-acyclic");
  checkcmd->add_option("state", state_file, "state JSON file")->required();
  checkcmd->add_option("sequence", sequence, "vertices k_1 ... k_l (1-based)");

  std::string species_file;
  int max_len = 4, trials = 20;
  auto* search = app.add_subcommand("search", "search for a potential passing every short sequence");
  search->add_option("input", species_file, "species or matrix JSON file")->required();
  search->add_option("--max-len", max_len, "longest sequence checked")->capture_default_str();
  search->add_option("--trials", trials, "number of random potentials tried")->capture_default_str();

  auto* deform = app.add_subcommand("deform", "truncated deformation-space dimensions of a state");
  deform->add_option("state", state_file, "state JSON file")->required();

  int port = 8080;
  std::string host = "127.0.0.1", state_dir;
  auto* serve = app.add_subcommand("serve", "run the HTTP session API");
  serve->add_option("--port", port, "TCP port")->capture_default_str();
  serve->add_option("--host", host, "bind address")->capture_default_str();
  serve->add_option("--state-dir", state_dir, "persist sessions as JSON files here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*family) {
      Owned out;
      check(spp_family(fam_a, fam_b, &out.s));
      std::cout << out.str();
    } else if (*realize) {
      const std::string m = read_file(matrix_file);
      Owned out;
      check(spp_realize_report(m.c_str(), prime, &out.s));
      std::cout << out.str();
      if (!dot_file.empty()) {
        SpeciesHandle sp;
        check(spp_species_realize(m.c_str(), prime, &sp.s));
        Owned dot;
        check(spp_species_to_dot(sp.s, &dot.s));
        write_file(dot_file, dot.str());
      }
    } else if (*init) {
      const std::string m = read_file(matrix_file);
      SpeciesHandle sp;
      check(spp_species_realize(m.c_str(), prime, &sp.s));
      Potential p;
      check(zero ? spp_potential_zero(sp.s, trunc, &p.p) : spp_potential_random(sp.s, trunc, seed, &p.p));
      Owned out;
      check(spp_potential_to_json(p.p, &out.s));
      std::cout << out.str();
    } else if (*mutate) {
      Potential p, q;
      check(spp_potential_from_json(read_file(state_file).c_str(), &p.p));
      Owned out;
      check(spp_mutate(p.p, k, &q.p, &out.s));
      std::cout << out.str();
      if (!out_file.empty()) {
        Owned st;
        check(spp_potential_to_json(q.p, &st.s));
        write_file(out_file, st.str());
      }
    } else if (*checkcmd) {
      Potential p;
      check(spp_potential_from_json(read_file(state_file).c_str(), &p.p));
      int passed = 0;
      Owned out;
      check(spp_check_sequence(p.p, sequence.data(), sequence.size(), &passed, &out.s));
      std::cout << out.str();
      return passed ? 0 : 2;
    } else if (*search) {
      const std::string text = read_file(species_file);
      SpeciesHandle sp;
      if (spp_species_from_json(text.c_str(), &sp.s) != SPP_OK) check(spp_species_realize(text.c_str(), prime, &sp.s));
      int found = 0;
      Owned out;
      check(spp_search(sp.s, trunc, max_len, trials, seed, &found, &out.s));
      std::cout << out.str();
      return found ? 0 : 2;
    } else if (*deform) {
      Potential p;
      check(spp_potential_from_json(read_file(state_file).c_str(), &p.p));
      Owned out;
      check(spp_deformation(p.p, trunc, &out.s));
      std::cout << out.str();
    } else if (*serve) {
      std::cerr << "listening on " << host << ":" << port << "\n";
      check(spp_serve(host.c_str(), port, state_dir.empty() ? nullptr : state_dir.c_str()));
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return 1;
  }
  return 0;
}
