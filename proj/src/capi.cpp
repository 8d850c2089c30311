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
#include "specpot/specpot.h"

#include <cstring>
#include <string>
#include <thread>

#include "specpot/error.hpp"
#include "specpot/io.hpp"
#include "specpot/service.hpp"

struct spp_species {
  specpot::SpeciesPtr sp;
};

struct spp_potential {
  specpot::Series pot;
};

struct spp_server {
  std::unique_ptr<specpot::service::SessionStore> store;
  std::unique_ptr<specpot::service::Server> server;
  std::thread thread;
};

namespace {

thread_local std::string g_last_error;

template <class F>
spp_error guard(F&& f) {
  g_last_error.clear();
  try {
    f();
    return SPP_OK;
  } catch (const specpot::Error& e) {
    g_last_error = e.what();
    return static_cast<spp_error>(static_cast<int>(e.code()));
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return SPP_ERR_PARSE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SPP_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SPP_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

#define SPP_NONNULL(p)                                 \
  do {                                                 \
    if (!(p)) {                                        \
      g_last_error = #p " is null";                    \
      return SPP_ERR_NULL_POINTER;                     \
    }                                                  \
  } while (0)

extern "C" {

const char* spp_version(void) { return "0.1.0"; }

const char* spp_last_error(void) { return g_last_error.c_str(); }

void spp_string_free(char* s) { std::free(s); }

spp_error spp_family(int64_t a, int64_t b, char** json_out) {
  SPP_NONNULL(json_out);
  return guard([&] { *json_out = dup(specpot::io::dump(specpot::io::family_to_json(a, b))); });
}

spp_error spp_species_realize(const char* matrix_json, uint32_t prime, spp_species** out) {
  SPP_NONNULL(matrix_json);
  SPP_NONNULL(out);
  return guard([&] {
    using namespace specpot;
    const ExchangeMatrix b = io::matrix_from_json(io::parse(matrix_json));
    const auto d = find_skew_symmetrizer(b);
    require(d.has_value(), ErrorCode::Precondition, "matrix is not skew-symmetrizable");
    *out = new spp_species{realize(b, *d, PrimeModulus(prime))};
  });
}

spp_error spp_species_from_json(const char* species_json, spp_species** out) {
  SPP_NONNULL(species_json);
  SPP_NONNULL(out);
  return guard([&] {
    using namespace specpot;
    io::json j = io::parse(species_json);
    if (j.is_object() && j.contains("species")) j = j.at("species");
    *out = new spp_species{io::species_from_json(j)};
  });
}

spp_error spp_species_to_json(const spp_species* s, char** json_out) {
  SPP_NONNULL(s);
  SPP_NONNULL(json_out);
  return guard([&] {
    using namespace specpot;
    io::json j{{"species", io::species_to_json(*s->sp)}, {"matrix", io::matrix_to_json(dimension_matrix(*s->sp))}};
    *json_out = dup(io::dump(j));
  });
}

spp_error spp_species_to_dot(const spp_species* s, char** dot_out) {
  SPP_NONNULL(s);
  SPP_NONNULL(dot_out);
  return guard([&] { *dot_out = dup(specpot::io::to_dot(*s->sp)); });
}

spp_error spp_species_verify(const spp_species* s, const char* matrix_json, char** report_json) {
  SPP_NONNULL(s);
  SPP_NONNULL(matrix_json);
  SPP_NONNULL(report_json);
  return guard([&] {
    using namespace specpot;
    const ExchangeMatrix b = io::matrix_from_json(io::parse(matrix_json));
    io::json j = io::realization_to_json(verify_realization(*s->sp, b));
    j["round_trip"] = dimension_matrix(*s->sp) == b;
    *report_json = dup(io::dump(j));
  });
}

spp_error spp_realize_report(const char* matrix_json, uint32_t prime, char** json_out) {
  SPP_NONNULL(matrix_json);
  SPP_NONNULL(json_out);
  return guard([&] {
    using namespace specpot;
    const ExchangeMatrix b = io::matrix_from_json(io::parse(matrix_json));
    const auto d = find_skew_symmetrizer(b);
    require(d.has_value(), ErrorCode::Precondition, "matrix is not skew-symmetrizable");
    const SpeciesPtr sp = realize(b, *d, PrimeModulus(prime));
    io::json verification = io::realization_to_json(verify_realization(*sp, b));
    verification["round_trip"] = dimension_matrix(*sp) == b;
    io::json j{{"matrix", io::matrix_to_json(b)},
               {"skew_symmetrizer", d->diag},
               {"species", io::species_to_json(*sp)},
               {"verification", verification},
               {"dot", io::to_dot(*sp)}};
    *json_out = dup(io::dump(j));
  });
}

void spp_species_free(spp_species* s) { delete s; }

spp_error spp_potential_random(const spp_species* s, int trunc, uint64_t seed, spp_potential** out) {
  SPP_NONNULL(s);
  SPP_NONNULL(out);
  return guard([&] { *out = new spp_potential{specpot::random_potential(s->sp, trunc, seed)}; });
}

spp_error spp_potential_zero(const spp_species* s, int trunc, spp_potential** out) {
  SPP_NONNULL(s);
  SPP_NONNULL(out);
  return guard([&] { *out = new spp_potential{specpot::Series(s->sp, trunc)}; });
}

spp_error spp_potential_from_json(const char* state_json, spp_potential** out) {
  SPP_NONNULL(state_json);
  SPP_NONNULL(out);
  return guard([&] {
    using namespace specpot;
    io::json j = io::parse(state_json);
    if (j.is_object() && j.contains("state")) j = j.at("state");
    *out = new spp_potential{io::state_from_json(j)};
  });
}

spp_error spp_potential_to_json(const spp_potential* p, char** state_json) {
  SPP_NONNULL(p);
  SPP_NONNULL(state_json);
  return guard([&] { *state_json = dup(specpot::io::dump(specpot::io::state_to_json(p->pot))); });
}

void spp_potential_free(spp_potential* p) { delete p; }

spp_error spp_mutate(const spp_potential* p, int k, spp_potential** out, char** result_json) {
  SPP_NONNULL(p);
  return guard([&] {
    using namespace specpot;
    const int n = p->pot.species().vertex_count();
    require(k >= 1 && k <= n, ErrorCode::InvalidArgument,
            "k = " + std::to_string(k) + " out of range 1.." + std::to_string(n));
    MutationResult r = mutate(p->pot, k - 1);
    if (result_json) *result_json = dup(io::dump(io::mutation_to_json(r)));
    if (out) *out = new spp_potential{std::move(r.potential)};
  });
}

spp_error spp_check_sequence(const spp_potential* p, const int* seq, size_t len, int* passed, char** report_json) {
  SPP_NONNULL(p);
  if (len > 0) SPP_NONNULL(seq);
  return guard([&] {
    using namespace specpot;
    std::vector<int> s;
    for (size_t q = 0; q < len; ++q) s.push_back(seq[q] - 1);
    const SequenceReport rep = check_sequence(p->pot, s);
    if (passed) *passed = rep.passed() ? 1 : 0;
    if (report_json) *report_json = dup(io::dump(io::sequence_to_json(rep)));
  });
}

spp_error spp_search(const spp_species* s, int trunc, int max_len, int trials, uint64_t seed, int* found,
                     char** certificate_json) {
  SPP_NONNULL(s);
  return guard([&] {
    using namespace specpot;
    SearchParams params;
    params.trunc = trunc;
    params.max_len = max_len;
    params.trials = trials;
    params.seed = seed;
    const SearchResult r = search_nondegenerate(s->sp, params);
    if (found) *found = r.found() ? 1 : 0;
    if (certificate_json) *certificate_json = dup(io::dump(io::search_to_json(r, s->sp->prime().value())));
  });
}

spp_error spp_deformation(const spp_potential* p, int trunc, char** report_json) {
  SPP_NONNULL(p);
  SPP_NONNULL(report_json);
  return guard([&] {
    using namespace specpot;
    *report_json = dup(io::dump(io::deformation_to_json(deformation_dim_truncated(p->pot, trunc))));
  });
}

spp_error spp_server_start(const char* host, int port, const char* state_dir, spp_server** out, int* bound_port) {
  SPP_NONNULL(out);
  return guard([&] {
    using namespace specpot;
    auto srv = std::make_unique<spp_server>();
    std::optional<std::filesystem::path> dir;
    if (state_dir && *state_dir) dir = std::filesystem::path(state_dir);
    srv->store = std::make_unique<service::SessionStore>(dir);
    srv->server = std::make_unique<service::Server>(*srv->store);
    const int bound = srv->server->bind(host ? host : "127.0.0.1", port);
    require(bound > 0, ErrorCode::Precondition, "cannot bind port " + std::to_string(port));
    if (bound_port) *bound_port = bound;
    service::Server* raw = srv->server.get();
    srv->thread = std::thread([raw] { raw->listen(); });
    *out = srv.release();
  });
}

spp_error spp_server_stop(spp_server* server) {
  SPP_NONNULL(server);
  return guard([&] {
    server->server->stop();
    if (server->thread.joinable()) server->thread.join();
    delete server;
  });
}

spp_error spp_serve(const char* host, int port, const char* state_dir) {
  return guard([&] {
    using namespace specpot;
    std::optional<std::filesystem::path> dir;
    if (state_dir && *state_dir) dir = std::filesystem::path(state_dir);
    service::SessionStore store(dir);
    service::Server server(store);
    const int bound = server.bind(host ? host : "127.0.0.1", port);
    require(bound > 0, ErrorCode::Precondition, "cannot bind port " + std::to_string(port));
    server.listen();
  });
}

}  // extern "C"
