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
/*
 * C interface to specpot.
 *
 * Every function returns an spp_error. On failure the message is available
 * from spp_last_error() until the next call on the same thread. Strings
 * returned through char** are heap-allocated JSON (or DOT) and must be
 * released with spp_string_free. Vertex and mutation indices are 1-based.
 */
#ifndef SPECPOT_H
#define SPECPOT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  SPP_OK = 0,
  SPP_ERR_INVALID_ARGUMENT = 1,
  SPP_ERR_PRECONDITION = 2,
  SPP_ERR_NOT_FOUND = 3,
  SPP_ERR_PARSE = 4,
  SPP_ERR_INTERNAL = 5,
  SPP_ERR_NULL_POINTER = 6
} spp_error;

typedef struct spp_species spp_species;
/* A species together with a truncated potential on it. */
typedef struct spp_potential spp_potential;
typedef struct spp_server spp_server;

const char* spp_version(void);
const char* spp_last_error(void);
void spp_string_free(char* s);

/* Family matrix, its minimal skew-symmetrizer and the primitivity proxy. */
spp_error spp_family(int64_t a, int64_t b, char** json_out);

/* Matrix JSON: {"rows": [[...]]} or a bare array of rows. The
 * skew-symmetrizer is the minimal one. */
spp_error spp_species_realize(const char* matrix_json, uint32_t prime, spp_species** out);
spp_error spp_species_from_json(const char* species_json, spp_species** out);
spp_error spp_species_to_json(const spp_species* s, char** json_out);
spp_error spp_species_to_dot(const spp_species* s, char** dot_out);
/* Checks the four realization clauses against a matrix. */
spp_error spp_species_verify(const spp_species* s, const char* matrix_json, char** report_json);
/* Realizes a matrix and reports {species, matrix, skew_symmetrizer,
 * verification, dot} in one document. Fails with SPP_ERR_PRECONDITION when
 * the divisibility condition does not hold. */
spp_error spp_realize_report(const char* matrix_json, uint32_t prime, char** json_out);
void spp_species_free(spp_species* s);

spp_error spp_potential_random(const spp_species* s, int trunc, uint64_t seed, spp_potential** out);
spp_error spp_potential_zero(const spp_species* s, int trunc, spp_potential** out);
/* State JSON: {"species": ..., "potential": ...}. */
spp_error spp_potential_from_json(const char* state_json, spp_potential** out);
spp_error spp_potential_to_json(const spp_potential* p, char** state_json);
void spp_potential_free(spp_potential* p);

/* Reduced mutation at k. Either output may be NULL. */
spp_error spp_mutate(const spp_potential* p, int k, spp_potential** out, char** result_json);
/* *passed is set to 1 when every step stays 2-acyclic. */
spp_error spp_check_sequence(const spp_potential* p, const int* seq, size_t len, int* passed, char** report_json);
/* *found is set to 1 when a certificate was produced. */
spp_error spp_search(const spp_species* s, int trunc, int max_len, int trials, uint64_t seed, int* found,
                     char** certificate_json);
spp_error spp_deformation(const spp_potential* p, int trunc, char** report_json);

/* HTTP session service. state_dir may be NULL. Port 0 binds a free port. */
spp_error spp_server_start(const char* host, int port, const char* state_dir, spp_server** out, int* bound_port);
spp_error spp_server_stop(spp_server* server);
/* Blocking variant of start. */
spp_error spp_serve(const char* host, int port, const char* state_dir);

#ifdef __cplusplus
}
#endif

#endif /* SPECPOT_H */
