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
// In-memory mutation sessions behind a small JSON-over-HTTP API.
//
//   POST /api/session                {matrix, p, N, seed?, zero_potential?}
//   GET  /api/session/{id}
//   POST /api/session/{id}/mutate    {k}
//   POST /api/session/{id}/undo
//   GET  /api/session/{id}/potential

#ifndef SPECPOT_SERVICE_HPP
#define SPECPOT_SERVICE_HPP

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "specpot/io.hpp"

namespace specpot::service {

struct Response {
  int status = 200;
  std::string body;
};

class SessionStore {
 public:
  /// Loads every persisted session found in state_dir, if given.
  explicit SessionStore(std::optional<std::filesystem::path> state_dir = std::nullopt);
  ~SessionStore();

  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  /// Routes one request; never throws.
  Response handle(const std::string& method, const std::string& path, const std::string& body);

  std::size_t size() const;

 private:
  struct Session;

  io::json create(const io::json& body);
  std::shared_ptr<Session> find(const std::string& id) const;
  io::json state(const Session& s) const;
  io::json potential_table(const Session& s) const;
  void persist(const Session& s) const;
  void load_all();
  std::shared_ptr<Session> build(const std::string& id, const io::json& params, const io::json& matrix) const;

  std::optional<std::filesystem::path> state_dir_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 1;
};

class Server {
 public:
  explicit Server(SessionStore& store);
  ~Server();

  /// Binds host:port (port 0 picks a free one) and returns the bound port,
  /// or -1 on failure.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace specpot::service

#endif  // SPECPOT_SERVICE_HPP
