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
#include "specpot/service.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "httplib.h"
#include "specpot/error.hpp"

namespace specpot::service {

using io::json;

namespace {

constexpr int kMaxTrunc = 12;

json error_body(const std::string& code, const std::string& message) {
  return json{{"error", message}, {"code", code}};
}

const char* code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::NotFound: return "not_found";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Internal: return "internal";
  }
  return "internal";
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : path) {
    if (c == '/') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool two_acyclic_state(const Series& p) { return is_2acyclic(p) && !p.species().has_two_cycles(); }

}  // namespace

struct SessionStore::Session {
  struct Frame {
    Series potential;
    bool two_acyclic;
  };

  std::string id;
  json params;
  json matrix;
  std::vector<Frame> frames;
  std::vector<int> history;  // 1-based
  std::mutex mu;
};

SessionStore::SessionStore(std::optional<std::filesystem::path> state_dir) : state_dir_(std::move(state_dir)) {
  if (state_dir_) {
    std::filesystem::create_directories(*state_dir_);
    load_all();
  }
}

SessionStore::~SessionStore() = default;

std::size_t SessionStore::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return sessions_.size();
}

std::shared_ptr<SessionStore::Session> SessionStore::build(const std::string& id, const json& params,
                                                           const json& matrix) const {
  const PrimeModulus p(params.at("prime").get<std::uint32_t>());
  const int trunc = params.at("trunc").get<int>();
  require(trunc >= 2 && trunc <= kMaxTrunc, ErrorCode::InvalidArgument,
          "N must lie in 2.." + std::to_string(kMaxTrunc));
  const ExchangeMatrix b = io::matrix_from_json(matrix);
  const auto d = find_skew_symmetrizer(b);
  require(d.has_value(), ErrorCode::InvalidArgument, "matrix is not skew-symmetrizable");
  require(check_divisibility(b, *d), ErrorCode::InvalidArgument, "divisibility condition d_j | b_ij fails");
  SpeciesPtr sp = realize(b, *d, p);
  Series pot = params.at("zero_potential").get<bool>()
                   ? Series(sp, trunc)
                   : random_potential(sp, trunc, params.at("seed").get<std::uint64_t>());
  auto s = std::make_shared<Session>();
  s->id = id;
  s->params = params;
  s->matrix = io::matrix_to_json(b);
  const bool ok = two_acyclic_state(pot);
  s->frames.push_back({std::move(pot), ok});
  return s;
}

json SessionStore::create(const json& body) {
  require(body.is_object(), ErrorCode::Parse, "request body must be a JSON object");
  json matrix;
  if (body.contains("family")) {
    const auto& f = body.at("family");
    require(f.is_object() && f.contains("a") && f.contains("b"), ErrorCode::Parse, "family needs keys a and b");
    matrix = io::matrix_to_json(family_matrix(f.at("a").get<std::int64_t>(), f.at("b").get<std::int64_t>()));
  } else {
    require(body.contains("matrix"), ErrorCode::Parse, "missing key 'matrix'");
    matrix = body.at("matrix");
  }
  auto pick = [&](const char* a, const char* b, json dflt) {
    if (body.contains(a)) return body.at(a);
    if (body.contains(b)) return body.at(b);
    return dflt;
  };
  json params{{"prime", pick("p", "prime", 101)},
              {"trunc", pick("N", "trunc", 6)},
              {"seed", pick("seed", "seed", 0)},
              {"zero_potential", pick("zero_potential", "zero_potential", false)}};
  auto nonneg = [](const json& v) { return v.is_number_integer() && v.get<std::int64_t>() >= 0; };
  require(nonneg(params["prime"]) && params["trunc"].is_number_integer() && nonneg(params["seed"]) &&
              params["zero_potential"].is_boolean(),
          ErrorCode::Parse, "p, N and seed must be nonnegative integers; zero_potential a boolean");

  std::string id;
  {
    std::lock_guard<std::mutex> lock(mu_);
    id = "s" + std::to_string(next_id_++);
  }
  auto s = build(id, params, matrix);
  persist(*s);
  json st = state(*s);
  {
    std::lock_guard<std::mutex> lock(mu_);
    sessions_.emplace(id, std::move(s));
  }
  return json{{"id", id}, {"state", st}};
}

std::shared_ptr<SessionStore::Session> SessionStore::find(const std::string& id) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = sessions_.find(id);
  require(it != sessions_.end(), ErrorCode::NotFound, "unknown session '" + id + "'");
  return it->second;
}

json SessionStore::state(const Session& s) const {
  const auto& f = s.frames.back();
  const Species& sp = f.potential.species();
  const ExchangeMatrix b = dimension_matrix(sp);
  json verts = json::array();
  for (int v = 0; v < sp.vertex_count(); ++v) verts.push_back({{"index", v + 1}, {"degree", sp.degree(v)}});
  json core = io::state_to_json(f.potential);
  return json{{"id", s.id},
              {"params", s.params},
              {"matrix", io::matrix_to_json(b)},
              {"vertices", verts},
              {"edges", io::edge_list(b)},
              {"two_acyclic", f.two_acyclic},
              {"history", s.history},
              {"history_length", s.history.size()},
              {"potential_summary",
               {{"terms_by_degree", io::terms_by_degree(f.potential)}, {"total_terms", f.potential.size()}}},
              {"arrow_count", sp.arrow_count()},
              {"state_hash", io::state_hash(core)}};
}

json SessionStore::potential_table(const Session& s) const {
  const Series& pot = s.frames.back().potential;
  std::vector<json> by_degree(static_cast<std::size_t>(pot.trunc()) + 1, json::array());
  const json terms = io::series_to_json(pot).at("terms");
  for (const auto& t : terms) by_degree[t["monomial"].size() / 2].push_back(t);
  json table = json::array();
  for (std::size_t m = 0; m < by_degree.size(); ++m)
    if (!by_degree[m].empty())
      table.push_back({{"degree", m}, {"count", by_degree[m].size()}, {"terms", by_degree[m]}});
  return json{{"id", s.id},
              {"trunc", pot.trunc()},
              {"two_acyclic", s.frames.back().two_acyclic},
              {"degrees", table},
              {"text", to_string(pot)}};
}

void SessionStore::persist(const Session& s) const {
  if (!state_dir_) return;
  const json doc{{"id", s.id}, {"params", s.params}, {"matrix", s.matrix}, {"history", s.history}};
  const auto path = *state_dir_ / (s.id + ".json");
  const auto tmp = *state_dir_ / (s.id + ".json.tmp");
  {
    std::ofstream out(tmp);
    require(static_cast<bool>(out), ErrorCode::Internal, "cannot write " + tmp.string());
    out << io::dump(doc);
  }
  std::filesystem::rename(tmp, path);
}

void SessionStore::load_all() {
  for (const auto& entry : std::filesystem::directory_iterator(*state_dir_)) {
    if (entry.path().extension() != ".json") continue;
    try {
      std::ifstream in(entry.path());
      std::stringstream ss;
      ss << in.rdbuf();
      const json doc = io::parse(ss.str());
      const std::string id = doc.at("id").get<std::string>();
      auto s = build(id, doc.at("params"), doc.at("matrix"));
      for (int k : doc.at("history").get<std::vector<int>>()) {
        MutationResult r = mutate(s->frames.back().potential, k - 1);
        s->frames.push_back({std::move(r.potential), r.two_acyclic});
        s->history.push_back(k);
      }
      if (id.size() > 1 && id[0] == 's') next_id_ = std::max<std::uint64_t>(next_id_, std::stoull(id.substr(1)) + 1);
      sessions_.emplace(id, std::move(s));
    } catch (const std::exception& e) {
      std::cerr << "skipping " << entry.path() << ": " << e.what() << "\n";
    }
  }
}

Response SessionStore::handle(const std::string& method, const std::string& path, const std::string& body) {
  bool creating = false;
  try {
    const auto seg = split_path(path);
    if (seg.size() < 2 || seg[0] != "api" || seg[1] != "session")
      return {404, io::dump(error_body("not_found", "no route for " + path))};
    auto bad_method = [&] { return Response{405, io::dump(error_body("method", method + " not allowed"))}; };

    if (seg.size() == 2) {
      if (method != "POST") return bad_method();
      creating = true;
      return {200, io::dump(create(io::parse(body)))};
    }
    auto s = find(seg[2]);
    std::lock_guard<std::mutex> lock(s->mu);
    if (seg.size() == 3) {
      if (method != "GET") return bad_method();
      return {200, io::dump(state(*s))};
    }
    if (seg.size() != 4) return {404, io::dump(error_body("not_found", "no route for " + path))};
    const std::string& action = seg[3];
    if (action == "potential") {
      if (method != "GET") return bad_method();
      return {200, io::dump(potential_table(*s))};
    }
    if (action == "undo") {
      if (method != "POST") return bad_method();
      if (s->history.empty()) return {409, io::dump(error_body("precondition", "history is empty"))};
      s->frames.pop_back();
      s->history.pop_back();
      persist(*s);
      return {200, io::dump(state(*s))};
    }
    if (action == "mutate") {
      if (method != "POST") return bad_method();
      const json req = io::parse(body);
      require(req.is_object() && req.contains("k") && req.at("k").is_number_integer(), ErrorCode::InvalidArgument,
              "body must be {\"k\": <vertex>}");
      const int n = s->frames.back().potential.species().vertex_count();
      const auto k = req.at("k").get<std::int64_t>();
      require(k >= 1 && k <= n, ErrorCode::InvalidArgument,
              "k = " + std::to_string(k) + " out of range 1.." + std::to_string(n));
      MutationResult r = mutate(s->frames.back().potential, static_cast<int>(k - 1));
      // Same document the CLI prints for `mutate`.
      json last = io::mutation_to_json(r);
      s->frames.push_back({std::move(r.potential), r.two_acyclic});
      s->history.push_back(static_cast<int>(k));
      persist(*s);
      json st = state(*s);
      st["last_mutation"] = last;
      return {200, io::dump(st)};
    }
    return {404, io::dump(error_body("not_found", "no route for " + path))};
  } catch (const Error& e) {
    int status = 500;
    switch (e.code()) {
      case ErrorCode::NotFound: status = 404; break;
      case ErrorCode::InvalidArgument:
      case ErrorCode::Parse: status = 400; break;
      case ErrorCode::Precondition: status = creating ? 400 : 409; break;
      case ErrorCode::Internal: status = 500; break;
    }
    return {status, io::dump(error_body(code_name(e.code()), e.what()))};
  } catch (const json::exception& e) {
    return {400, io::dump(error_body("parse", e.what()))};
  } catch (const std::exception& e) {
    return {500, io::dump(error_body("internal", e.what()))};
  }
}

// ---------------------------------------------------------------------------

struct Server::Impl {
  explicit Impl(SessionStore& s) : store(s) {}
  SessionStore& store;
  httplib::Server svr;
};

Server::Server(SessionStore& store) : impl_(std::make_unique<Impl>(store)) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    const Response r = impl_->store.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(r.body, "application/json");
  };
  impl_->svr.Get(R"(/api/.*)", handler);
  impl_->svr.Post(R"(/api/.*)", handler);
  impl_->svr.Put(R"(/api/.*)", handler);
  impl_->svr.Patch(R"(/api/.*)", handler);
  impl_->svr.Delete(R"(/api/.*)", handler);
  impl_->svr.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  if (port == 0) return impl_->svr.bind_to_any_port(host);
  return impl_->svr.bind_to_port(host, port) ? port : -1;
}

void Server::listen() { impl_->svr.listen_after_bind(); }

void Server::stop() {
  if (impl_) impl_->svr.stop();
}

}  // namespace specpot::service
