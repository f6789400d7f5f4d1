#include "mend/engine/service.hpp"

#include <atomic>
#include <map>
#include <mutex>

#include <httplib.h>

#include "mend/engine/session.hpp"
#include "mend/lang/parser.hpp"

namespace mend::engine {

using nlohmann::json;

namespace {

struct Entry {
  std::mutex mu;
  std::optional<Session> session;
};

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void error(httplib::Response& res, int status, std::string_view kind, const std::string& message) {
  reply(res, status, {{"error", kind}, {"message", message}});
}

json session_json(const std::string& id, const Session& s) {
  json j = {{"id", id}, {"state", to_string(s.state())}, {"outcome", outcome_json(s.trace())}};
  if (s.state() != SessionState::Idle) j["problem"] = problem::to_json(s.problem());
  return j;
}

// Maps engine exceptions to HTTP statuses.
template <typename F>
void guarded(httplib::Response& res, F&& f) {
  try {
    f();
  } catch (const lang::ParseError& e) {
    reply(res, 400, {{"error", "ParseError"}, {"message", e.what()}, {"line", e.line()}, {"column", e.column()}});
  } catch (const interp::EntryError& e) {
    error(res, 400, "EntryError", e.what());
  } catch (const problem::InvalidProblem& e) {
    error(res, 400, "InvalidProblem", e.what());
  } catch (const problem::NoProblem& e) {
    error(res, 409, "NoProblem", e.what());
  } catch (const BadState& e) {
    error(res, 409, "BadState", e.what());
  } catch (const BadRank& e) {
    error(res, 404, "BadRank", e.what());
  } catch (const lang::ApplyError& e) {
    error(res, 422, "ApplyError", e.what());
  } catch (const json::exception& e) {
    error(res, 400, "BadRequest", e.what());
  } catch (const std::invalid_argument& e) {
    error(res, 400, "BadRequest", e.what());
  } catch (const std::exception& e) {
    error(res, 500, "InternalError", e.what());
  }
}

}  // namespace

struct Service::Impl {
  ServiceOptions opts;
  httplib::Server server;
  std::mutex mu;
  std::map<std::string, std::shared_ptr<Entry>> sessions;
  std::uint64_t next_id = 1;
  bool bound = false;

  std::shared_ptr<Entry> find(const std::string& id) {
    std::lock_guard lock(mu);
    auto it = sessions.find(id);
    return it == sessions.end() ? nullptr : it->second;
  }

  void routes() {
    server.Post("/session", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        auto request = run_request_from_json(json::parse(req.body));
        auto entry = std::make_shared<Entry>();
        entry->session.emplace(Session::start(std::move(request), opts.config));
        std::string id;
        {
          std::lock_guard lock(mu);
          id = std::to_string(next_id++);
          sessions[id] = entry;
        }
        reply(res, 201, session_json(id, *entry->session));
      });
    });

    server.Post(R"(/session/(\d+)/problem)", [this](const httplib::Request& req, httplib::Response& res) {
      auto entry = find(req.matches[1]);
      if (!entry) return error(res, 404, "NoSession", "no such session");
      guarded(res, [&] {
        std::lock_guard lock(entry->mu);
        entry->session->set_problem_json(json::parse(req.body));
        reply(res, 200, {{"problem", problem::to_json(entry->session->problem())}});
      });
    });

    server.Get(R"(/session/(\d+)/suggest)", [this](const httplib::Request& req, httplib::Response& res) {
      auto entry = find(req.matches[1]);
      if (!entry) return error(res, 404, "NoSession", "no such session");
      res.set_chunked_content_provider("application/x-ndjson", [entry](std::size_t, httplib::DataSink& sink) {
        std::lock_guard lock(entry->mu);
        std::atomic<bool> cancel{false};
        auto send = [&](const json& j) {
          const std::string line = j.dump() + "\n";
          if (!cancel.load() && !sink.write(line.data(), line.size())) cancel.store(true);
        };
        try {
          auto summary = entry->session->suggest(
              [&](const RankedRepair& r) {
                json j = to_json(r);
                j["event"] = "repair";
                send(j);
              },
              &cancel);
          json done = to_json(summary);
          done["event"] = "done";
          send(done);
        } catch (const NoValidRepairs& e) {
          json done = {{"event", "done"}, {"message", e.what()}};
          if (entry->session->last_summary()) done["summary"] = to_json(*entry->session->last_summary());
          send(done);
        } catch (const NoCandidates& e) {
          send({{"event", "error"}, {"error", "NoCandidates"}, {"message", e.what()}});
        } catch (const problem::NoProblem& e) {
          send({{"event", "error"}, {"error", "NoProblem"}, {"message", e.what()}});
        } catch (const std::exception& e) {
          send({{"event", "error"}, {"error", "InternalError"}, {"message", e.what()}});
        }
        sink.done();
        return true;
      });
    });

    server.Get(R"(/session/(\d+)/preview/(\d+))", [this](const httplib::Request& req, httplib::Response& res) {
      auto entry = find(req.matches[1]);
      if (!entry) return error(res, 404, "NoSession", "no such session");
      guarded(res, [&] {
        std::lock_guard lock(entry->mu);
        res.set_content(entry->session->preview(std::stoi(req.matches[2])), "text/plain");
      });
    });

    server.Post(R"(/session/(\d+)/apply/(\d+))", [this](const httplib::Request& req, httplib::Response& res) {
      auto entry = find(req.matches[1]);
      if (!entry) return error(res, 404, "NoSession", "no such session");
      guarded(res, [&] {
        std::lock_guard lock(entry->mu);
        auto result = entry->session->apply(std::stoi(req.matches[2]));
        json j = to_json(result);
        j["session"] = session_json(req.matches[1], *entry->session);
        reply(res, 200, j);
      });
    });

    server.Get("/suggesters", [](const httplib::Request&, httplib::Response& res) {
      json list = json::array();
      for (const auto& c : suggest::Registry::with_builtins().catalog()) {
        list.push_back({{"id", c.id}, {"tier", c.tier}, {"summary", c.summary}, {"implemented", c.implemented}});
      }
      reply(res, 200, list);
    });

    if (!opts.static_dir.empty()) server.set_mount_point("/", opts.static_dir);
  }
};

Service::Service(ServiceOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->opts = std::move(options);
  impl_->routes();
}

Service::~Service() { stop(); }

int Service::bind() {
  int port = impl_->opts.port;
  if (port == 0) {
    port = impl_->server.bind_to_any_port(impl_->opts.host);
    if (port < 0) throw std::runtime_error("cannot bind " + impl_->opts.host);
  } else if (!impl_->server.bind_to_port(impl_->opts.host, port)) {
    throw std::runtime_error("cannot bind " + impl_->opts.host + ":" + std::to_string(port));
  }
  impl_->bound = true;
  return port;
}

void Service::serve() {
  if (!impl_->bound) bind();
  impl_->server.listen_after_bind();
}

void Service::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace mend::engine
