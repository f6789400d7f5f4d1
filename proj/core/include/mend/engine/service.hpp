#pragma once

#include <memory>
#include <string>

#include "mend/engine/config.hpp"

namespace mend::engine {

struct ServiceOptions {
  std::string host = "127.0.0.1";
  int port = 8765;  // 0: any free port
  EngineConfig config;
  // Served at / when set (the web client).
  std::string static_dir;
};

// Local HTTP service. Endpoints (JSON bodies, errors as {"error", "message"}):
//   POST /session                    RunRequest -> {id, state, outcome, problem}
//   POST /session/{id}/problem       problem JSON -> {problem}
//   GET  /session/{id}/suggest       NDJSON: {"event":"repair",...} per accepted
//                                    repair, then {"event":"done", summary} or
//                                    {"event":"error", ...}
//   GET  /session/{id}/preview/{r}   unified diff (text/plain)
//   POST /session/{id}/apply/{r}     ApplyResult
//   GET  /suggesters                 suggester catalog
class Service {
 public:
  explicit Service(ServiceOptions options);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  // Binds and returns the port; throws std::runtime_error on failure.
  int bind();
  // Blocks until stop().
  void serve();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mend::engine
