// mend command-line front end. Session state lives in ./.mend-session.json
// between invocations.
#include <csignal>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mend/corpus/corpus.hpp"
#include "mend/engine/bench.hpp"
#include "mend/engine/service.hpp"
#include "mend/engine/session.hpp"
#include "mend/interp/value_json.hpp"
#include "mend/lang/diff.hpp"
#include "mend/lang/parser.hpp"
#include "mend/lang/printer.hpp"

using namespace mend;
using nlohmann::json;

namespace {

const char* kSessionFile = ".mend-session.json";

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

json load_state() {
  std::ifstream in(kSessionFile);
  if (!in) throw std::runtime_error("no session; start one with `mend run <file>`");
  return json::parse(in);
}

void save_state(const json& j) { spit(kSessionFile, j.dump(2) + "\n"); }

engine::EngineConfig config_for(const std::string& path) {
  return path.empty() ? engine::EngineConfig{} : engine::load_config(path);
}

engine::RunRequest request_from_state(const json& st) {
  json r = st.at("request");
  r["source"] = slurp(st.at("file").get<std::string>());
  return engine::run_request_from_json(r);
}

void print_outcome(const engine::Session& s) {
  json o = engine::outcome_json(s.trace());
  std::cout << o["detail"].get<std::string>() << " after " << s.trace().size() << " steps\n";
  for (const auto& line : s.trace().output) std::cout << "  | " << line << "\n";
  if (s.state() != engine::SessionState::Idle) {
    std::cout << "problem: " << problem::to_json(s.problem()).dump() << "\n";
  }
}

int cmd_run(const std::string& file, const std::string& entry, const std::vector<std::string>& args,
            const std::string& brk, std::optional<std::int64_t> budget, const std::string& config) {
  engine::RunRequest req;
  req.source = slurp(file);
  req.entry = entry;
  for (const auto& a : args) req.args.push_back(interp::deep_value_from_json(json::parse(a)));
  if (!brk.empty()) {
    auto colon = brk.find(':');
    interp::Breakpoint b;
    b.line = std::stoi(brk.substr(0, colon));
    if (colon != std::string::npos) b.count = std::stoi(brk.substr(colon + 1));
    req.breakpoint = b;
  }
  req.budget = budget;
  auto s = engine::Session::start(req, config_for(config));
  print_outcome(s);
  json r = engine::to_json(req);
  r.erase("source");
  save_state({{"file", file}, {"request", r}, {"config", config}});
  return 0;
}

int cmd_suggest(const std::string& problem_text, bool as_json, std::optional<int> frame, bool show_candidates) {
  json st = load_state();
  auto s = engine::Session::start(request_from_state(st), config_for(st.value("config", "")));
  if (!problem_text.empty()) s.set_problem_json(json::parse(problem_text));
  if (frame) s.set_start_frame(*frame);
  auto stream = [&](const engine::RankedRepair& r) {
    if (!as_json) return;
    json j = engine::to_json(r);
    j["event"] = "repair";
    std::cout << j.dump() << "\n" << std::flush;
  };
  int status = 0;
  try {
    auto summary = s.suggest(stream);
    if (as_json) {
      json done = engine::to_json(summary);
      done["event"] = "done";
      std::cout << done.dump() << "\n";
    }
  } catch (const engine::NoValidRepairs& e) {
    if (as_json) std::cout << json{{"event", "done"}, {"message", e.what()}}.dump() << "\n";
    else std::cout << e.what() << "\n";
    status = 2;
  }
  if (show_candidates) {
    for (const auto& c : s.candidates()) {
      std::cout << "candidate " << c.function << ":" << c.line << " priority " << c.priority << "\n";
    }
  }
  json saved = json::array();
  for (const auto& r : s.repairs()) {
    json j = engine::to_json(r);
    j["result"] = r.repair.result_text;
    saved.push_back(j);
    if (!as_json) {
      std::cout << std::setw(3) << r.rank << "  " << std::fixed << std::setprecision(3) << r.combined_score
                << "  line " << std::setw(3) << r.repair.line << "  " << r.repair.description << "\n";
    }
  }
  st["source"] = s.request().source;
  st["problem"] = problem::to_json(s.problem());
  st["repairs"] = saved;
  save_state(st);
  return status;
}

const json& saved_repair(const json& st, int rank) {
  if (!st.contains("repairs")) throw std::runtime_error("no repairs; run `mend suggest` first");
  const auto& list = st.at("repairs");
  if (rank < 1 || rank > static_cast<int>(list.size())) throw engine::BadRank("no repair at rank " + std::to_string(rank));
  return list.at(static_cast<std::size_t>(rank - 1));
}

int cmd_preview(int rank) {
  json st = load_state();
  const auto& r = saved_repair(st, rank);
  auto before = lang::parse(st.at("source").get<std::string>());
  auto after = lang::parse(r.at("result").get<std::string>());
  std::cout << lang::diff_render(*before, *after);
  return 0;
}

int cmd_apply(int rank) {
  json st = load_state();
  const auto& r = saved_repair(st, rank);
  const std::string file = st.at("file");
  spit(file, r.at("result").get<std::string>());
  std::cout << "applied: " << r.at("description").get<std::string>() << "\n";
  auto s = engine::Session::start(request_from_state(st), config_for(st.value("config", "")));
  print_outcome(s);
  st.erase("repairs");
  save_state(st);
  return s.state() == engine::SessionState::Idle ? 0 : 1;
}

int cmd_bench(const std::string& dir, const std::string& report, bool timings, const std::string& config) {
  auto cases = corpus::load_corpus(dir);
  auto result = engine::bench(cases, config_for(config), timings);
  const std::string text = engine::to_json(result).dump(2) + "\n";
  if (report.empty()) std::cout << text;
  else spit(report, text);
  const auto summary = engine::to_json(result)["summary"];
  std::cerr << summary["repaired"] << "/" << summary["cases"] << " repaired, " << summary["rank1"] << " at rank 1\n";
  return 0;
}

int cmd_verify(const std::string& dir) {
  int bad = 0;
  for (const auto& c : corpus::verify_corpus(corpus::load_corpus(dir))) {
    std::cout << (c.ok() ? "ok   " : "FAIL ") << c.name << "\n";
    for (const auto& p : c.problems) std::cout << "       " << p << "\n";
    if (!c.ok()) ++bad;
  }
  return bad ? 1 : 0;
}

engine::Service* running = nullptr;

int cmd_serve(const std::string& host, int port, const std::string& ui, const std::string& config) {
  engine::ServiceOptions o;
  o.host = host;
  o.port = port;
  o.static_dir = ui;
  o.config = config_for(config);
  engine::Service service(o);
  const int bound = service.bind();
  std::cerr << "listening on http://" << host << ":" << bound << "\n";
  running = &service;
  std::signal(SIGINT, [](int) {
    if (running) running->stop();
  });
  service.serve();
  running = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mend: interactive repair of semantic errors in MiniLang programs"};
  app.require_subcommand(1);

  std::string file, entry = "main", brk, config, problem_text, dir, report, host = "127.0.0.1", ui;
  std::vector<std::string> args;
  std::int64_t budget = 0;
  int rank = 0, port = 8765, frame = -1;
  bool as_json = false, timings = false;

  auto* run = app.add_subcommand("run", "Run a program and stop at its problem");
  run->add_option("file", file, "MiniLang source (.mini)")->required();
  run->add_option("--entry", entry, "Entry function");
  run->add_option("--args", args, "Arguments as JSON values");
  run->add_option("--break", brk, "Stop at LINE[:COUNT]");
  run->add_option("--budget", budget, "Step budget");
  run->add_option("--config", config, "Engine config (JSON)");

  auto* sug = app.add_subcommand("suggest", "Localize, generate and validate repairs");
  sug->add_option("--problem", problem_text, "Problem description (JSON)");
  sug->add_flag("--json", as_json, "Stream NDJSON events");
  sug->add_option("--start-frame", frame, "Re-execute from this frame");
  bool show_candidates = false;
  sug->add_flag("--candidates", show_candidates, "List the candidate lines");

  auto* prev = app.add_subcommand("preview", "Show the diff of a ranked repair");
  prev->add_option("rank", rank)->required();

  auto* apply = app.add_subcommand("apply", "Apply a ranked repair to the source file and re-run");
  apply->add_option("rank", rank)->required();

  auto* bench = app.add_subcommand("bench", "Run the engine over a bug corpus");
  bench->add_option("dir", dir)->required();
  bench->add_option("--report", report, "Write the JSON report here");
  bench->add_flag("--timings", timings, "Report wall-clock times instead of steps");
  bench->add_option("--config", config, "Engine config (JSON)");

  auto* verify = app.add_subcommand("verify", "Check a bug corpus");
  verify->add_option("dir", dir)->required();

  bool in_place = false;
  auto* fmt = app.add_subcommand("fmt", "Print a program in canonical form");
  fmt->add_option("file", file)->required();
  fmt->add_flag("-i,--in-place", in_place, "Rewrite the file");

  auto* serve = app.add_subcommand("serve", "Start the HTTP service");
  serve->add_option("--port", port);
  serve->add_option("--host", host);
  serve->add_option("--ui", ui, "Directory with the web client");
  serve->add_option("--config", config, "Engine config (JSON)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(file, entry, args, brk, budget > 0 ? std::optional(budget) : std::nullopt, config);
    if (*sug) return cmd_suggest(problem_text, as_json, frame >= 0 ? std::optional(frame) : std::nullopt, show_candidates);
    if (*prev) return cmd_preview(rank);
    if (*apply) return cmd_apply(rank);
    if (*bench) return cmd_bench(dir, report, timings, config);
    if (*verify) return cmd_verify(dir);
    if (*fmt) {
      const std::string text = lang::print_program(*lang::parse(slurp(file)));
      if (in_place) spit(file, text);
      else std::cout << text;
      return 0;
    }
    if (*serve) return cmd_serve(host, port, ui, config);
  } catch (const lang::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const problem::NoProblem& e) {
    std::cerr << "nothing to repair: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
