#pragma once

// Transport-independent handler for the marking HTTP API. The server in
// tools/ maps HTTP requests onto `handle`; tests call it directly.
//
//   POST /api/sessions                 create; body: width, height, [grid,
//                                      hidden_length, catalogue_id, year,
//                                      image_ref]                  -> 201
//   GET  /api/sessions/{id}            current state
//   POST /api/sessions/{id}/events     body: kind, [x, y], [expected_index]
//   POST /api/sessions/{id}/save       persist the record
//   GET  /api/records                  summaries of every stored record
//   POST /api/tests                    body: median, [alpha, from, to]
//   POST /api/generate                 body: generator parameters
//
// Errors are {"error": {"code": ..., "message": ...}} with status 400 for
// invalid input, 404 for unknown sessions and 409 when `expected_index`
// does not match the session's event count.

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "splitlab/analysis.hpp"
#include "splitlab/json.hpp"
#include "splitlab/record.hpp"
#include "splitlab/session.hpp"

namespace splitlab {

struct ApiResponse {
  int status = 200;
  json body;
};

class SessionService {
 public:
  SessionService(std::filesystem::path records_dir, Catalogue catalogue)
      : records_dir_(std::move(records_dir)), catalogue_(std::move(catalogue)) {}

  ApiResponse handle(const std::string& method, const std::string& path,
                     const std::string& body) {
    try {
      return route(method, split_path(path), body);
    } catch (const json::exception& e) {
      return error(400, "BadJson", e.what());
    } catch (const Error& e) {
      return error(400, e.code(), e.what());
    }
  }

  std::size_t session_count() const {
    std::shared_lock lock(sessions_mutex_);
    return sessions_.size();
  }

 private:
  struct Entry {
    std::mutex mutex;
    Session session;
    explicit Entry(Session s) : session(std::move(s)) {}
  };

  static std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : path) {
      if (c == '?') break;
      if (c == '/') {
        if (!cur.empty()) parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) parts.push_back(cur);
    return parts;
  }

  static ApiResponse error(int status, const std::string& code,
                           const std::string& message) {
    return {status, {{"error", {{"code", code}, {"message", message}}}}};
  }

  static json parse_body(const std::string& body) {
    if (body.empty()) return json::object();
    return json::parse(body);
  }

  ApiResponse route(const std::string& method,
                    const std::vector<std::string>& p,
                    const std::string& body) {
    if (p.size() < 2 || p[0] != "api") return error(404, "NotFound", "no such endpoint");
    if (p[1] == "sessions") {
      if (p.size() == 2 && method == "POST") return create(parse_body(body));
      if (p.size() >= 3) {
        std::shared_ptr<Entry> entry = find(p[2]);
        if (!entry) return error(404, "UnknownSession", "no session '" + p[2] + "'");
        if (p.size() == 3 && method == "GET") {
          std::lock_guard lock(entry->mutex);
          return {200, state(p[2], entry->session)};
        }
        if (p.size() == 4 && p[3] == "events" && method == "POST") {
          return post_event(p[2], *entry, parse_body(body));
        }
        if (p.size() == 4 && p[3] == "save" && method == "POST") {
          std::lock_guard lock(entry->mutex);
          return save(p[2], entry->session);
        }
      }
    } else if (p[1] == "records" && p.size() == 2 && method == "GET") {
      return list_records();
    } else if (p[1] == "tests" && p.size() == 2 && method == "POST") {
      return run_test(parse_body(body));
    } else if (p[1] == "generate" && p.size() == 2 && method == "POST") {
      return generate_composition(parse_body(body));
    }
    return error(404, "NotFound", "no such endpoint");
  }

  std::shared_ptr<Entry> find(const std::string& id) const {
    std::shared_lock lock(sessions_mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
  }

  static json state(const std::string& id, const Session& s) {
    json j = session_state(s);
    j["id"] = id;
    return j;
  }

  ApiResponse create(const json& b) {
    SessionConfig cfg;
    cfg.canvas = Canvas(b.at("width").get<int>(), b.at("height").get<int>());
    cfg.grid = b.value("grid", kDefaultGrid);
    cfg.hidden_length = b.value("hidden_length", kDefaultHiddenLength);
    cfg.catalogue_id = b.value("catalogue_id", std::string());
    cfg.year = b.value("year", 0);
    cfg.image_ref = b.value("image_ref", std::string());
    auto entry = std::make_shared<Entry>(Session(cfg));
    const std::string id = "s" + std::to_string(++next_id_);
    json j = state(id, entry->session);
    {
      std::unique_lock lock(sessions_mutex_);
      sessions_.emplace(id, std::move(entry));
    }
    return {201, j};
  }

  ApiResponse post_event(const std::string& id, Entry& entry, const json& b) {
    const SessionEvent event = event_from_json(b);
    std::lock_guard lock(entry.mutex);
    if (b.contains("expected_index")) {
      const auto expected = b["expected_index"].get<std::size_t>();
      if (expected != entry.session.events().size()) {
        return error(409, "EventConflict",
                     "expected_index " + std::to_string(expected) +
                         " but the session is at " +
                         std::to_string(entry.session.events().size()));
      }
    }
    if (event.kind == EventKind::save) return save(id, entry.session);
    entry.session.apply(event);
    return {200, state(id, entry.session)};
  }

  ApiResponse save(const std::string& id, const Session& s) {
    if (s.config().catalogue_id.empty()) {
      return error(400, "MissingCatalogueId",
                   "session has no catalogue_id; cannot name the record");
    }
    const PaintingRecord record = make_record(s);
    std::filesystem::path file;
    {
      std::lock_guard lock(records_mutex_);
      file = save_record(record, records_dir_);
    }
    json j = state(id, s);
    j["record"] = record_summary(record);
    j["record"]["file"] = file.string();
    return {200, j};
  }

  ApiResponse list_records() {
    std::vector<PaintingRecord> records;
    {
      std::lock_guard lock(records_mutex_);
      records = load_records(records_dir_);
    }
    json out = json::array();
    for (const auto& r : records) {
      json j = record_summary(r);
      const CatalogueEntry* e = catalogue_.find(r.catalogue_id);
      j["included"] = e != nullptr && e->included();
      out.push_back(j);
    }
    return {200, {{"records", out}}};
  }

  ApiResponse run_test(const json& b) {
    const double median = b.at("median").get<double>();
    const double alpha = b.value("alpha", 0.05);
    std::optional<CatalogueRange> range;
    if (b.contains("from") || b.contains("to")) {
      range = CatalogueRange{b.at("from").get<std::string>(),
                             b.at("to").get<std::string>()};
    }
    std::vector<PaintingRecord> records;
    {
      std::lock_guard lock(records_mutex_);
      records = load_records(records_dir_);
    }
    const CorpusTable table = aggregate(std::move(records), catalogue_);
    json j = to_json(median_splittingness_test(table, median, alpha, range));
    j["warnings"] = table.warnings;
    return {200, j};
  }

  static ApiResponse generate_composition(const json& b) {
    const GenParams params = gen_params_from_json(b);
    const auto tree = generate(params);
    const TallySheet t = analyze_tree(*tree, params);
    return {200,
            {{"svg", render_svg(*tree, params)},
             {"tally", to_json(t)},
             {"metrics", to_json(compute_metrics(t))}}};
  }

  std::filesystem::path records_dir_;
  Catalogue catalogue_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::atomic<unsigned long> next_id_{0};
  std::mutex records_mutex_;
};

}  // namespace splitlab
