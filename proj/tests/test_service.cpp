#include <filesystem>
#include <random>
#include <string>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "fixtures.hpp"
#include "splitlab/http.hpp"
#include "splitlab/json.hpp"
#include "splitlab/service.hpp"

namespace splitlab {
namespace {

namespace fs = std::filesystem;

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("splitlab_service_" + std::to_string(std::random_device{}()));
    fs::remove_all(dir_);
    service_ = std::make_unique<SessionService>(dir_, default_catalogue());
  }
  void TearDown() override { fs::remove_all(dir_); }

  ApiResponse call(const std::string& method, const std::string& path,
                   const json& body = json::object()) {
    return service_->handle(method, path, body.dump());
  }

  std::string create(const json& body = {{"width", 100}, {"height", 100}}) {
    const ApiResponse r = call("POST", "/api/sessions", body);
    EXPECT_EQ(r.status, 201);
    return r.body.at("id").get<std::string>();
  }

  ApiResponse event(const std::string& id, const json& body) {
    return call("POST", "/api/sessions/" + id + "/events", body);
  }

  fs::path dir_;
  std::unique_ptr<SessionService> service_;
};

TEST_F(ServiceTest, CrossFromThreeClicks) {
  const std::string id = create();
  event(id, {{"kind", "place_h"}, {"x", 30}, {"y", 40}});
  event(id, {{"kind", "place_v"}, {"x", 60}, {"y", 70}});
  const ApiResponse r = event(id, {{"kind", "place_v"}, {"x", 60}, {"y", 20}});
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.body["tally"]["rt"], 2);
  EXPECT_EQ(r.body["tally"]["sc"], 1);
  EXPECT_EQ(r.body["metrics"]["splittingness"], 0.0);
  EXPECT_EQ(r.body["event_index"], 3);
  EXPECT_EQ(r.body["tees"].size(), 2U);
}

TEST_F(ServiceTest, UndoOnEmptySessionIsAClientError) {
  const std::string id = create();
  const ApiResponse r = event(id, {{"kind", "undo"}});
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(r.body["error"]["code"], "EmptyUndoError");
  EXPECT_EQ(call("GET", "/api/sessions/" + id).body["event_index"], 0);
}

TEST_F(ServiceTest, PlacementErrorsAreReported) {
  const std::string id = create();
  event(id, {{"kind", "place_h"}, {"x", 30}, {"y", 40}});
  const ApiResponse r = event(id, {{"kind", "place_h"}, {"x", 70}, {"y", 40}});
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(r.body["error"]["code"], "OverlapError");
  EXPECT_EQ(event(id, {{"kind", "place_h"}}).status, 400);
  EXPECT_EQ(event(id, {{"kind", "teleport"}}).status, 400);
  EXPECT_EQ(service_->handle("POST", "/api/sessions/" + id + "/events", "{oops").status,
            400);
}

TEST_F(ServiceTest, UnknownSessionAndRoute) {
  EXPECT_EQ(call("GET", "/api/sessions/nope").status, 404);
  EXPECT_EQ(call("GET", "/api/sessions/nope").body["error"]["code"], "UnknownSession");
  EXPECT_EQ(call("GET", "/api/elsewhere").status, 404);
  EXPECT_EQ(call("DELETE", "/api/records").status, 404);
}

TEST_F(ServiceTest, StaleExpectedIndexConflicts) {
  const std::string id = create();
  event(id, {{"kind", "place_h"}, {"x", 30}, {"y", 40}, {"expected_index", 0}});
  const ApiResponse r =
      event(id, {{"kind", "place_v"}, {"x", 60}, {"y", 70}, {"expected_index", 0}});
  EXPECT_EQ(r.status, 409);
  EXPECT_EQ(r.body["error"]["code"], "EventConflict");
  EXPECT_EQ(call("GET", "/api/sessions/" + id).body["event_index"], 1);
}

TEST_F(ServiceTest, SaveThenListAndTest) {
  const std::string id = create({{"width", 500},
                                 {"height", 400},
                                 {"grid", 10},
                                 {"catalogue_id", "B131"},
                                 {"year", 1921},
                                 {"image_ref", "B131.jpg"}});
  for (const SessionEvent& e : testing::twelve_tee_marking()) {
    ASSERT_EQ(event(id, to_json(e)).status, 200);
  }
  const ApiResponse saved = call("POST", "/api/sessions/" + id + "/save");
  ASSERT_EQ(saved.status, 200);
  EXPECT_EQ(saved.body["record"]["tally"]["rt"], 12);
  EXPECT_TRUE(fs::exists(dir_ / "B131.txt"));
  EXPECT_EQ(load_record(dir_ / "B131.txt"),
            testing::record_from_events("B131", 1921, testing::twelve_tee_marking()));

  const ApiResponse list = call("GET", "/api/records");
  ASSERT_EQ(list.body["records"].size(), 1U);
  EXPECT_EQ(list.body["records"][0]["catalogue_id"], "B131");
  EXPECT_EQ(list.body["records"][0]["included"], true);
  EXPECT_EQ(list.body["records"][0]["metrics"]["splittingness"], 0.5);

  const ApiResponse test = call("POST", "/api/tests", {{"median", 1.0}});
  ASSERT_EQ(test.status, 200);
  EXPECT_EQ(test.body["n_effective"], 1);
  EXPECT_EQ(test.body["p_value"], 1.0);
  EXPECT_EQ(test.body["method"], "exact");
  EXPECT_EQ(call("POST", "/api/tests", {{"median", 1.0}, {"from", "B200"}, {"to", "B210"}})
                .status,
            400);
}

TEST_F(ServiceTest, SaveEventAndMissingCatalogueId) {
  const std::string anonymous = create();
  EXPECT_EQ(call("POST", "/api/sessions/" + anonymous + "/save").body["error"]["code"],
            "MissingCatalogueId");
  const std::string id = create({{"width", 100}, {"height", 100}, {"catalogue_id", "B150"}});
  event(id, {{"kind", "place_h"}, {"x", 30}, {"y", 40}});
  const ApiResponse r = event(id, {{"kind", "save"}});
  EXPECT_EQ(r.status, 200);
  EXPECT_TRUE(fs::exists(dir_ / "B150.txt"));
}

TEST_F(ServiceTest, GenerateMatchesTheLibrary) {
  const ApiResponse r = call("POST", "/api/generate", {{"seed", 5}, {"crossing_prob", 0.5}});
  ASSERT_EQ(r.status, 200);
  GenParams p;
  p.seed = 5;
  p.crossing_prob = 0.5;
  const auto tree = generate(p);
  EXPECT_EQ(r.body["svg"], render_svg(*tree, p));
  EXPECT_EQ(r.body["tally"], to_json(analyze_tree(*tree, p)));
  EXPECT_EQ(call("POST", "/api/generate", {{"min_cell", 5000}}).body["error"]["code"],
            "InfeasibleError");
}

// Property: the API reports exactly what a library session computes for the
// same event sequence.
TEST_F(ServiceTest, ApiAgreesWithLibrarySession) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const std::string id = create({{"width", 200}, {"height", 150}, {"grid", 5}});
    SessionConfig cfg;
    cfg.canvas = Canvas(200, 150);
    cfg.grid = 5;
    Session local(cfg);
    for (int k = 0; k < 25; ++k) {
      const int pick = static_cast<int>(rng() % 10);
      SessionEvent e = pick < 4   ? SessionEvent::place_h(rng() % 200, rng() % 150)
                       : pick < 8 ? SessionEvent::place_v(rng() % 200, rng() % 150)
                       : pick < 9 ? SessionEvent::arm_hidden()
                                  : SessionEvent::undo();
      bool ok = true;
      try {
        local.apply(e);
      } catch (const Error&) {
        ok = false;
      }
      EXPECT_EQ(event(id, to_json(e)).status, ok ? 200 : 400);
    }
    EXPECT_EQ(call("GET", "/api/sessions/" + id).body["tally"], to_json(local.tally()));
  }
}

TEST(HttpServer, LoopbackRoundTrip) {
  const fs::path dir = fs::temp_directory_path() /
                       ("splitlab_http_" + std::to_string(std::random_device{}()));
  SessionService service(dir, default_catalogue());
  httplib::Server server;
  mount_api(server, service);
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread worker([&server] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto created = client.Post("/api/sessions", R"({"width":100,"height":100})",
                             "application/json");
  ASSERT_TRUE(created);
  EXPECT_EQ(created->status, 201);
  const std::string id = json::parse(created->body)["id"];
  for (const char* body : {R"({"kind":"place_h","x":30,"y":40})",
                           R"({"kind":"place_v","x":60,"y":70})",
                           R"({"kind":"place_v","x":60,"y":20})"}) {
    auto r = client.Post(("/api/sessions/" + id + "/events").c_str(), body,
                         "application/json");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 200);
  }
  auto state = client.Get(("/api/sessions/" + id).c_str());
  ASSERT_TRUE(state);
  EXPECT_EQ(json::parse(state->body)["tally"]["sc"], 1);
  auto missing = client.Get("/api/sessions/zzz");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);

  server.stop();
  worker.join();
  fs::remove_all(dir);
}

}  // namespace
}  // namespace splitlab
