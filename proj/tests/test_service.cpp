#include <gtest/gtest.h>

#include <future>
#include <thread>

#include "rosette/complex_io.hpp"
#include "rosette/demos.hpp"
#include "rosette/service.hpp"

using namespace rosette;
using nlohmann::json;

namespace {

class Service : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    server_ = new httplib::Server;
    install_routes(*server_);
    port_ = server_->bind_to_any_port("127.0.0.1");
    thread_ = new std::thread([] { server_->listen_after_bind(); });
    server_->wait_until_ready();
  }

  static void TearDownTestSuite() {
    server_->stop();
    thread_->join();
    delete thread_;
    delete server_;
  }

  static httplib::Result post(const std::string& path, const json& body) {
    httplib::Client client("127.0.0.1", port_);
    client.set_read_timeout(60, 0);
    return client.Post(path, body.dump(), "application/json");
  }

  static json request(const Complex& c, json params = json::object()) {
    return {{"complex", json::parse(serialize_complex(c))}, {"params", std::move(params)}};
  }

  static inline httplib::Server* server_ = nullptr;
  static inline std::thread* thread_ = nullptr;
  static inline int port_ = 0;
};

}  // namespace

TEST_F(Service, Health) {
  httplib::Client client("127.0.0.1", port_);
  auto res = client.Get("/v1/health");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body)["status"], "ok");
}

TEST_F(Service, DesignOfTheSixFlower) {
  auto res = post("/v1/design", request(flower(6), {{"tau", 0.8}, {"theta", 1.2566}}));
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200) << res->body;
  const json body = json::parse(res->body);
  EXPECT_FALSE(body["svg"].get<std::string>().empty());
  ASSERT_EQ(body["design"]["rosettes"].size(), 1u);
  EXPECT_EQ(body["design"]["rosettes"][0]["order"], 12);
  EXPECT_EQ(body["packing"]["circles"].size(), 7u);
  EXPECT_FALSE(body["patch"]["polygons"].empty());
}

TEST_F(Service, PinchedComplexIsRejectedWithReport) {
  json doc = {{"topology", "disk"},
              {"vertices", json::array({{{"id", 1}}, {{"id", 2}}, {{"id", 3}}, {{"id", 4}}, {{"id", 5}}})},
              {"triangles", json::array({{1, 2, 3}, {1, 4, 5}})}};
  auto res = post("/v1/design", {{"complex", doc}});
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  const json body = json::parse(res->body);
  bool pinch = false;
  for (const auto& v : body["report"]) pinch = pinch || v["message"].get<std::string>().find("pinch vertex") != std::string::npos;
  EXPECT_TRUE(pinch) << res->body;
}

TEST_F(Service, TauSweepMinimumOnTheStandardComplex) {
  auto res = post("/v1/tau-sweep", request(flower_of_flowers()));
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200) << res->body;
  const json body = json::parse(res->body);
  EXPECT_GT(body["best_tau"].get<double>(), 0.7);
  EXPECT_LT(body["best_tau"].get<double>(), 0.9);
  EXPECT_EQ(body["curve"].size(), 91u);
}

TEST_F(Service, NonConvergenceIs422) {
  auto res = post("/v1/design", request(flower_of_flowers(), {{"max_sweeps", 1}}));
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 422) << res->body;
  EXPECT_EQ(json::parse(res->body)["error"], "NonConvergence");
}

TEST_F(Service, MalformedRequestsAre400) {
  httplib::Client client("127.0.0.1", port_);
  auto res = client.Post("/v1/design", "{not json", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(post("/v1/design", json{{"params", {}}})->status, 400);
  EXPECT_EQ(post("/v1/design", request(flower(6), {{"tau_mode", "sideways"}}))->status, 400);
  EXPECT_EQ(post("/v1/design", request(flower(6), {{"tau", "big"}}))->status, 400);
  EXPECT_EQ(post("/v1/design", request(flower(6), {{"tau", 1.5}}))->status, 400);
}

TEST_F(Service, KeepAndDiscardRoundTrip) {
  const Complex c = demo("random");
  const json base = json::parse(post("/v1/design", request(c))->body);
  const auto kept = base["design"]["kept"].get<std::vector<int>>();
  ASSERT_GE(kept.size(), 2u);
  const json dropped = json::parse(post("/v1/design", request(c, {{"discard", {kept[0]}}}))->body);
  auto after = dropped["design"]["kept"].get<std::vector<int>>();
  EXPECT_EQ(after, std::vector<int>(kept.begin() + 1, kept.end()));
}

TEST_F(Service, ConcurrentRequestsAreIndependent) {
  const json a = request(demo("grid-gadgets"));
  const json b = request(flower_of_flowers(), {{"layers", {"circles", "motif"}}});
  const std::string ra = post("/v1/design", a)->body;
  const std::string rb = post("/v1/design", b)->body;
  std::vector<std::future<std::string>> jobs;
  for (int i = 0; i < 8; ++i) {
    jobs.push_back(std::async(std::launch::async, [&, i] { return post("/v1/design", i % 2 ? b : a)->body; }));
  }
  for (int i = 0; i < 8; ++i) EXPECT_EQ(jobs[static_cast<std::size_t>(i)].get(), i % 2 ? rb : ra) << i;
}

TEST(Handlers, WorkWithoutAServer) {
  const json req = {{"complex", json::parse(serialize_complex(flower(5)))}};
  const HttpReply r = handle_design(req.dump());
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.body["design"]["rosettes"][0]["order"], 10);
  const PipelineConfig c = config_from_json(json{{"keep", {3, 1}}, {"filler_rule", "any-two"}, {"layers", {"patch"}}});
  ASSERT_TRUE(c.motif.keep.has_value());
  EXPECT_EQ(*c.motif.keep, (std::set<int>{1, 3}));
  EXPECT_EQ(c.motif.filler_rule, FillerRule::AnyTwoKept);
  EXPECT_EQ(c.style.layers, std::set<Layer>{Layer::Patch});
}
