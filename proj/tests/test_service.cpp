#include <gtest/gtest.h>

#include <thread>

#include <cesreduce/service.hpp>

using namespace cesreduce;

namespace {

Json sample_json(double mu1 = 0.8, double mu2 = 0.5)
{
    auto j = Json::parse(R"({"ces":{"F":1.0,"a":0.5,"r":1.0},"prices":{"pK":1.0,"pL":1.0,"pQ":1.0},
"quantum1":{"w1":2.0,"w2":2.0,"w3":1.0},"quantum2":{"w1":1.0,"w2":1.0,"w3":3.0},
"grid":{"kMin":0.1,"kMax":10.0,"lMin":0.1,"lMax":10.0,"nK":20,"nL":20,"scale":"log"},
"sweep":{"samples":20,"seed":42}})");
    j["quantum1"]["mu"] = mu1;
    j["quantum2"]["mu"] = mu2;
    return j;
}

Json priced_json(double mu1 = 0.8, double mu2 = 0.5)
{
    auto j = sample_json(mu1, mu2);
    j["ces"] = {{"F", 1.5}, {"a", 0.35}, {"r", 0.6}};
    j["prices"] = {{"pK", 2.5}, {"pL", 0.8}, {"pQ", 1.2}};
    j["quantum1"] = {{"w1", 3}, {"w2", 2}, {"w3", 1.5}, {"mu", mu1}};
    j["quantum2"] = {{"w1", 0.6}, {"w2", 1.1}, {"w3", 2.4}, {"mu", mu2}};
    return j;
}

class ServiceHttp : public ::testing::Test {
protected:
    static void SetUpTestSuite()
    {
        service = std::make_unique<Service>(ServiceOptions{10000, 2});
        server = std::make_unique<httplib::Server>();
        service->bind(*server);
        port = server->bind_to_any_port("127.0.0.1");
        thread = std::thread([] { server->listen_after_bind(); });
        server->wait_until_ready();
    }
    static void TearDownTestSuite()
    {
        server->stop();
        thread.join();
        server.reset();
        service.reset();
    }

    httplib::Client client() const
    {
        httplib::Client c("127.0.0.1", port);
        c.set_read_timeout(60, 0);
        return c;
    }

    static inline std::unique_ptr<Service> service;
    static inline std::unique_ptr<httplib::Server> server;
    static inline std::thread thread;
    static inline int port = 0;
};

} // namespace

TEST_F(ServiceHttp, Health)
{
    auto res = client().Get("/healthz");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    EXPECT_EQ(Json::parse(res->body)["version"], kVersion);
}

TEST_F(ServiceHttp, EvaluateUnitPoint)
{
    auto body = sample_json();
    body["k"] = 1.0;
    body["l"] = 1.0;
    auto res = client().Post("/api/v1/evaluate", body.dump(), "application/json");
    ASSERT_TRUE(res);
    ASSERT_EQ(res->status, 200) << res->body;
    const auto j = Json::parse(res->body);
    EXPECT_EQ(j["f"], Json::parse("[-1.0,-1.0,1.0]"));
    EXPECT_EQ(j["consistency"], "bothHold");
}

TEST_F(ServiceHttp, EvaluateRejectsBadBundle)
{
    auto body = sample_json();
    body["k"] = -1.0;
    auto res = client().Post("/api/v1/evaluate", body.dump(), "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 400);
    const auto j = Json::parse(res->body);
    std::set<std::string> fields;
    for (const auto& v : j["violations"]) fields.insert(v["field"].get<std::string>());
    EXPECT_TRUE(fields.count("k"));
    EXPECT_TRUE(fields.count("l"));
}

TEST_F(ServiceHttp, ReduceValueSet)
{
    auto res = client().Post("/api/v1/reduce", priced_json().dump(), "application/json");
    ASSERT_TRUE(res);
    ASSERT_EQ(res->status, 200) << res->body;
    const auto j = Json::parse(res->body);
    const auto& m = j["membership"];
    ASSERT_EQ(m["lambda"].size(), 400u);
    EXPECT_EQ(m["k"].size(), 400u);
    EXPECT_EQ(m["tier"].size(), 400u);
    for (const auto& v : m["lambda"]) {
        const double x = v.get<double>();
        EXPECT_TRUE(x == 1.0 || x == 1.0 - 0.5 || x == 1.0 - 0.8) << x;
    }
    EXPECT_EQ(j["case"], "mu1>=mu2");
    for (const char* k : {"G4_in_second", "second_in_F3", "F3_is_grid"}) EXPECT_TRUE(j["inclusions"][k].get<bool>());
    EXPECT_TRUE(res->has_header("Server-Timing"));
}

TEST_F(ServiceHttp, ReduceSampleValueSet)
{
    auto res = client().Post("/api/v1/reduce", sample_json().dump(), "application/json");
    ASSERT_TRUE(res);
    ASSERT_EQ(res->status, 200);
    const auto j = Json::parse(res->body);
    for (const auto& v : j["membership"]["lambda"]) {
        const double x = v.get<double>();
        EXPECT_TRUE(x == 1.0 || x == 1.0 - 0.5 || x == 1.0 - 0.8);
    }
}

TEST_F(ServiceHttp, ReduceCaseFlip)
{
    auto res = client().Post("/api/v1/reduce", priced_json(0.5, 0.8).dump(), "application/json");
    ASSERT_TRUE(res);
    const auto j = Json::parse(res->body);
    EXPECT_EQ(j["case"], "mu1<mu2");
    EXPECT_EQ(j["nesting"]["secondStage"], "FHAT3");
}

TEST_F(ServiceHttp, StatelessResponses)
{
    const auto body = priced_json().dump();
    auto a = client().Post("/api/v1/reduce", body, "application/json");
    auto b = client().Post("/api/v1/reduce", body, "application/json");
    ASSERT_TRUE(a && b);
    EXPECT_EQ(a->body, b->body);
    auto c = client().Post("/api/v1/compare", body, "application/json");
    auto d = client().Post("/api/v1/compare", body, "application/json");
    ASSERT_TRUE(c && d);
    EXPECT_EQ(c->status, 200);
    EXPECT_EQ(c->body, d->body);
}

TEST_F(ServiceHttp, OversizeGridRejected)
{
    auto body = sample_json();
    body["grid"]["nK"] = 200;
    body["grid"]["nL"] = 200;
    auto res = client().Post("/api/v1/reduce", body.dump(), "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 400);
    const auto j = Json::parse(res->body);
    bool grid = false;
    for (const auto& v : j["violations"]) grid = grid || v["field"] == "grid";
    EXPECT_TRUE(grid);
}

TEST_F(ServiceHttp, InconsistentPreferences422)
{
    auto body = sample_json();
    body["quantum1"]["w1"] = 1.0;
    auto res = client().Post("/api/v1/reduce", body.dump(), "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 422);
    const auto j = Json::parse(res->body);
    EXPECT_EQ(j["violations"][0]["violation"], "w1(1) > w3(1)");
}

TEST_F(ServiceHttp, MalformedAndUnknown400)
{
    auto res = client().Post("/api/v1/reduce", "{nope", "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 400);
    auto body = sample_json();
    body["colour"] = "red";
    res = client().Post("/api/v1/reduce", body.dump(), "application/json");
    EXPECT_EQ(res->status, 400);
    body = sample_json();
    body["quantum1"].erase("mu");
    res = client().Post("/api/v1/reduce", body.dump(), "application/json");
    EXPECT_EQ(res->status, 400);
}

TEST(ServiceDirect, InFlightLimit)
{
    Service s(ServiceOptions{kDefaultGridCap, 1});
    auto big = sample_json();
    big["grid"]["nK"] = 120;
    big["grid"]["nL"] = 120;
    std::thread t([&] { EXPECT_EQ(s.reduce(big.dump()).status, 200); });
    while (s.in_flight() == 0) std::this_thread::yield();
    const auto r = s.reduce(sample_json().dump());
    EXPECT_EQ(r.status, 429);
    t.join();
    EXPECT_EQ(s.in_flight(), 0);
    EXPECT_EQ(s.reduce(sample_json().dump()).status, 200);
}

TEST(ServiceDirect, ValidationDoesNotCompute)
{
    Service s;
    auto body = sample_json();
    body["quantum2"]["w3"] = 0.5;
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = s.reduce(body.dump());
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    EXPECT_EQ(r.status, 422);
    EXPECT_EQ(r.compute_ms, 0.0);
    EXPECT_LT(ms, 50.0);
}
