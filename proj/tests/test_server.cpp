#include "doctest.h"

#include "paretokit/result_io.hpp"
#include "paretokit/server.hpp"

#include "httplib.h"
#include "json.hpp"

#include <chrono>
#include <filesystem>
#include <thread>

using namespace paretokit;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json get_json(httplib::Client& c, const std::string& path, int expect = 200) {
    const auto res = c.Get(path);
    REQUIRE(res);
    CHECK(res->status == expect);
    return json::parse(res->body);
}

json post_json(httplib::Client& c, const std::string& path, const json& body, int expect) {
    const auto res = c.Post(path, body.dump(), "application/json");
    REQUIRE(res);
    CHECK(res->status == expect);
    return json::parse(res->body);
}

void wait_status(httplib::Client& c, const std::string& path) {
    for (int i = 0; i < 600; ++i) {
        const auto j = get_json(c, path);
        if (j["status"] != "running") {
            return;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
    FAIL("timed out waiting for " << path);
}

} // namespace

TEST_CASE("http api") {
    const fs::path folder = fs::temp_directory_path() / "paretokit_server";
    fs::remove_all(folder);
    ServerOptions opts;
    opts.port = 0;
    opts.folder = folder;
    std::string run_id;
    std::string exp_id;
    {
        ApiServer server(opts);
        const int port = server.start();
        REQUIRE(port > 0);
        httplib::Client c("127.0.0.1", port);

        const auto reg = get_json(c, "/api/registry");
        CHECK(reg["algorithms"].size() == 5);

        const auto pf = get_json(c, "/api/problems/DTLZ2/pf?M=3&count=91");
        CHECK(pf["points"].size() == 91);
        get_json(c, "/api/problems/Nope/pf", 404);

        const auto bad = post_json(c, "/api/runs", {{"algorithm", "Nope"}, {"N", -1}}, 400);
        CHECK(bad["errors"].size() >= 1);
        CHECK(bad["errors"][0].contains("field"));
        CHECK(post_json(c, "/api/runs", {{"algorithm", "NSGAII"}, {"N", -1}}, 400)["errors"][0]["field"] == "N");

        const auto created = post_json(
            c, "/api/runs", {{"algorithm", "NSGAII"}, {"problem", "ZDT1"}, {"N", 20}, {"evaluation", 400}}, 201);
        run_id = created["id"];
        wait_status(c, "/api/runs/" + run_id);
        const auto info = get_json(c, "/api/runs/" + run_id);
        CHECK(info["status"] == "finished");
        CHECK(info["snapshots"] == 20);
        CHECK(get_json(c, "/api/runs").size() == 1);
        get_json(c, "/api/runs/r999999", 404);

        const RunResult saved = load_result(folder / "runs" / (run_id + ".result"));
        const auto latest = get_json(c, "/api/runs/" + run_id + "/snapshots/latest");
        CHECK(latest["index"] == 19);
        CHECK(latest["generation"] == saved.snapshots.back().generation);
        CHECK(population_from_json(latest) == saved.snapshots.back().population);
        CHECK(latest["indicators"]["IGD"].is_number());
        const auto third = get_json(c, "/api/runs/" + run_id + "/snapshots/3");
        CHECK(population_from_json(third) == saved.snapshots[3].population);
        CHECK(get_json(c, "/api/runs/" + run_id + "/snapshots/20", 416)["max_index"] == 19);
        get_json(c, "/api/runs/" + run_id + "/snapshots/abc", 416);

        const auto traj = get_json(c, "/api/runs/" + run_id + "/trajectory?indicator=HV");
        CHECK(traj["values"].size() == 20);
        CHECK(traj["direction"] == "maximize");

        const auto events = c.Get("/api/runs/" + run_id + "/events");
        REQUIRE(events);
        CHECK(events->get_header_value("Content-Type").find("text/event-stream") == 0);
        std::size_t count = 0;
        for (std::size_t at = events->body.find("event: generation"); at != std::string::npos;
             at = events->body.find("event: generation", at + 1)) {
            ++count;
        }
        CHECK(count == 20);
        CHECK(events->body.find("event: end") != std::string::npos);

        const json spec{{"algorithms", {"NSGAII", "SPEA2"}},
                        {"problems", {{{"name", "ZDT1"}, {"N", 20}, {"evaluation", 200}}}},
                        {"runs", 2},
                        {"pf_samples", 200}};
        const auto exp = post_json(c, "/api/experiments", spec, 201);
        CHECK(exp["total"] == 4);
        exp_id = exp["id"];
        wait_status(c, "/api/experiments/" + exp_id);
        const auto status = get_json(c, "/api/experiments/" + exp_id);
        CHECK(status["completed"] == 4);
        const auto table = get_json(c, "/api/experiments/" + exp_id + "/table?indicator=IGD");
        CHECK(table["columns"].size() == 2);
        CHECK(table["rows"][0]["cells"].size() == 2);
        const auto tex = c.Get("/api/experiments/" + exp_id + "/export?format=tex&indicator=IGD");
        REQUIRE(tex);
        CHECK(tex->body.find("\\hl{") != std::string::npos);
        get_json(c, "/api/experiments/" + exp_id + "/export?format=pdf", 400);
        post_json(c, "/api/experiments", {{"algorithms", {"NSGAII"}}, {"problems", {"Nope"}}}, 400);
        get_json(c, "/api/experiments/e999999", 404);

        const auto options = c.Options("/api/runs");
        REQUIRE(options);
        CHECK(options->get_header_value("Access-Control-Allow-Origin") == "*");
        server.stop();
    }
    {
        ApiServer server(opts);
        const int port = server.start();
        httplib::Client c("127.0.0.1", port);
        const auto info = get_json(c, "/api/runs/" + run_id);
        CHECK(info["status"] == "finished");
        CHECK(info["snapshots"] == 20);
        CHECK(get_json(c, "/api/experiments/" + exp_id)["completed"] == 4);
        const auto next = post_json(
            c, "/api/runs", {{"algorithm", "IBEA"}, {"problem", "ZDT2"}, {"N", 10}, {"evaluation", 100}}, 201);
        CHECK(next["id"] != run_id);
        server.wait_idle();
        server.stop();
    }
}
