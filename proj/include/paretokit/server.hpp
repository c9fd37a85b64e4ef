#ifndef PARETOKIT_SERVER_HPP
#define PARETOKIT_SERVER_HPP

// JSON API over HTTP for runs and experiments.
//
//   GET  /api/registry
//   GET  /api/problems/{name}/pf?M=&D=&count=
//   POST /api/runs                          body: run configuration -> {"id", "status"}
//   GET  /api/runs
//   GET  /api/runs/{id}
//   GET  /api/runs/{id}/snapshots/{index|latest}
//   GET  /api/runs/{id}/trajectory?indicator=
//   GET  /api/runs/{id}/events              text/event-stream, one event per snapshot
//   POST /api/experiments                   body: experiment spec -> {"id", "total"}
//   GET  /api/experiments/{id}
//   GET  /api/experiments/{id}/table?indicator=&control=
//   GET  /api/experiments/{id}/export?format=tex|csv&indicator=&control=

#include "paretokit/registry.hpp"

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>

namespace paretokit {

struct ServerOptions {
    std::string host = "127.0.0.1";
    int port = 8371;
    std::filesystem::path folder = "results";
    std::filesystem::path static_dir;
    const Registry* registry = nullptr; // builtin_registry() when null
};

class ApiServer {
public:
    explicit ApiServer(ServerOptions options);
    ~ApiServer();

    ApiServer(const ApiServer&) = delete;
    ApiServer& operator=(const ApiServer&) = delete;

    // Binds and serves on the calling thread until stop(). Port 0 picks a free port.
    bool listen();
    // Binds, then serves on a background thread; returns the bound port.
    int start();
    void stop();
    int port() const;

    // Waits for background runs and experiments to finish.
    void wait_idle();

private:
    struct State;
    std::unique_ptr<State> state_;
};

int serve_forever(const ServerOptions& options, std::ostream& log);

} // namespace paretokit

#endif // PARETOKIT_SERVER_HPP
