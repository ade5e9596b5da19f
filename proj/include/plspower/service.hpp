#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <semaphore>
#include <string>
#include <vector>

#include "json.hpp"

namespace httplib {
class Server;
}

namespace plspower::service {

inline constexpr std::int64_t kMaxReplications = 200000;
inline constexpr std::int64_t kDefaultReplications = 20000;
inline constexpr std::uint64_t kDefaultSeed = 1;

// Error codes carried in every failure envelope.
inline constexpr const char* kDomain = "DOMAIN";
inline constexpr const char* kValidation = "VALIDATION";
inline constexpr const char* kInternal = "INTERNAL";

struct Response {
    int status = 200;
    nlohmann::json body;
};

using Params = std::map<std::string, std::string>;

struct Options {
    std::string host = "127.0.0.1";
    int port = 8080;
    // Directory with the web UI bundle; a placeholder page is served when empty
    // or missing.
    std::string static_dir;
    // Empty means "*". Otherwise only listed origins are echoed back.
    std::vector<std::string> cors_origins;
    // Upper bound on simultaneously running /api/validate simulations.
    int max_concurrent_simulations = 2;
    unsigned simulation_threads = 0;
};

// Reads PLSPOWER_HOST, PLSPOWER_PORT, PLSPOWER_STATIC_DIR and
// PLSPOWER_CORS_ORIGINS (comma separated) over the given defaults.
Options options_from_env(Options defaults = {});

// Request handlers. Pure functions of their input; safe to call concurrently.
Response handle_apriori(const Params& query);
Response handle_sensitivity(const Params& query);
Response handle_curve(const Params& query);
Response handle_validate(const std::string& body, unsigned threads = 0);

class Server {
public:
    explicit Server(Options options);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    // Binds to options.host:options.port (port 0 picks a free port) and
    // returns the bound port, or -1 on failure.
    int bind();
    // Blocks serving requests until stop() is called.
    bool listen_after_bind();
    void stop();
    void wait_until_ready() const;

private:
    void install_routes();

    Options options_;
    std::unique_ptr<httplib::Server> http_;
    std::counting_semaphore<64> simulations_;
};

}  // namespace plspower::service
