#include "plspower/service.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <sstream>

#include "httplib.h"

#include "plspower/errors.hpp"
#include "plspower/mc_oracle.hpp"
#include "plspower/power_core.hpp"
#include "plspower/report.hpp"

namespace plspower::service {

using nlohmann::json;

namespace {

// Malformed or out-of-policy request parameters.
struct RequestError {
    int status;
    std::string message;
};

Response ok(json result) {
    return {200, json{{"ok", true}, {"result", std::move(result)}}};
}

Response fail(int status, const char* code, const std::string& message) {
    return {status, json{{"ok", false}, {"error", {{"code", code}, {"message", message}}}}};
}

template <typename Fn>
Response guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const RequestError& e) {
        return fail(e.status, kValidation, e.message);
    } catch (const DomainError& e) {
        return fail(422, kDomain, e.what());
    } catch (const std::exception& e) {
        return fail(500, kInternal, e.what());
    }
}

double to_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw RequestError{400, "parameter '" + key + "' is not a number"};
    }
    return v;
}

std::optional<double> optional_double(const Params& q, const std::string& key) {
    const auto it = q.find(key);
    if (it == q.end()) return std::nullopt;
    return to_double(key, it->second);
}

double required_double(const Params& q, const std::string& key) {
    const auto v = optional_double(q, key);
    if (!v) throw RequestError{400, "missing parameter '" + key + "'"};
    return *v;
}

// Integers arrive as numbers; non-integral values are a domain problem.
std::int64_t as_count(double v, const char* what) {
    if (!std::isfinite(v) || v != std::floor(v) || std::abs(v) > 9.0e15) {
        throw DomainError(std::string(what) + " must be an integer");
    }
    return static_cast<std::int64_t>(v);
}

PowerSpec spec_from(const Params& q) {
    return PowerSpec::make(required_double(q, "alpha"),
                           optional_double(q, "power").value_or(kDefaultPower));
}

std::optional<std::int64_t> arrowheads_from(const Params& q) {
    const auto v = optional_double(q, "arrowheads");
    if (!v) return std::nullopt;
    return as_count(*v, "arrowheads");
}

}  // namespace

Options options_from_env(Options defaults) {
    if (const char* v = std::getenv("PLSPOWER_HOST"); v && *v) defaults.host = v;
    if (const char* v = std::getenv("PLSPOWER_PORT"); v && *v) defaults.port = std::atoi(v);
    if (const char* v = std::getenv("PLSPOWER_STATIC_DIR"); v && *v) defaults.static_dir = v;
    if (const char* v = std::getenv("PLSPOWER_CORS_ORIGINS"); v && *v) {
        defaults.cors_origins.clear();
        std::istringstream in(v);
        std::string origin;
        while (std::getline(in, origin, ',')) {
            if (!origin.empty()) defaults.cors_origins.push_back(origin);
        }
    }
    return defaults;
}

Response handle_apriori(const Params& query) {
    return guarded([&] {
        const double mdes = required_double(query, "mdes");
        const PowerSpec spec = spec_from(query);
        return ok(to_json(a_priori(mdes, spec), make_baseline(arrowheads_from(query))));
    });
}

Response handle_sensitivity(const Params& query) {
    return guarded([&] {
        const double n = required_double(query, "n");
        const PowerSpec spec = spec_from(query);
        return ok(to_json(sensitivity(n, spec)));
    });
}

Response handle_curve(const Params& query) {
    return guarded([&] {
        const auto mode_it = query.find("mode");
        if (mode_it == query.end()) throw RequestError{400, "missing parameter 'mode'"};
        const std::string& mode = mode_it->second;
        const PowerSpec spec = spec_from(query);
        const double ref = required_double(query, "ref");
        const auto lo = optional_double(query, "lo");
        const auto hi = optional_double(query, "hi");
        const auto step = optional_double(query, "step");

        if (mode == "apriori" || mode == "a_priori" || mode == "a priori") {
            // Default bounds stretch to include an out-of-range reference.
            const double l = lo.value_or(std::min(CurveDefaults::mdes_lo, ref));
            const double h = hi.value_or(std::max(CurveDefaults::mdes_hi, ref));
            return ok(to_json(a_priori_curve(spec, l, h, step.value_or(CurveDefaults::mdes_step), ref)));
        }
        if (mode == "sensitivity") {
            const std::int64_t r = as_count(ref, "reference N");
            const std::int64_t l =
                lo ? as_count(*lo, "curve lower bound") : std::min(CurveDefaults::n_lo, r);
            const std::int64_t h =
                hi ? as_count(*hi, "curve upper bound") : std::max(CurveDefaults::n_hi, r);
            const std::int64_t s =
                step ? as_count(*step, "curve step") : CurveDefaults::n_step;
            return ok(to_json(sensitivity_curve(spec, l, h, s, r)));
        }
        throw RequestError{400, "mode must be 'apriori' or 'sensitivity'"};
    });
}

Response handle_validate(const std::string& body, unsigned threads) {
    return guarded([&] {
        json req;
        try {
            req = json::parse(body);
        } catch (const json::parse_error&) {
            throw RequestError{400, "request body is not valid JSON"};
        }
        if (!req.is_object()) throw RequestError{400, "request body must be a JSON object"};

        auto number = [&](const char* key) -> std::optional<double> {
            if (!req.contains(key) || req[key].is_null()) return std::nullopt;
            if (!req[key].is_number()) {
                throw RequestError{400, std::string("field '") + key + "' must be a number"};
            }
            return req[key].get<double>();
        };

        const auto mdes = number("mdes");
        const auto alpha = number("alpha");
        if (!mdes) throw RequestError{400, "missing field 'mdes'"};
        if (!alpha) throw RequestError{400, "missing field 'alpha'"};
        const PowerSpec spec = PowerSpec::make(*alpha, number("power").value_or(kDefaultPower));

        std::int64_t reps = kDefaultReplications;
        if (const auto r = number("reps")) {
            if (*r != std::floor(*r)) throw RequestError{422, "reps must be an integer"};
            if (*r < static_cast<double>(mc::kMinReplications) ||
                *r > static_cast<double>(kMaxReplications)) {
                throw RequestError{422, "reps must lie in [" +
                                            std::to_string(mc::kMinReplications) + ", " +
                                            std::to_string(kMaxReplications) + "]"};
            }
            reps = static_cast<std::int64_t>(*r);
        }

        std::uint64_t seed = kDefaultSeed;
        if (req.contains("seed") && !req["seed"].is_null()) {
            if (!req["seed"].is_number_unsigned()) {
                throw RequestError{400, "seed must be a non-negative integer"};
            }
            seed = req["seed"].get<std::uint64_t>();
        }

        return ok(to_json(mc::validate_apriori(*mdes, spec, reps, seed, threads)));
    });
}

// ---------------------------------------------------------------------------

namespace {

constexpr const char* kPlaceholderPage = R"(<!doctype html>
<html lang="en">
<head><meta charset="utf-8"><title>plspower</title></head>
<body>
<h1>plspower</h1>
<p>The web calculator bundle is not installed. The JSON API is available:</p>
<ul>
<li><code>GET /api/apriori?mdes=0.5&amp;alpha=0.05</code></li>
<li><code>GET /api/sensitivity?n=68&amp;alpha=0.05</code></li>
<li><code>GET /api/curve?mode=apriori&amp;ref=0.5&amp;alpha=0.05</code></li>
<li><code>POST /api/validate</code> with <code>{"mdes": 0.5, "alpha": 0.05, "seed": 42}</code></li>
<li><code>GET /healthz</code></li>
</ul>
</body>
</html>
)";

Params params_of(const httplib::Request& req) {
    Params out;
    for (const auto& [key, value] : req.params) {
        out.emplace(key, value);
    }
    return out;
}

void send(httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
}

class SemaphoreGuard {
public:
    explicit SemaphoreGuard(std::counting_semaphore<64>& sem) : sem_(sem) { sem_.acquire(); }
    ~SemaphoreGuard() { sem_.release(); }
    SemaphoreGuard(const SemaphoreGuard&) = delete;
    SemaphoreGuard& operator=(const SemaphoreGuard&) = delete;

private:
    std::counting_semaphore<64>& sem_;
};

}  // namespace

Server::Server(Options options)
    : options_(std::move(options)),
      http_(std::make_unique<httplib::Server>()),
      simulations_(std::clamp(options_.max_concurrent_simulations, 1, 64)) {
    install_routes();
}

Server::~Server() {
    stop();
}

void Server::install_routes() {
    auto& http = *http_;

    http.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("ok", "text/plain");
    });
    http.Get("/api/apriori", [](const httplib::Request& req, httplib::Response& res) {
        send(res, handle_apriori(params_of(req)));
    });
    http.Get("/api/sensitivity", [](const httplib::Request& req, httplib::Response& res) {
        send(res, handle_sensitivity(params_of(req)));
    });
    http.Get("/api/curve", [](const httplib::Request& req, httplib::Response& res) {
        send(res, handle_curve(params_of(req)));
    });
    http.Post("/api/validate", [this](const httplib::Request& req, httplib::Response& res) {
        SemaphoreGuard guard(simulations_);
        send(res, handle_validate(req.body, options_.simulation_threads));
    });
    http.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.status = 204;
    });

    std::error_code ec;
    const bool has_bundle = !options_.static_dir.empty() &&
                            std::filesystem::is_directory(options_.static_dir, ec);
    if (has_bundle) {
        http.set_mount_point("/", options_.static_dir);
    } else {
        http.Get("/", [](const httplib::Request&, httplib::Response& res) {
            res.set_content(kPlaceholderPage, "text/html; charset=utf-8");
        });
    }

    http.set_post_routing_handler([this](const httplib::Request& req, httplib::Response& res) {
        const auto& allowed = options_.cors_origins;
        if (allowed.empty()) {
            res.set_header("Access-Control-Allow-Origin", "*");
        } else {
            const std::string origin = req.get_header_value("Origin");
            if (std::find(allowed.begin(), allowed.end(), origin) != allowed.end()) {
                res.set_header("Access-Control-Allow-Origin", origin);
                res.set_header("Vary", "Origin");
            }
        }
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });
}

int Server::bind() {
    if (options_.port == 0) {
        return http_->bind_to_any_port(options_.host);
    }
    return http_->bind_to_port(options_.host, options_.port) ? options_.port : -1;
}

bool Server::listen_after_bind() {
    return http_->listen_after_bind();
}

void Server::stop() {
    if (http_) http_->stop();
}

void Server::wait_until_ready() const {
    http_->wait_until_ready();
}

}  // namespace plspower::service
